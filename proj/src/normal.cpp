#include "bsps/normal.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <numbers>

#include "bsps/errors.hpp"

namespace bsps::normal {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

// Beyond this point erfc starts losing to underflow; the Mills-ratio
// asymptotic series is accurate to ~1e-13 relative here.
constexpr double kAsymptoticCut = 35.0;

double newton_polish(double z, double target_sf) {
  // One Newton step on sf(z) = target in log space.
  const double f = log_sf(z) - std::log(target_sf);
  const double hazard = std::exp(std::log(pdf(z)) - log_sf(z));
  return z + f / hazard;
}

}  // namespace

double pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double cdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

double sf(double z) { return 0.5 * std::erfc(z * kInvSqrt2); }

double log_sf(double z) {
  if (z < kAsymptoticCut) return std::log(sf(z));
  const double r = 1.0 / (z * z);
  const double series =
      1.0 + r * (-1.0 + r * (3.0 + r * (-15.0 + r * (105.0 + r * (-945.0 + r * 10395.0)))));
  return -0.5 * z * z - std::log(z) - kLogSqrt2Pi + std::log(series);
}

double quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("normal quantile requires u in (0,1)");
  if (u > 0.5) return sf_inverse(1.0 - u);
  return -sf_inverse(u);
}

double sf_inverse(double q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("normal sf inverse requires q in (0,1)");
  const double z = std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * q);
  if (!std::isfinite(z)) return z;
  return newton_polish(z, q);
}

}  // namespace bsps::normal
