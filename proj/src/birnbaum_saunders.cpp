#include "bsps/birnbaum_saunders.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bsps/errors.hpp"
#include "bsps/normal.hpp"
#include "bsps/quadrature.hpp"

namespace bsps {

namespace {

void require_positive(double t) {
  if (!(t > 0.0)) throw DomainError("Birnbaum-Saunders support is t > 0");
}

// Integrates g(z) phi(z) over the real line; the BS law is a smooth
// transformation of z so the integrand stays Gaussian-tailed for any alpha.
double normal_expectation(const std::function<double(double)>& g) {
  auto integrand = [&](double z) {
    const double w = normal::pdf(z);
    return w == 0.0 ? 0.0 : g(z) * w;
  };
  return quadrature::integrate(integrand, {-38.0, -8.0, 0.0, 8.0, 38.0}, 1e-11);
}

}  // namespace

BSParams::BSParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("Birnbaum-Saunders shape alpha must be positive, got " + std::to_string(alpha));
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("Birnbaum-Saunders scale beta must be positive, got " + std::to_string(beta));
  }
}

double bs_upsilon(const BSParams& p, double t) {
  const double r = std::sqrt(t / p.beta());
  return (r - 1.0 / r) / p.alpha();
}

double bs_from_normal(const BSParams& p, double z) {
  const double a = 0.5 * p.alpha() * z;
  const double root = std::hypot(a, 1.0);
  // a + root cancels for negative a; use its reciprocal form there.
  const double s = a >= 0.0 ? a + root : 1.0 / (root - a);
  return p.beta() * s * s;
}

double bs_cdf(const BSParams& p, double t) {
  require_positive(t);
  return normal::cdf(bs_upsilon(p, t));
}

double bs_sf(const BSParams& p, double t) {
  require_positive(t);
  return normal::sf(bs_upsilon(p, t));
}

double bs_log_sf(const BSParams& p, double t) {
  require_positive(t);
  return normal::log_sf(bs_upsilon(p, t));
}

double bs_log_pdf(const BSParams& p, double t) {
  require_positive(t);
  const double a = p.alpha();
  const double b = p.beta();
  const double log_kappa =
      1.0 / (a * a) - std::log(2.0 * a) - 0.5 * std::log(2.0 * std::numbers::pi * b);
  const double tau = t / b + b / t;
  return log_kappa - 1.5 * std::log(t) + std::log(t + b) - tau / (2.0 * a * a);
}

double bs_pdf(const BSParams& p, double t) { return std::exp(bs_log_pdf(p, t)); }

double bs_hazard(const BSParams& p, double t) {
  return std::exp(bs_log_pdf(p, t) - bs_log_sf(p, t));
}

double bs_quantile(const BSParams& p, double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile level must lie in (0,1)");
  return bs_from_normal(p, normal::quantile(u));
}

double bs_sample(const BSParams& p, Rng& rng) { return bs_from_normal(p, standard_normal(rng)); }

double bs_mean(const BSParams& p) { return p.beta() * (1.0 + 0.5 * p.alpha() * p.alpha()); }

double bs_variance(const BSParams& p) {
  const double ab = p.alpha() * p.beta();
  return ab * ab * (1.0 + 1.25 * p.alpha() * p.alpha());
}

double bs_pwm(const BSParams& p, int order_p, int order_r) {
  if (order_p < 0 || order_r < 0) throw DomainError("PWM orders must be nonnegative");
  return normal_expectation([&](double z) {
    return std::pow(bs_from_normal(p, z), order_p) * std::pow(normal::cdf(z), order_r);
  });
}

double bs_survival_pwm(const BSParams& p, int order_p, int order_r) {
  if (order_p < 0 || order_r < 0) throw DomainError("PWM orders must be nonnegative");
  return normal_expectation([&](double z) {
    return std::pow(bs_from_normal(p, z), order_p) * std::pow(normal::sf(z), order_r);
  });
}

}  // namespace bsps
