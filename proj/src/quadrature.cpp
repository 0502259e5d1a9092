#include "bsps/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "bsps/errors.hpp"

namespace bsps::quadrature {

namespace {

constexpr unsigned kMaxDepth = 20;

struct Piece {
  double value;
  double error;
  double l1;
};

Piece integrate_piece(const std::function<double(double)>& f, double a, double b,
                      double rel_tol) {
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, kMaxDepth, rel_tol, &error, &l1);
  return {value, error, l1};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  return integrate(f, {a, b}, rel_tol);
}

double integrate(const std::function<double(double)>& f, std::initializer_list<double> breaks,
                 double rel_tol) {
  std::vector<double> pts(breaks);
  double total = 0.0;
  double error = 0.0;
  double l1 = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i + 1] <= pts[i]) continue;
    const Piece p = integrate_piece(f, pts[i], pts[i + 1], rel_tol);
    total += p.value;
    error += p.error;
    l1 += p.l1;
  }
  if (!std::isfinite(total)) throw IntegrationError("integrand produced a non-finite value");
  // Boost reports the Kronrod-Gauss difference, a pessimistic estimate; allow
  // a factor of 100 before declaring failure.
  if (error > 100.0 * rel_tol * l1 + std::numeric_limits<double>::min()) {
    throw IntegrationError("quadrature did not converge: error estimate " +
                           std::to_string(error) + " vs L1 " + std::to_string(l1));
  }
  return total;
}

}  // namespace bsps::quadrature
