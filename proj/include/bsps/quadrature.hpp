#pragma once

#include <functional>
#include <initializer_list>

namespace bsps::quadrature {

/// Adaptive Gauss-Kronrod integral of f over [a, b]; throws IntegrationError
/// when the error estimate exceeds rel_tol relative to the L1 norm.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10);

/// Sum of integrals over consecutive breakpoints, e.g. {a, c, b} splits at c.
double integrate(const std::function<double(double)>& f, std::initializer_list<double> breaks,
                 double rel_tol = 1e-10);

}  // namespace bsps::quadrature
