#pragma once

#include <Eigen/Dense>

#include <functional>

namespace bsps::optim {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Objective value at x; writes the gradient into `grad`. May return +inf
/// (or NaN) to reject a point.
using Objective = std::function<double(const Vector& x, Vector& grad)>;

struct Options {
  /// Stop when the projected gradient's infinity norm falls below this.
  double grad_tol = 1e-6;
  /// Stop when a full quasi-Newton step moves every coordinate less than this.
  double step_tol = 1e-10;
  int max_iter = 500;
};

struct Result {
  Vector x;
  double value = 0.0;
  Vector grad;
  int iterations = 0;
  bool converged = false;
};

/// Gradient with the components that push against an active bound zeroed.
Vector projected_gradient(const Vector& x, const Vector& grad, const Vector& lower,
                          const Vector& upper);

/// Quasi-Newton (BFGS) minimization on the box [lower, upper], with bound
/// constraints handled by an active set and projected backtracking.
Result minimize(const Objective& f, const Vector& x0, const Vector& lower, const Vector& upper,
                const Options& options = {});

/// Newton iterations with a finite-difference Hessian of the gradient,
/// restricted to the free coordinates. Only steps that lower f are kept.
Result newton_polish(const Objective& f, Result start, const Vector& lower, const Vector& upper,
                     int max_steps = 20);

}  // namespace bsps::optim
