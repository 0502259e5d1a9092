#include "bsps/optimizer.hpp"

#include <algorithm>
#include <cmath>

namespace bsps::optim {

namespace {

Vector clamp_to(const Vector& x, const Vector& lower, const Vector& upper) {
  return x.cwiseMax(lower).cwiseMin(upper);
}

// Coordinates pinned at a bound with the gradient pushing outward.
Eigen::Array<bool, Eigen::Dynamic, 1> active_set(const Vector& x, const Vector& g,
                                                 const Vector& lower, const Vector& upper) {
  Eigen::Array<bool, Eigen::Dynamic, 1> active(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    active[i] = (x[i] <= lower[i] && g[i] > 0.0) || (x[i] >= upper[i] && g[i] < 0.0);
  }
  return active;
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

Vector projected_gradient(const Vector& x, const Vector& grad, const Vector& lower,
                          const Vector& upper) {
  Vector pg = grad;
  const auto active = active_set(x, grad, lower, upper);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (active[i]) pg[i] = 0.0;
  }
  return pg;
}

Result minimize(const Objective& f, const Vector& x0, const Vector& lower, const Vector& upper,
                const Options& options) {
  const Eigen::Index dim = x0.size();
  Result r;
  r.x = clamp_to(x0, lower, upper);
  r.grad = Vector::Zero(dim);
  r.value = f(r.x, r.grad);
  if (!finite(r.value) || !r.grad.allFinite()) return r;

  Matrix H = Matrix::Identity(dim, dim);
  bool fresh = true;
  int tiny_steps = 0;

  for (r.iterations = 0; r.iterations < options.max_iter; ++r.iterations) {
    const Vector pg = projected_gradient(r.x, r.grad, lower, upper);
    if (pg.lpNorm<Eigen::Infinity>() < options.grad_tol) {
      r.converged = true;
      return r;
    }
    const auto active = active_set(r.x, r.grad, lower, upper);

    Vector d = -(H * pg);
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (active[i]) d[i] = 0.0;
    }
    if (!(r.grad.dot(d) < 0.0)) {
      H.setIdentity();
      fresh = true;
      d = -pg;
    }

    double t = 1.0;
    if (fresh) t = std::min(1.0, 1.0 / pg.lpNorm<Eigen::Infinity>());
    const double t_initial = t;
    Vector x_new;
    Vector g_new(dim);
    double f_new = 0.0;
    bool accepted = false;
    for (int k = 0; k < 60; ++k) {
      x_new = clamp_to(r.x + t * d, lower, upper);
      f_new = f(x_new, g_new);
      if (finite(f_new) && g_new.allFinite() &&
          f_new <= r.value + 1e-4 * r.grad.dot(x_new - r.x)) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      // No representable decrease left: f is flat to rounding along d.
      if (-r.grad.dot(d) * t_initial <= 1e-10 * (1.0 + std::abs(r.value))) {
        r.converged = pg.lpNorm<Eigen::Infinity>() < 1e3 * options.grad_tol;
        return r;
      }
      if (fresh) return r;
      H.setIdentity();
      fresh = true;
      continue;
    }

    const Vector s = x_new - r.x;
    const Vector y = g_new - r.grad;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (fresh) H *= sy / y.squaredNorm();
      const double rho = 1.0 / sy;
      const Matrix I = Matrix::Identity(dim, dim);
      H = (I - rho * s * y.transpose()) * H * (I - rho * y * s.transpose()) +
          rho * s * s.transpose();
      fresh = false;
    }
    r.x = x_new;
    r.value = f_new;
    r.grad = g_new;

    if (s.lpNorm<Eigen::Infinity>() < options.step_tol) {
      if (t == t_initial && !fresh) {
        r.converged = true;
        ++r.iterations;
        return r;
      }
      if (++tiny_steps >= 3) {
        // Stalled at rounding level; accept if the gradient is nearly zero.
        r.converged = projected_gradient(r.x, r.grad, lower, upper).lpNorm<Eigen::Infinity>() <
                      1e3 * options.grad_tol;
        ++r.iterations;
        return r;
      }
      H.setIdentity();
      fresh = true;
    }
  }
  return r;
}

Result newton_polish(const Objective& f, Result start, const Vector& lower, const Vector& upper,
                     int max_steps) {
  Result r = std::move(start);
  const Eigen::Index dim = r.x.size();
  for (int step = 0; step < max_steps; ++step) {
    const Vector pg = projected_gradient(r.x, r.grad, lower, upper);
    if (pg.lpNorm<Eigen::Infinity>() < 1e-12) break;
    const auto active = active_set(r.x, r.grad, lower, upper);

    std::vector<Eigen::Index> free;
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (!active[i]) free.push_back(i);
    }
    if (free.empty()) break;

    const Eigen::Index nf = static_cast<Eigen::Index>(free.size());
    Matrix hess(nf, nf);
    Vector g_plus(dim);
    Vector g_minus(dim);
    bool ok = true;
    for (Eigen::Index a = 0; a < nf && ok; ++a) {
      const Eigen::Index i = free[a];
      const double h = 1e-5 * std::max(1.0, std::abs(r.x[i]));
      Vector xp = r.x;
      Vector xm = r.x;
      xp[i] += h;
      xm[i] -= h;
      const double fp = f(xp, g_plus);
      const double fm = f(xm, g_minus);
      ok = finite(fp) && finite(fm) && g_plus.allFinite() && g_minus.allFinite();
      for (Eigen::Index b = 0; b < nf && ok; ++b) {
        hess(b, a) = (g_plus[free[b]] - g_minus[free[b]]) / (2.0 * h);
      }
    }
    if (!ok) break;
    hess = 0.5 * (hess + hess.transpose()).eval();
    Eigen::LLT<Matrix> llt(hess);
    if (llt.info() != Eigen::Success) break;

    Vector g_free(nf);
    for (Eigen::Index a = 0; a < nf; ++a) g_free[a] = r.grad[free[a]];
    const Vector d_free = -llt.solve(g_free);
    Vector d = Vector::Zero(dim);
    for (Eigen::Index a = 0; a < nf; ++a) d[free[a]] = d_free[a];

    bool improved = false;
    double t = 1.0;
    Vector g_new(dim);
    for (int k = 0; k < 30; ++k) {
      const Vector x_new = clamp_to(r.x + t * d, lower, upper);
      const double f_new = f(x_new, g_new);
      if (finite(f_new) && g_new.allFinite() &&
          (f_new < r.value ||
           (f_new <= r.value + 1e-14 * std::abs(r.value) &&
            projected_gradient(x_new, g_new, lower, upper).lpNorm<Eigen::Infinity>() <
                pg.lpNorm<Eigen::Infinity>()))) {
        r.x = x_new;
        r.value = f_new;
        r.grad = g_new;
        improved = true;
        break;
      }
      t *= 0.5;
    }
    if (!improved) break;
  }
  return r;
}

}  // namespace bsps::optim
