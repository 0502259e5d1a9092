#include "bsps/mle.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bsps/errors.hpp"
#include "bsps/normal.hpp"
#include "bsps/optimizer.hpp"

namespace bsps {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Derivatives of log f_BS and of the base survival S = Phi(-v) at one
// observation, with respect to (alpha, beta).
struct BaseTerms {
  double log_f;
  double v;
  double sf;
  double dlogf_a, dlogf_b;
  double d2logf_aa, d2logf_ab, d2logf_bb;
  double S_a, S_b;
  double S_aa, S_ab, S_bb;
};

BaseTerms base_terms(const BSParams& p, double x) {
  const double a = p.alpha();
  const double b = p.beta();
  const double sx = std::sqrt(x / b);
  const double q = sx + 1.0 / sx;  // sqrt(x/b) + sqrt(b/x)
  const double tau = x / b + b / x;
  const double tau_b = -x / (b * b) + 1.0 / x;
  const double a2 = a * a;
  const double a3 = a2 * a;
  const double a4 = a2 * a2;

  BaseTerms t{};
  t.log_f = bs_log_pdf(p, x);
  t.v = (sx - 1.0 / sx) / a;
  t.sf = normal::sf(t.v);
  const double phi = normal::pdf(t.v);
  const double v = t.v;

  t.dlogf_a = -1.0 / a - 2.0 / a3 + tau / a3;
  t.dlogf_b = -0.5 / b + 1.0 / (x + b) - tau_b / (2.0 * a2);
  t.d2logf_aa = 1.0 / a2 + 6.0 / a4 - 3.0 * tau / a4;
  t.d2logf_ab = tau_b / a3;
  t.d2logf_bb = 0.5 / (b * b) - 1.0 / ((x + b) * (x + b)) - x / (a2 * b * b * b);

  t.S_a = phi * v / a;
  t.S_b = phi * q / (2.0 * a * b);
  t.S_aa = phi * v * (v * v - 2.0) / a2;
  t.S_ab = -q * phi * (1.0 - v * v) / (2.0 * a2 * b);
  t.S_bb = phi * (v * q * q / (4.0 * a2 * b * b) - v / (4.0 * b * b) - q / (2.0 * a * b * b));
  return t;
}

void require_finite(double value, std::size_t index) {
  if (!std::isfinite(value)) throw NonFiniteError("non-finite log-likelihood term", index);
}

// Log-likelihood and, optionally, its analytic gradient for uncensored data.
double evaluate_uncensored(const Law& law, const DataSet& data, VectorXd* grad) {
  const auto& xs = data.values();
  const double n = static_cast<double>(xs.size());
  if (const auto* bs = std::get_if<BSParams>(&law)) {
    double ll = 0.0;
    VectorXd g = VectorXd::Zero(2);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const BaseTerms t = base_terms(*bs, xs[i]);
      require_finite(t.log_f, i);
      ll += t.log_f;
      g[0] += t.dlogf_a;
      g[1] += t.dlogf_b;
    }
    if (grad) *grad = g;
    return ll;
  }
  const auto& mdl = std::get<BspsModel>(law);
  const PowerSeriesFamily& fam = mdl.family();
  const double theta = mdl.theta();
  double ll = n * (std::log(theta) - fam.log_c(theta));
  VectorXd g = VectorXd::Zero(3);
  g[0] = n * (1.0 / theta - fam.series_prime(theta) / fam.series(theta));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const BaseTerms t = base_terms(mdl.bs(), xs[i]);
    const double w = theta * t.sf;
    const double term = t.log_f + fam.log_series_prime(w);
    require_finite(term, i);
    ll += term;
    const double r1 = fam.log_prime_d1(w);
    g[0] += r1 * t.sf;
    g[1] += t.dlogf_a + r1 * theta * t.S_a;
    g[2] += t.dlogf_b + r1 * theta * t.S_b;
  }
  if (grad) *grad = g;
  return ll;
}

double evaluate(const Law& law, const DataSet& data, VectorXd* grad) {
  if (!data.has_censoring()) return evaluate_uncensored(law, data, grad);
  const double ll = log_likelihood(law, data);
  if (grad) *grad = numeric_gradient(law, data);
  return ll;
}

// Maps between model parameters and unconstrained optimizer coordinates:
// (logit or log theta, log alpha, log beta).
class Reparam {
 public:
  Reparam(std::optional<PowerSeriesFamily> family, double margin)
      : family_(family), margin_(margin) {}

  int dim() const { return family_ ? 3 : 2; }

  std::vector<double> to_params(const VectorXd& eta) const {
    if (!family_) return {std::exp(eta[0]), std::exp(eta[1])};
    return {theta_of(eta[0]), std::exp(eta[1]), std::exp(eta[2])};
  }

  VectorXd to_eta(const std::vector<double>& params) const {
    VectorXd eta(dim());
    if (!family_) {
      eta << std::log(params[0]), std::log(params[1]);
    } else {
      eta << z_of(params[0]), std::log(params[1]), std::log(params[2]);
    }
    return eta;
  }

  // d params / d eta, diagonal.
  VectorXd jacobian(const std::vector<double>& params) const {
    VectorXd j(dim());
    if (!family_) {
      j << params[0], params[1];
    } else {
      const double th = params[0];
      j << (bounded() ? th * (1.0 - th) : th), params[1], params[2];
    }
    return j;
  }

  VectorXd lower() const {
    VectorXd lo = VectorXd::Constant(dim(), -kInf);
    if (family_) lo[0] = z_of(margin_);
    return lo;
  }

  VectorXd upper() const {
    VectorXd hi = VectorXd::Constant(dim(), kInf);
    if (family_ && bounded()) hi[0] = z_of(1.0 - margin_);
    return hi;
  }

  Law make_law(const std::vector<double>& params) const {
    if (!family_) return BSParams(params[0], params[1]);
    return BspsModel(*family_, params[0], BSParams(params[1], params[2]));
  }

 private:
  bool bounded() const { return std::isfinite(family_->domain().upper); }
  double theta_of(double z) const { return bounded() ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z); }
  double z_of(double theta) const {
    return bounded() ? std::log(theta) - std::log1p(-theta) : std::log(theta);
  }

  std::optional<PowerSeriesFamily> family_;
  double margin_;
};

std::vector<double> default_theta_starts(const PowerSeriesFamily& family) {
  if (family.kind() == FamilyKind::Poisson) return {0.5, 2.0, 5.0};
  return {0.1, 0.5, 0.9};
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

double log_likelihood(const Law& law, const DataSet& data) {
  const auto& xs = data.values();
  const auto& events = data.events();
  double ll = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double term = events[i] ? law_log_pdf(law, xs[i]) : law_log_survival(law, xs[i]);
    require_finite(term, i);
    ll += term;
  }
  return ll;
}

Eigen::VectorXd score(const Law& law, const DataSet& data) {
  if (data.has_censoring()) {
    throw DomainError("analytic score is defined for uncensored data; use gradient()");
  }
  VectorXd g;
  evaluate_uncensored(law, data, &g);
  return g;
}

Eigen::VectorXd numeric_gradient(const Law& law, const DataSet& data) {
  const std::vector<double> p = law_parameters(law);
  VectorXd g(static_cast<Eigen::Index>(p.size()));
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double h = std::max(1e-6 * std::abs(p[j]), 1e-9);
    std::vector<double> plus = p;
    std::vector<double> minus = p;
    plus[j] += h;
    minus[j] -= h;
    g[static_cast<Eigen::Index>(j)] =
        (log_likelihood(law_with_parameters(law, plus), data) -
         log_likelihood(law_with_parameters(law, minus), data)) /
        (2.0 * h);
  }
  return g;
}

Eigen::VectorXd gradient(const Law& law, const DataSet& data) {
  return data.has_censoring() ? numeric_gradient(law, data) : score(law, data);
}

Eigen::MatrixXd observed_info(const Law& law, const DataSet& data) {
  const std::vector<double> p = law_parameters(law);
  const auto k = static_cast<Eigen::Index>(p.size());
  MatrixXd hess(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const double h = std::max(1e-5 * std::abs(p[j]), 1e-7);
    std::vector<double> plus = p;
    std::vector<double> minus = p;
    plus[j] += h;
    minus[j] -= h;
    hess.col(j) = (gradient(law_with_parameters(law, plus), data) -
                   gradient(law_with_parameters(law, minus), data)) /
                  (2.0 * h);
  }
  return -0.5 * (hess + hess.transpose());
}

Eigen::MatrixXd observed_info_closed_form(const Law& law, const DataSet& data) {
  if (data.has_censoring()) {
    throw DomainError("closed-form information is defined for uncensored data");
  }
  const auto& xs = data.values();
  const double n = static_cast<double>(xs.size());
  if (const auto* bs = std::get_if<BSParams>(&law)) {
    MatrixXd h = MatrixXd::Zero(2, 2);
    for (double x : xs) {
      const BaseTerms t = base_terms(*bs, x);
      h(0, 0) += t.d2logf_aa;
      h(0, 1) += t.d2logf_ab;
      h(1, 1) += t.d2logf_bb;
    }
    h(1, 0) = h(0, 1);
    return -h;
  }
  const auto& mdl = std::get<BspsModel>(law);
  const PowerSeriesFamily& fam = mdl.family();
  const double th = mdl.theta();
  const double c = fam.series(th);
  const double c1 = fam.series_prime(th);
  const double c2 = fam.c_double_prime(th);

  MatrixXd h = MatrixXd::Zero(3, 3);
  h(0, 0) = n * (-1.0 / (th * th) - (c2 / c - (c1 / c) * (c1 / c)));
  for (double x : xs) {
    const BaseTerms t = base_terms(mdl.bs(), x);
    const double w = th * t.sf;
    const double r1 = fam.log_prime_d1(w);
    const double r2 = fam.log_prime_d2(w);
    // w and its derivatives in (theta, alpha, beta)
    const double w_t = t.sf;
    const double w_a = th * t.S_a;
    const double w_b = th * t.S_b;
    h(0, 0) += r2 * w_t * w_t;
    h(0, 1) += r2 * w_t * w_a + r1 * t.S_a;
    h(0, 2) += r2 * w_t * w_b + r1 * t.S_b;
    h(1, 1) += t.d2logf_aa + r2 * w_a * w_a + r1 * th * t.S_aa;
    h(1, 2) += t.d2logf_ab + r2 * w_a * w_b + r1 * th * t.S_ab;
    h(2, 2) += t.d2logf_bb + r2 * w_b * w_b + r1 * th * t.S_bb;
  }
  h(1, 0) = h(0, 1);
  h(2, 0) = h(0, 2);
  h(2, 1) = h(1, 2);
  return -h;
}

Law law_with_parameters(const Law& like, const std::vector<double>& params) {
  if (const auto* m = std::get_if<BspsModel>(&like)) {
    if (params.size() != 3) throw DomainError("compound law takes (theta, alpha, beta)");
    return BspsModel(m->family(), params[0], BSParams(params[1], params[2]));
  }
  if (params.size() != 2) throw DomainError("plain law takes (alpha, beta)");
  return BSParams(params[0], params[1]);
}

FitResult fit(const std::optional<PowerSeriesFamily>& family, const DataSet& data,
              const FitOptions& options) {
  const std::size_t k = family ? 3 : 2;
  if (data.event_count() < k) {
    throw DomainError("need at least " + std::to_string(k) + " event observations to fit");
  }
  const Reparam map(family, options.boundary_margin);

  const optim::Objective objective = [&](const VectorXd& eta, VectorXd& grad) {
    try {
      const std::vector<double> params = map.to_params(eta);
      const Law law = map.make_law(params);
      VectorXd g;
      const double ll = evaluate(law, data, &g);
      grad = -(g.array() * map.jacobian(params).array()).matrix();
      return -ll;
    } catch (const Error&) {
      grad = VectorXd::Constant(map.dim(), std::numeric_limits<double>::quiet_NaN());
      return kInf;
    }
  };

  // Modified-moment style starting values for (alpha, beta).
  const double mean =
      std::accumulate(data.values().begin(), data.values().end(), 0.0) / data.size();
  const double median = median_of(data.values());
  const double alpha0 = std::clamp(std::sqrt(std::max(0.0, 2.0 * (mean / median - 1.0))), 0.05, 5.0);
  const double beta0 = median;

  std::vector<std::vector<double>> starts;
  if (family) {
    std::vector<double> thetas =
        options.theta_starts.empty() ? default_theta_starts(*family) : options.theta_starts;
    for (double th : thetas) starts.push_back({th, alpha0, beta0});
  } else {
    starts.push_back({alpha0, beta0});
  }

  const VectorXd lower = map.lower();
  const VectorXd upper = map.upper();
  optim::Options opt;
  opt.grad_tol = options.grad_tol;
  opt.step_tol = options.step_tol;
  opt.max_iter = options.max_iter;

  std::optional<optim::Result> best;
  int total_iterations = 0;
  for (const auto& start : starts) {
    optim::Result r = optim::minimize(objective, map.to_eta(start), lower, upper, opt);
    total_iterations += r.iterations;
    if (!r.converged || !std::isfinite(r.value)) continue;
    if (!best || r.value < best->value) best = std::move(r);
  }
  if (!best) throw ConvergenceError("maximum-likelihood search failed from every start");
  optim::Result polished = optim::newton_polish(objective, *best, lower, upper);

  const std::vector<double> params = map.to_params(polished.x);
  FitResult result(map.make_law(params));
  result.estimates = params;
  result.loglik = -polished.value;
  result.neg2loglik = 2.0 * polished.value;
  result.n = data.size();
  const double kk = static_cast<double>(k);
  result.aic = result.neg2loglik + 2.0 * kk;
  result.bic = result.neg2loglik + kk * std::log(static_cast<double>(data.size()));
  result.converged = true;
  result.grad_norm =
      optim::projected_gradient(polished.x, polished.grad, lower, upper).lpNorm<Eigen::Infinity>();
  result.iterations = total_iterations;
  result.starts = static_cast<int>(starts.size());
  result.data_fingerprint = data.fingerprint();
  result.data_name = data.name();

  if (family) {
    const ThetaDomain dom = family->domain();
    const double th = params[0];
    const double tol = options.boundary_margin * (1.0 + 1e-9);
    result.boundary_flag = (th - dom.lower) <= tol || (dom.upper - th) <= tol;
    if (result.boundary_flag) {
      result.warnings.push_back("theta estimate is pinned at the edge of its domain; "
                                "standard errors are not reliable");
    }
  }

  result.info = observed_info(result.law, data);
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(result.info);
  const VectorXd ev = eig.eigenvalues();
  result.std_errors.assign(k, std::numeric_limits<double>::quiet_NaN());
  if (ev.minCoeff() > 0.0) {
    const MatrixXd inv = result.info.inverse();
    for (std::size_t j = 0; j < k; ++j) {
      result.std_errors[j] = std::sqrt(inv(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)));
    }
    if (ev.maxCoeff() / ev.minCoeff() > 1e12) {
      result.warnings.push_back("observed information is ill-conditioned (condition number > 1e12)");
    }
  } else {
    result.singular = true;
    result.warnings.push_back("observed information is not positive definite");
  }
  return result;
}

FitResult refit(const FitResult& like, const DataSet& data, const FitOptions& options) {
  std::optional<PowerSeriesFamily> family;
  if (const auto* m = std::get_if<BspsModel>(&like.law)) family = m->family();
  return fit(family, data, options);
}

std::vector<Interval> confidence_intervals(const FitResult& fit, double gamma) {
  if (!(gamma > 0.0 && gamma < 0.5)) throw DomainError("gamma must lie in (0, 1/2)");
  if (fit.singular) throw SingularityError("observed information is not invertible");
  const double z = normal::quantile(1.0 - gamma / 2.0);
  std::vector<Interval> out;
  for (std::size_t j = 0; j < fit.estimates.size(); ++j) {
    const double half = z * fit.std_errors[j];
    out.push_back({fit.estimates[j] - half, fit.estimates[j] + half});
  }
  return out;
}

LrTest lr_test(const FitResult& full, const FitResult& restricted, int k) {
  if (k < 1) throw DomainError("LR test needs k >= 1 restrictions");
  if (full.data_fingerprint != restricted.data_fingerprint) {
    throw MismatchError("LR test fits were computed on different data");
  }
  const double diff = full.loglik - restricted.loglik;
  if (diff < -1e-6) {
    throw NestingError("restricted fit has a larger log-likelihood than the full fit");
  }
  const double w = std::max(0.0, 2.0 * diff);
  const double p = w == 0.0 ? 1.0 : boost::math::gamma_q(0.5 * k, 0.5 * w);
  return {w, p};
}

}  // namespace bsps
