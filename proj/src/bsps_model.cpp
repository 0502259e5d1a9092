#include "bsps/bsps_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bsps/errors.hpp"
#include "bsps/normal.hpp"
#include "bsps/quadrature.hpp"

namespace bsps {

namespace {

void require_positive(double x) {
  if (!(x > 0.0)) throw DomainError("BSPS support is x > 0");
}

double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double choose(int n, int k) { return std::round(std::exp(log_choose(n, k))); }

// Upper tail of the base law and the series argument w = theta * S.
struct Tail {
  double cdf_bs;
  double sf_bs;
  double w;
};

Tail tail(const BspsModel& mdl, double x) {
  const double v = bs_upsilon(mdl.bs(), x);
  const double sf = normal::sf(v);
  return {normal::cdf(v), sf, mdl.theta() * sf};
}

}  // namespace

BspsModel::BspsModel(PowerSeriesFamily family, double theta, BSParams bs)
    : family_(family), theta_(theta), bs_(bs) {
  if (!family.domain().contains(theta)) {
    throw DomainError("theta = " + std::to_string(theta) + " outside the domain of the " +
                      family.name() + " family");
  }
}

double cdf(const BspsModel& mdl, double x) {
  require_positive(x);
  const Tail t = tail(mdl, x);
  const double theta = mdl.theta();
  switch (mdl.family().kind()) {
    case FamilyKind::Geometric: return t.cdf_bs / (1.0 - t.w);
    case FamilyKind::Poisson: return std::expm1(-theta * t.cdf_bs) / std::expm1(-theta);
    case FamilyKind::Logarithmic:
      return std::log1p(-theta * t.cdf_bs / (1.0 - t.w)) / std::log1p(-theta);
    case FamilyKind::Binomial: {
      const PowerSeriesFamily& f = mdl.family();
      return (f.series(theta) - f.series(t.w)) / f.series(theta);
    }
  }
  return 0.0;
}

double log_survival(const BspsModel& mdl, double x) {
  require_positive(x);
  const Tail t = tail(mdl, x);
  const PowerSeriesFamily& f = mdl.family();
  return std::log(mdl.theta()) + bs_log_sf(mdl.bs(), x) + std::log(f.series_ratio(t.w)) -
         f.log_c(mdl.theta());
}

double survival(const BspsModel& mdl, double x) {
  if (mdl.family().kind() == FamilyKind::Geometric) {
    require_positive(x);
    const Tail t = tail(mdl, x);
    return (1.0 - mdl.theta()) * t.sf_bs / (1.0 - t.w);
  }
  return std::exp(log_survival(mdl, x));
}

double log_pdf(const BspsModel& mdl, double x) {
  require_positive(x);
  const Tail t = tail(mdl, x);
  const PowerSeriesFamily& f = mdl.family();
  return std::log(mdl.theta()) + bs_log_pdf(mdl.bs(), x) + f.log_series_prime(t.w) -
         f.log_c(mdl.theta());
}

double pdf(const BspsModel& mdl, double x) { return std::exp(log_pdf(mdl, x)); }

double hazard(const BspsModel& mdl, double x) {
  require_positive(x);
  const Tail t = tail(mdl, x);
  const PowerSeriesFamily& f = mdl.family();
  // theta f C'(w) / C(w) = h_BS(x) * C'(w) / (C(w) / w)
  return bs_hazard(mdl.bs(), x) * f.series_prime(t.w) / f.series_ratio(t.w);
}

double quantile(const BspsModel& mdl, double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile level must lie in (0,1)");
  const PowerSeriesFamily& f = mdl.family();
  const double theta = mdl.theta();
  // Base-law survival level q with C(theta q) = (1 - u) C(theta).
  double q = 0.0;
  if (f.kind() == FamilyKind::Geometric) {
    q = (1.0 - u) / (1.0 - theta * u);
  } else {
    q = f.c_inverse((1.0 - u) * f.c(theta)) / theta;
  }
  q = std::clamp(q, std::numeric_limits<double>::min(), 1.0 - 0x1.0p-53);
  return bs_from_normal(mdl.bs(), normal::sf_inverse(q));
}

double sample_inverse(const BspsModel& mdl, Rng& rng) {
  return quantile(mdl, uniform_open(rng));
}

double sample_compound(const BspsModel& mdl, Rng& rng) {
  const int n = mdl.family().sample_count(mdl.theta(), rng);
  double smallest = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) smallest = std::min(smallest, bs_sample(mdl.bs(), rng));
  return smallest;
}

MomentResult moment(const BspsModel& mdl, int s, int n_max) {
  if (s < 1) throw DomainError("moment order must be >= 1");
  if (n_max < 1) throw DomainError("series truncation n_max must be >= 1");
  const PowerSeriesFamily& f = mdl.family();
  const int last = std::min(n_max, f.support_max());
  MomentResult result;
  for (int n = 1; n <= last; ++n) {
    // sum_k omega_{n,k} tau_{s,k} collapses to n p_n E[T^s (1 - Phi)^{n-1}]
    const double block = n * f.pmf(mdl.theta(), n) * bs_survival_pwm(mdl.bs(), s, n - 1);
    result.value += block;
    result.last_block = std::abs(block);
    result.terms = n;
    if (result.last_block < 1e-12 * std::abs(result.value)) break;
  }
  result.converged = result.terms == f.support_max() ||
                     result.last_block <= 1e-8 * std::abs(result.value);
  return result;
}

double moment_pwm_series(const BspsModel& mdl, int s, int n_max) {
  if (s < 1 || n_max < 1) throw DomainError("moment order and n_max must be >= 1");
  const PowerSeriesFamily& f = mdl.family();
  const int last = std::min(n_max, f.support_max());
  std::vector<double> tau(static_cast<std::size_t>(last));
  for (int k = 0; k < last; ++k) tau[k] = bs_pwm(mdl.bs(), s, k);
  double total = 0.0;
  for (int n = 1; n <= last; ++n) {
    const double np = n * f.pmf(mdl.theta(), n);
    for (int k = 0; k <= n - 1; ++k) {
      const double omega = (k % 2 == 0 ? 1.0 : -1.0) * np * choose(n - 1, k);
      total += omega * tau[k];
    }
  }
  return total;
}

double order_stat_pdf(const BspsModel& mdl, int i, int m, double x) {
  if (m < 1 || i < 1 || i > m) throw DomainError("order statistic needs 1 <= i <= m");
  require_positive(x);
  const double log_coef = std::log(static_cast<double>(m)) + log_choose(m - 1, i - 1);
  double log_value = log_coef + log_pdf(mdl, x);
  if (i > 1) {
    const double F = cdf(mdl, x);
    if (F <= 0.0) return 0.0;
    log_value += (i - 1) * std::log(F);
  }
  if (m > i) log_value += (m - i) * log_survival(mdl, x);
  return std::exp(log_value);
}

double order_stat_moment(const BspsModel& mdl, int i, int m, int s) {
  if (m < 1 || i < 1 || i > m) throw DomainError("order statistic needs 1 <= i <= m");
  if (s < 1) throw DomainError("moment order must be >= 1");
  const BSParams& bs = mdl.bs();
  const double beta = bs.beta();
  auto y_at = [&](double z) { return 2.0 * std::asinh(0.5 * bs.alpha() * z); };
  const double y_lo = std::min(-40.0 / s, y_at(-8.0) - 1.0);
  double total = 0.0;
  for (int j = m - i + 1; j <= m; ++j) {
    // integral of x^{s-1} S(x)^j dx with x = beta e^y
    auto integrand = [&](double y) {
      const double x = beta * std::exp(y);
      const double ls = log_survival(mdl, x);
      return std::exp(s * std::log(x) + j * ls);
    };
    const double integral = quadrature::integrate(
        integrand, {y_lo, y_at(-8.0), y_at(-4.0), 0.0, y_at(4.0), y_at(8.0), y_at(38.0)}, 1e-11);
    const double sign = (j - m + i - 1) % 2 == 0 ? 1.0 : -1.0;
    total += sign * choose(j - 1, m - i) * choose(m, j) * integral;
  }
  return s * total;
}

double law_cdf(const Law& law, double x) {
  return std::visit(
      [x](const auto& l) {
        if constexpr (std::is_same_v<std::decay_t<decltype(l)>, BSParams>) return bs_cdf(l, x);
        else return cdf(l, x);
      },
      law);
}

double law_log_pdf(const Law& law, double x) {
  return std::visit(
      [x](const auto& l) {
        if constexpr (std::is_same_v<std::decay_t<decltype(l)>, BSParams>) return bs_log_pdf(l, x);
        else return log_pdf(l, x);
      },
      law);
}

double law_log_survival(const Law& law, double x) {
  return std::visit(
      [x](const auto& l) {
        if constexpr (std::is_same_v<std::decay_t<decltype(l)>, BSParams>) return bs_log_sf(l, x);
        else return log_survival(l, x);
      },
      law);
}

double law_quantile(const Law& law, double u) {
  return std::visit(
      [u](const auto& l) {
        if constexpr (std::is_same_v<std::decay_t<decltype(l)>, BSParams>) return bs_quantile(l, u);
        else return quantile(l, u);
      },
      law);
}

double law_sample(const Law& law, Rng& rng) {
  return std::visit(
      [&rng](const auto& l) {
        if constexpr (std::is_same_v<std::decay_t<decltype(l)>, BSParams>) return bs_sample(l, rng);
        else return sample_inverse(l, rng);
      },
      law);
}

int law_parameter_count(const Law& law) { return std::holds_alternative<BSParams>(law) ? 2 : 3; }

std::string law_label(const Law& law) {
  if (const auto* m = std::get_if<BspsModel>(&law)) return m->family().model_label();
  return "BS";
}

std::vector<double> law_parameters(const Law& law) {
  if (const auto* m = std::get_if<BspsModel>(&law)) {
    return {m->theta(), m->bs().alpha(), m->bs().beta()};
  }
  const auto& p = std::get<BSParams>(law);
  return {p.alpha(), p.beta()};
}

std::vector<std::string> law_parameter_names(const Law& law) {
  if (std::holds_alternative<BspsModel>(law)) return {"theta", "alpha", "beta"};
  return {"alpha", "beta"};
}

}  // namespace bsps
