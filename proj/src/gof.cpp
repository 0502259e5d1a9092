#include "bsps/gof.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bsps/errors.hpp"
#include "bsps/normal.hpp"
#include "bsps/parallel.hpp"
#include "bsps/random.hpp"

namespace bsps {

namespace {

void require_uncensored(const DataSet& data) {
  if (data.has_censoring()) throw DomainError("goodness-of-fit statistics need uncensored data");
}

std::vector<double> transformed(const Law& law, const DataSet& data) {
  std::vector<double> u;
  u.reserve(data.size());
  for (double x : data.values()) u.push_back(law_cdf(law, x));
  return u;
}

// Stephens' finite-sample adjustment of the Kolmogorov argument.
double ks_pvalue(double d, double effective_n) {
  const double root = std::sqrt(effective_n);
  return kolmogorov_sf((root + 0.12 + 0.11 / root) * d);
}

}  // namespace

double ks_statistic(const Law& law, const DataSet& data) {
  require_uncensored(data);
  std::vector<double> u = transformed(law, data);
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    d = std::max({d, (i + 1) / n - u[i], u[i] - i / n});
  }
  return d;
}

CvmAd chen_balakrishnan(std::vector<double> u) {
  const std::size_t n = u.size();
  if (n < 2) throw DomainError("Chen-Balakrishnan statistics need at least 2 observations");
  constexpr double lo = 1e-12;
  constexpr double hi = 1.0 - 1e-12;
  CvmAd out;
  auto clip = [&](double p) {
    if (p < lo || p > hi) out.clipped = true;
    return std::clamp(p, lo, hi);
  };

  std::sort(u.begin(), u.end());
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = normal::quantile(clip(u[i]));
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : y) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  if (!(sd > 0.0)) throw DomainError("normal scores have zero spread");

  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = clip(normal::cdf((y[i] - mean) / sd));

  const double nn = static_cast<double>(n);
  double w2 = 1.0 / (12.0 * nn);
  double a_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double k = 2.0 * (i + 1) - 1.0;
    const double e = v[i] - k / (2.0 * nn);
    w2 += e * e;
    a_sum += k * (std::log(v[i]) + std::log1p(-v[n - 1 - i]));
  }
  const double a2 = -nn - a_sum / nn;
  out.cvm = w2 * (1.0 + 0.5 / nn);
  out.ad = a2 * (1.0 + 0.75 / nn + 2.25 / (nn * nn));
  return out;
}

CvmAd cvm_ad(const Law& law, const DataSet& data) {
  require_uncensored(data);
  return chen_balakrishnan(transformed(law, data));
}

double bootstrap_pvalue(std::span<const double> bootstrap, double observed) {
  if (bootstrap.empty()) throw DomainError("empty bootstrap sample");
  const auto hits = std::count_if(bootstrap.begin(), bootstrap.end(),
                                  [observed](double s) { return s >= observed; });
  return static_cast<double>(hits) / static_cast<double>(bootstrap.size());
}

BootstrapSample bootstrap_statistics(const FitResult& fit, std::size_t n, int n_boot,
                                     std::uint64_t seed, const FitOptions& options) {
  if (n_boot < 1) throw DomainError("n_boot must be positive");
  const auto count = static_cast<std::size_t>(n_boot);
  std::vector<double> cvm(count);
  std::vector<double> ad(count);
  std::vector<char> ok(count, 0);

  parallel_for(count, [&](std::size_t b) {
    Rng rng = make_stream(seed, b);
    std::vector<double> xs(n);
    for (double& x : xs) x = law_sample(fit.law, rng);
    try {
      const DataSet replicate(std::move(xs), "bootstrap");
      const FitResult refitted = refit(fit, replicate, options);
      const CvmAd s = cvm_ad(refitted.law, replicate);
      cvm[b] = s.cvm;
      ad[b] = s.ad;
      ok[b] = 1;
    } catch (const Error&) {
      ok[b] = 0;
    }
  });

  BootstrapSample out;
  for (std::size_t b = 0; b < count; ++b) {
    if (ok[b]) {
      out.cvm.push_back(cvm[b]);
      out.ad.push_back(ad[b]);
    } else {
      ++out.dropped;
    }
  }
  if (out.dropped > 0.05 * n_boot) {
    throw ConvergenceError(std::to_string(out.dropped) + " of " + std::to_string(n_boot) +
                           " bootstrap refits failed");
  }
  return out;
}

GofReport goodness_of_fit(const FitResult& fit, const DataSet& data, int n_boot,
                          std::uint64_t seed, const FitOptions& options) {
  if (n_boot < 200) throw DomainError("bootstrap p-values need n_boot >= 200");
  if (fit.data_fingerprint != data.fingerprint()) {
    throw MismatchError("fit was computed on different data");
  }
  GofReport report;
  report.model = fit.label();
  report.ks = ks_statistic(fit.law, data);
  const CvmAd observed = cvm_ad(fit.law, data);
  report.cvm = observed.cvm;
  report.ad = observed.ad;
  report.clipped = observed.clipped;
  const BootstrapSample boot = bootstrap_statistics(fit, data.size(), n_boot, seed, options);
  report.p_cvm = bootstrap_pvalue(boot.cvm, observed.cvm);
  report.p_ad = bootstrap_pvalue(boot.ad, observed.ad);
  report.n_boot = n_boot;
  report.dropped = boot.dropped;
  return report;
}

std::vector<RankingRow> compare(std::span<const FitResult> fits) {
  std::vector<RankingRow> rows;
  if (fits.empty()) return rows;
  for (const FitResult& f : fits) {
    if (f.data_fingerprint != fits.front().data_fingerprint) {
      throw MismatchError("fits being compared were computed on different data");
    }
    rows.push_back({f.label(), f.parameter_count(), f.neg2loglik, f.aic, f.bic, false, false});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const RankingRow& a, const RankingRow& b) {
    if (a.aic != b.aic) return a.aic < b.aic;
    if (a.bic != b.bic) return a.bic < b.bic;
    return a.parameters < b.parameters;
  });
  rows.front().best_aic = true;
  auto best_bic = std::min_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.bic != b.bic) return a.bic < b.bic;
    return a.parameters < b.parameters;
  });
  best_bic->best_bic = true;
  return rows;
}

double kolmogorov_sf(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsTest ks_one_sample(std::span<const double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw DomainError("empty sample");
  std::vector<double> xs(sample.begin(), sample.end());
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double u = cdf(xs[i]);
    d = std::max({d, (i + 1) / n - u, u - i / n});
  }
  return {d, ks_pvalue(d, n)};
}

KsTest ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DomainError("empty sample");
  std::vector<double> xa(a.begin(), a.end());
  std::vector<double> xb(b.begin(), b.end());
  std::sort(xa.begin(), xa.end());
  std::sort(xb.begin(), xb.end());
  const double na = static_cast<double>(xa.size());
  const double nb = static_cast<double>(xb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < xa.size() && j < xb.size()) {
    const double x = std::min(xa[i], xb[j]);
    while (i < xa.size() && xa[i] <= x) ++i;
    while (j < xb.size() && xb[j] <= x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return {d, ks_pvalue(d, na * nb / (na + nb))};
}

}  // namespace bsps
