#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bsps/bsps_model.hpp"
#include "bsps/dataset.hpp"
#include "bsps/mle.hpp"

namespace bsps {

/// Kolmogorov-Smirnov distance between the empirical cdf and the law.
double ks_statistic(const Law& law, const DataSet& data);

struct CvmAd {
  double cvm = 0.0;  ///< modified W^2
  double ad = 0.0;   ///< modified A^2
  /// Some transformed value hit 0 or 1 and was clipped to [1e-12, 1 - 1e-12].
  bool clipped = false;
};

/// Chen-Balakrishnan statistics from probability-integral-transform values
/// u_i = F(x_i): normal scores are standardized by their sample mean and
/// deviation, mapped back through Phi, and fed to W^2 and A^2 with the
/// small-sample corrections (1 + 0.5/n) and (1 + 0.75/n + 2.25/n^2).
CvmAd chen_balakrishnan(std::vector<double> u);

/// chen_balakrishnan applied to the fitted law's cdf at the data.
CvmAd cvm_ad(const Law& law, const DataSet& data);

/// Proportion of bootstrap statistics at least as large as `observed`.
double bootstrap_pvalue(std::span<const double> bootstrap, double observed);

enum class PValueMethod { Bootstrap };

struct GofReport {
  std::string model;
  double ks = 0.0;
  double cvm = 0.0;
  double ad = 0.0;
  double p_cvm = 1.0;
  double p_ad = 1.0;
  PValueMethod p_method = PValueMethod::Bootstrap;
  int n_boot = 0;
  /// Replicates whose refit failed and were left out.
  int dropped = 0;
  bool clipped = false;
};

struct BootstrapSample {
  std::vector<double> cvm;
  std::vector<double> ad;
  int dropped = 0;
};

/// Parametric bootstrap: n_boot samples of size n from the fitted law, each
/// refitted and scored. Replicate b uses substream b of `seed`. Throws
/// ConvergenceError when more than 5% of the refits fail.
BootstrapSample bootstrap_statistics(const FitResult& fit, std::size_t n, int n_boot,
                                     std::uint64_t seed, const FitOptions& options = {});

/// Statistics of `fit` on `data` with bootstrap p-values.
GofReport goodness_of_fit(const FitResult& fit, const DataSet& data, int n_boot,
                          std::uint64_t seed, const FitOptions& options = {});

struct RankingRow {
  std::string model;
  int parameters = 0;
  double neg2loglik = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  bool best_aic = false;
  bool best_bic = false;
};

/// Rows sorted by AIC, ties broken by BIC and then by fewer parameters.
/// Throws MismatchError if the fits were not computed on the same data.
std::vector<RankingRow> compare(std::span<const FitResult> fits);

struct KsTest {
  double statistic;
  double p_value;
};

/// Limiting Kolmogorov upper tail P(K > lambda).
double kolmogorov_sf(double lambda);

KsTest ks_one_sample(std::span<const double> sample, const std::function<double(double)>& cdf);
KsTest ks_two_sample(std::span<const double> a, std::span<const double> b);

}  // namespace bsps
