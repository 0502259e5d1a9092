#pragma once

#include <string>
#include <variant>
#include <vector>

#include "bsps/birnbaum_saunders.hpp"
#include "bsps/power_series.hpp"
#include "bsps/random.hpp"

namespace bsps {

/// Law of X = min(T_1, ..., T_N) with T_i iid Birnbaum-Saunders and N a
/// zero-truncated power series count independent of the T_i.
class BspsModel {
 public:
  BspsModel(PowerSeriesFamily family, double theta, BSParams bs);

  const PowerSeriesFamily& family() const { return family_; }
  double theta() const { return theta_; }
  const BSParams& bs() const { return bs_; }

  friend bool operator==(const BspsModel&, const BspsModel&) = default;

 private:
  PowerSeriesFamily family_;
  double theta_;
  BSParams bs_;
};

double cdf(const BspsModel& mdl, double x);
double survival(const BspsModel& mdl, double x);
double log_survival(const BspsModel& mdl, double x);
double pdf(const BspsModel& mdl, double x);
double log_pdf(const BspsModel& mdl, double x);
double hazard(const BspsModel& mdl, double x);
double quantile(const BspsModel& mdl, double u);

/// Uniform draw pushed through the quantile function.
double sample_inverse(const BspsModel& mdl, Rng& rng);
/// Minimum of N Birnbaum-Saunders draws with N from the power series law.
double sample_compound(const BspsModel& mdl, Rng& rng);

struct MomentResult {
  double value = 0.0;
  /// Magnitude of the last n-block added to the series.
  double last_block = 0.0;
  int terms = 0;
  /// False when the last block still exceeds 1e-8 of the running sum.
  bool converged = false;
};

/// E(X^s) from the mixture-of-minima series, truncated at n_max blocks or
/// once a block falls below 1e-12 of the running sum.
MomentResult moment(const BspsModel& mdl, int s, int n_max = 200);

/// The same series written as the double sum of omega_{n,k} tau_{s,k}.
/// Binomial coefficients of alternating sign make it unusable past n ~ 25.
double moment_pwm_series(const BspsModel& mdl, int s, int n_max);

/// Density of the i-th order statistic of an iid sample of size m.
double order_stat_pdf(const BspsModel& mdl, int i, int m, double x);

/// E(X_{i:m}^s) by the survival-power representation with quadrature.
double order_stat_moment(const BspsModel& mdl, int i, int m, int s);

/// Either a plain Birnbaum-Saunders law or a compound one; the plain law is
/// the theta -> 0 limit of every compound family.
using Law = std::variant<BSParams, BspsModel>;

double law_cdf(const Law& law, double x);
double law_log_pdf(const Law& law, double x);
double law_log_survival(const Law& law, double x);
double law_quantile(const Law& law, double u);
double law_sample(const Law& law, Rng& rng);
/// Number of free parameters: 2 for the plain law, 3 otherwise.
int law_parameter_count(const Law& law);
/// "BS", "BSG", "BSP", "BSL" or "BSB<m>".
std::string law_label(const Law& law);
/// (theta, alpha, beta) or (alpha, beta).
std::vector<double> law_parameters(const Law& law);
std::vector<std::string> law_parameter_names(const Law& law);

}  // namespace bsps
