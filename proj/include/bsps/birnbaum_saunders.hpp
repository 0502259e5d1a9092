#pragma once

#include "bsps/random.hpp"

namespace bsps {

/// Shape alpha and scale beta of the two-parameter Birnbaum-Saunders law.
/// beta is the median.
class BSParams {
 public:
  BSParams(double alpha, double beta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  friend bool operator==(const BSParams&, const BSParams&) = default;

 private:
  double alpha_;
  double beta_;
};

/// Standardized argument v = (sqrt(t/beta) - sqrt(beta/t)) / alpha, so that
/// F(t) = Phi(v).
double bs_upsilon(const BSParams& p, double t);

/// The map z -> beta {a + sqrt(a^2 + 1)}^2 with a = alpha z / 2, i.e. the
/// inverse of bs_upsilon.
double bs_from_normal(const BSParams& p, double z);

double bs_cdf(const BSParams& p, double t);
/// 1 - F(t) computed as Phi(-v).
double bs_sf(const BSParams& p, double t);
double bs_log_sf(const BSParams& p, double t);
double bs_pdf(const BSParams& p, double t);
double bs_log_pdf(const BSParams& p, double t);
double bs_hazard(const BSParams& p, double t);
double bs_quantile(const BSParams& p, double u);
double bs_sample(const BSParams& p, Rng& rng);

double bs_mean(const BSParams& p);
double bs_variance(const BSParams& p);

/// Probability weighted moment tau_{p,r} = E[T^p Phi(v)^r].
double bs_pwm(const BSParams& p, int order_p, int order_r);

/// E[T^p (1 - Phi(v))^r], the complementary weighted moment.
double bs_survival_pwm(const BSParams& p, int order_p, int order_r);

}  // namespace bsps
