#pragma once

#include <string>
#include <string_view>

#include "bsps/random.hpp"

namespace bsps {

enum class FamilyKind { Geometric, Poisson, Logarithmic, Binomial };

/// Open interval of admissible series parameters.
struct ThetaDomain {
  double lower;
  double upper;  // +inf for Poisson
  bool contains(double theta) const { return theta > lower && theta < upper; }
};

/// Zero-truncated power series law P(N = n) = a_n theta^n / C(theta), n >= 1.
///
/// The checked members (c, c_prime, ...) take the model parameter theta and
/// reject values outside the open domain. The `series_*` members evaluate the
/// same functions at an arbitrary argument w in [0, theta], which is what the
/// compound distribution needs for w = theta * (1 - Phi(v)).
class PowerSeriesFamily {
 public:
  static PowerSeriesFamily geometric() { return PowerSeriesFamily(FamilyKind::Geometric, 0); }
  static PowerSeriesFamily poisson() { return PowerSeriesFamily(FamilyKind::Poisson, 0); }
  static PowerSeriesFamily logarithmic() { return PowerSeriesFamily(FamilyKind::Logarithmic, 0); }
  static PowerSeriesFamily binomial(int trials);

  /// Parses "geometric", "poisson", "logarithmic" or "binomial:<m>".
  static PowerSeriesFamily parse(std::string_view spec);

  FamilyKind kind() const { return kind_; }
  /// Number of trials m; zero unless the family is binomial.
  int trials() const { return trials_; }
  /// Spelling accepted by parse().
  std::string name() const;
  /// Short label of the compound model, e.g. "BSG".
  std::string model_label() const;
  ThetaDomain domain() const;

  double c(double theta) const;
  double c_prime(double theta) const;
  double c_double_prime(double theta) const;
  double log_c(double theta) const;
  /// theta such that C(theta) = u.
  double c_inverse(double u) const;

  /// Series coefficient a_n (zero past m for the binomial).
  double coefficient(int n) const;
  double pmf(double theta, int n) const;
  /// Largest n with positive mass, or a very large number for infinite support.
  int support_max() const;

  /// Draw of N by sequential inversion of the cumulative pmf.
  int sample_count(double theta, Rng& rng) const;

  // Unchecked evaluation for w in [0, sup domain).
  double series(double w) const;
  double series_prime(double w) const;
  /// C(w) / w, continuous at w = 0 where it equals a_1.
  double series_ratio(double w) const;
  /// d/dw log C'(w) and its derivative.
  double log_prime_d1(double w) const;
  double log_prime_d2(double w) const;
  double log_series_prime(double w) const;

  friend bool operator==(const PowerSeriesFamily&, const PowerSeriesFamily&) = default;

 private:
  PowerSeriesFamily(FamilyKind kind, int trials) : kind_(kind), trials_(trials) {}
  void require_theta(double theta) const;

  FamilyKind kind_;
  int trials_;
};

}  // namespace bsps
