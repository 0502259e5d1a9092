#include "bsps/power_series.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "bsps/errors.hpp"

namespace bsps {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_binomial_coefficient(int m, int n) {
  return std::lgamma(m + 1.0) - std::lgamma(n + 1.0) - std::lgamma(m - n + 1.0);
}

}  // namespace

PowerSeriesFamily PowerSeriesFamily::binomial(int trials) {
  if (trials < 1) throw DomainError("binomial family needs m >= 1 trials");
  return PowerSeriesFamily(FamilyKind::Binomial, trials);
}

PowerSeriesFamily PowerSeriesFamily::parse(std::string_view spec) {
  if (spec == "geometric") return geometric();
  if (spec == "poisson") return poisson();
  if (spec == "logarithmic") return logarithmic();
  constexpr std::string_view prefix = "binomial:";
  if (spec.starts_with(prefix)) {
    const std::string_view digits = spec.substr(prefix.size());
    int m = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), m);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && m >= 1) return binomial(m);
  }
  throw DomainError("unknown power series family '" + std::string(spec) +
                    "' (expected geometric|poisson|logarithmic|binomial:<m>)");
}

std::string PowerSeriesFamily::name() const {
  switch (kind_) {
    case FamilyKind::Geometric: return "geometric";
    case FamilyKind::Poisson: return "poisson";
    case FamilyKind::Logarithmic: return "logarithmic";
    case FamilyKind::Binomial: return "binomial:" + std::to_string(trials_);
  }
  return {};
}

std::string PowerSeriesFamily::model_label() const {
  switch (kind_) {
    case FamilyKind::Geometric: return "BSG";
    case FamilyKind::Poisson: return "BSP";
    case FamilyKind::Logarithmic: return "BSL";
    case FamilyKind::Binomial: return "BSB" + std::to_string(trials_);
  }
  return {};
}

ThetaDomain PowerSeriesFamily::domain() const {
  return kind_ == FamilyKind::Poisson ? ThetaDomain{0.0, kInf} : ThetaDomain{0.0, 1.0};
}

void PowerSeriesFamily::require_theta(double theta) const {
  if (!domain().contains(theta)) {
    throw DomainError("theta = " + std::to_string(theta) + " outside the open domain of the " +
                      name() + " family");
  }
}

double PowerSeriesFamily::c(double theta) const {
  require_theta(theta);
  return series(theta);
}

double PowerSeriesFamily::c_prime(double theta) const {
  require_theta(theta);
  return series_prime(theta);
}

double PowerSeriesFamily::c_double_prime(double theta) const {
  require_theta(theta);
  switch (kind_) {
    case FamilyKind::Geometric: return 2.0 / std::pow(1.0 - theta, 3);
    case FamilyKind::Poisson: return std::exp(theta);
    case FamilyKind::Logarithmic: return 1.0 / ((1.0 - theta) * (1.0 - theta));
    case FamilyKind::Binomial:
      return trials_ * (trials_ - 1.0) * std::pow(1.0 + theta, trials_ - 2.0);
  }
  return 0.0;
}

double PowerSeriesFamily::log_c(double theta) const {
  require_theta(theta);
  switch (kind_) {
    case FamilyKind::Geometric: return std::log(theta) - std::log1p(-theta);
    case FamilyKind::Poisson: return theta + std::log(-std::expm1(-theta));
    case FamilyKind::Logarithmic: return std::log(-std::log1p(-theta));
    case FamilyKind::Binomial: return std::log(std::expm1(trials_ * std::log1p(theta)));
  }
  return 0.0;
}

double PowerSeriesFamily::c_inverse(double u) const {
  if (!(u > 0.0) || !std::isfinite(u)) {
    throw DomainError("C^{-1} argument must lie in (0, sup C)");
  }
  switch (kind_) {
    case FamilyKind::Geometric: return u / (1.0 + u);
    case FamilyKind::Poisson: return std::log1p(u);
    case FamilyKind::Logarithmic: return -std::expm1(-u);
    case FamilyKind::Binomial: {
      // (u + 1)^{1/m} - 1
      const double sup = std::exp2(trials_) - 1.0;
      if (u >= sup) throw DomainError("C^{-1} argument exceeds C(1) for the binomial family");
      return std::expm1(std::log1p(u) / trials_);
    }
  }
  return 0.0;
}

double PowerSeriesFamily::coefficient(int n) const {
  if (n < 1) return 0.0;
  switch (kind_) {
    case FamilyKind::Geometric: return 1.0;
    case FamilyKind::Poisson: return std::exp(-std::lgamma(n + 1.0));
    case FamilyKind::Logarithmic: return 1.0 / n;
    case FamilyKind::Binomial:
      return n > trials_ ? 0.0 : std::round(std::exp(log_binomial_coefficient(trials_, n)));
  }
  return 0.0;
}

double PowerSeriesFamily::pmf(double theta, int n) const {
  require_theta(theta);
  if (n < 1) throw DomainError("power series support starts at n = 1");
  if (kind_ == FamilyKind::Binomial && n > trials_) return 0.0;
  double log_a = 0.0;
  switch (kind_) {
    case FamilyKind::Geometric: log_a = 0.0; break;
    case FamilyKind::Poisson: log_a = -std::lgamma(n + 1.0); break;
    case FamilyKind::Logarithmic: log_a = -std::log(static_cast<double>(n)); break;
    case FamilyKind::Binomial: log_a = log_binomial_coefficient(trials_, n); break;
  }
  return std::exp(log_a + n * std::log(theta) - log_c(theta));
}

int PowerSeriesFamily::support_max() const {
  return kind_ == FamilyKind::Binomial ? trials_ : std::numeric_limits<int>::max();
}

int PowerSeriesFamily::sample_count(double theta, Rng& rng) const {
  const double u = uniform_open(rng);
  double p = pmf(theta, 1);
  double cumulative = p;
  int n = 1;
  const int cap = support_max();
  while (cumulative < u && n < cap) {
    // p_{n+1} / p_n = theta * a_{n+1} / a_n
    double ratio = theta;
    switch (kind_) {
      case FamilyKind::Geometric: break;
      case FamilyKind::Poisson: ratio = theta / (n + 1.0); break;
      case FamilyKind::Logarithmic: ratio = theta * n / (n + 1.0); break;
      case FamilyKind::Binomial: ratio = theta * (trials_ - n) / (n + 1.0); break;
    }
    p *= ratio;
    ++n;
    cumulative += p;
    // Rounding can leave the running sum a few ulps short of 1.
    if (p < cumulative * std::numeric_limits<double>::epsilon()) break;
  }
  return n;
}

double PowerSeriesFamily::series(double w) const {
  switch (kind_) {
    case FamilyKind::Geometric: return w / (1.0 - w);
    case FamilyKind::Poisson: return std::expm1(w);
    case FamilyKind::Logarithmic: return -std::log1p(-w);
    case FamilyKind::Binomial: return std::expm1(trials_ * std::log1p(w));
  }
  return 0.0;
}

double PowerSeriesFamily::series_prime(double w) const {
  switch (kind_) {
    case FamilyKind::Geometric: return 1.0 / ((1.0 - w) * (1.0 - w));
    case FamilyKind::Poisson: return std::exp(w);
    case FamilyKind::Logarithmic: return 1.0 / (1.0 - w);
    case FamilyKind::Binomial: return trials_ * std::pow(1.0 + w, trials_ - 1.0);
  }
  return 0.0;
}

double PowerSeriesFamily::series_ratio(double w) const {
  if (w == 0.0) return coefficient(1);
  switch (kind_) {
    case FamilyKind::Geometric: return 1.0 / (1.0 - w);
    case FamilyKind::Poisson: return std::expm1(w) / w;
    case FamilyKind::Logarithmic: return -std::log1p(-w) / w;
    case FamilyKind::Binomial: return std::expm1(trials_ * std::log1p(w)) / w;
  }
  return 0.0;
}

double PowerSeriesFamily::log_series_prime(double w) const {
  switch (kind_) {
    case FamilyKind::Geometric: return -2.0 * std::log1p(-w);
    case FamilyKind::Poisson: return w;
    case FamilyKind::Logarithmic: return -std::log1p(-w);
    case FamilyKind::Binomial: return std::log(static_cast<double>(trials_)) + (trials_ - 1.0) * std::log1p(w);
  }
  return 0.0;
}

double PowerSeriesFamily::log_prime_d1(double w) const {
  switch (kind_) {
    case FamilyKind::Geometric: return 2.0 / (1.0 - w);
    case FamilyKind::Poisson: return 1.0;
    case FamilyKind::Logarithmic: return 1.0 / (1.0 - w);
    case FamilyKind::Binomial: return (trials_ - 1.0) / (1.0 + w);
  }
  return 0.0;
}

double PowerSeriesFamily::log_prime_d2(double w) const {
  switch (kind_) {
    case FamilyKind::Geometric: return 2.0 / ((1.0 - w) * (1.0 - w));
    case FamilyKind::Poisson: return 0.0;
    case FamilyKind::Logarithmic: return 1.0 / ((1.0 - w) * (1.0 - w));
    case FamilyKind::Binomial: return -(trials_ - 1.0) / ((1.0 + w) * (1.0 + w));
  }
  return 0.0;
}

}  // namespace bsps
