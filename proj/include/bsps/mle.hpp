#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bsps/bsps_model.hpp"
#include "bsps/dataset.hpp"
#include "bsps/power_series.hpp"

namespace bsps {

/// Censored log-likelihood: log density over events plus log survival over
/// censored observations. Throws NonFiniteError naming the offending index.
double log_likelihood(const Law& law, const DataSet& data);

/// Analytic gradient of the log-likelihood in (theta, alpha, beta), or
/// (alpha, beta) for the plain law. Requires uncensored data.
Eigen::VectorXd score(const Law& law, const DataSet& data);

/// Central-difference gradient of the log-likelihood; valid with censoring.
Eigen::VectorXd numeric_gradient(const Law& law, const DataSet& data);

/// score() for uncensored data, numeric_gradient() otherwise.
Eigen::VectorXd gradient(const Law& law, const DataSet& data);

/// Observed information -d^2 l / dTheta dTheta^T by central differences of
/// gradient() with steps max(1e-5 |p_j|, 1e-7), symmetrized.
Eigen::MatrixXd observed_info(const Law& law, const DataSet& data);

/// Observed information from closed-form second derivatives (uncensored data).
/// Kept as an independent check on observed_info().
Eigen::MatrixXd observed_info_closed_form(const Law& law, const DataSet& data);

/// Rebuilds a law of the same kind with new parameters (same order as
/// law_parameters). Throws DomainError for inadmissible values.
Law law_with_parameters(const Law& like, const std::vector<double>& params);

struct FitOptions {
  /// Starting values of theta; empty selects {0.1, 0.5, 0.9} of the unit
  /// interval, or {0.5, 2, 5} for the Poisson family.
  std::vector<double> theta_starts;
  double grad_tol = 1e-6;
  double step_tol = 1e-10;
  int max_iter = 500;
  /// theta is searched in [margin, sup - margin]; estimates within this
  /// distance of an edge raise boundary_flag.
  double boundary_margin = 1e-4;
};

struct FitResult {
  explicit FitResult(Law fitted) : law(std::move(fitted)) {}

  Law law;
  std::vector<double> estimates;
  /// NaN when the information matrix is not positive definite.
  std::vector<double> std_errors;
  double loglik = 0.0;
  double neg2loglik = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  Eigen::MatrixXd info;
  bool converged = false;
  /// Infinity norm of the projected gradient in optimizer coordinates.
  double grad_norm = 0.0;
  bool boundary_flag = false;
  bool singular = false;
  int iterations = 0;
  int starts = 0;
  std::size_t n = 0;
  std::uint64_t data_fingerprint = 0;
  std::string data_name;
  std::vector<std::string> warnings;

  int parameter_count() const { return static_cast<int>(estimates.size()); }
  std::string label() const { return law_label(law); }
};

/// Maximum-likelihood fit. An empty family fits the plain two-parameter law.
FitResult fit(const std::optional<PowerSeriesFamily>& family, const DataSet& data,
              const FitOptions& options = {});

/// Same family as an existing fit, refitted to other data.
FitResult refit(const FitResult& like, const DataSet& data, const FitOptions& options = {});

struct Interval {
  double lower;
  double upper;
};

/// Wald intervals estimate -/+ z_{1-gamma/2} * stderr, one per parameter.
std::vector<Interval> confidence_intervals(const FitResult& fit, double gamma);

struct LrTest {
  double statistic;
  double p_value;
};

/// w = 2 (l_full - l_restricted) referred to chi-square with k degrees of freedom.
LrTest lr_test(const FitResult& full, const FitResult& restricted, int k);

}  // namespace bsps
