#include "bsps/report.hpp"

namespace bsps {

void to_json(nlohmann::json& j, const FitResult& fit) {
  const auto names = law_parameter_names(fit.law);
  nlohmann::json estimates = nlohmann::json::object();
  nlohmann::json errors = nlohmann::json::object();
  for (std::size_t i = 0; i < names.size(); ++i) {
    estimates[names[i]] = fit.estimates[i];
    errors[names[i]] = fit.std_errors[i];
  }
  nlohmann::json info = nlohmann::json::array();
  for (Eigen::Index r = 0; r < fit.info.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < fit.info.cols(); ++c) row.push_back(fit.info(r, c));
    info.push_back(row);
  }
  j = nlohmann::json{{"model", fit.label()},
                     {"data", fit.data_name},
                     {"n", fit.n},
                     {"parameters", names},
                     {"estimates", estimates},
                     {"std_errors", errors},
                     {"loglik", fit.loglik},
                     {"neg2loglik", fit.neg2loglik},
                     {"aic", fit.aic},
                     {"bic", fit.bic},
                     {"observed_information", info},
                     {"converged", fit.converged},
                     {"grad_norm", fit.grad_norm},
                     {"boundary_flag", fit.boundary_flag},
                     {"singular", fit.singular},
                     {"iterations", fit.iterations},
                     {"starts", fit.starts},
                     {"warnings", fit.warnings}};
  if (const auto* m = std::get_if<BspsModel>(&fit.law)) j["family"] = m->family().name();
}

void to_json(nlohmann::json& j, const GofReport& report) {
  j = nlohmann::json{{"model", report.model},
                     {"ks", report.ks},
                     {"cvm", report.cvm},
                     {"ad", report.ad},
                     {"p_cvm", report.p_cvm},
                     {"p_ad", report.p_ad},
                     {"p_method", "bootstrap"},
                     {"n_boot", report.n_boot},
                     {"dropped", report.dropped},
                     {"clipped", report.clipped}};
}

void to_json(nlohmann::json& j, const RankingRow& row) {
  j = nlohmann::json{{"model", row.model},         {"parameters", row.parameters},
                     {"neg2loglik", row.neg2loglik}, {"aic", row.aic},
                     {"bic", row.bic},               {"best_aic", row.best_aic},
                     {"best_bic", row.best_bic}};
}

void to_json(nlohmann::json& j, const LrTest& test) {
  j = nlohmann::json{{"statistic", test.statistic}, {"p_value", test.p_value}};
}

nlohmann::json intervals_to_json(const FitResult& fit, std::span<const Interval> intervals,
                                 double gamma) {
  const auto names = law_parameter_names(fit.law);
  nlohmann::json j = nlohmann::json::object();
  j["level"] = 1.0 - gamma;
  for (std::size_t i = 0; i < intervals.size() && i < names.size(); ++i) {
    j[names[i]] = {intervals[i].lower, intervals[i].upper};
  }
  return j;
}

}  // namespace bsps
