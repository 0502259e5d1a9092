#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "bsps/bsps_model.hpp"
#include "bsps/dataset.hpp"
#include "bsps/errors.hpp"
#include "bsps/gof.hpp"
#include "bsps/mle.hpp"
#include "bsps/report.hpp"

namespace bsps::cli {

namespace {

using nlohmann::json;

constexpr double kGamma = 0.05;

std::optional<PowerSeriesFamily> family_of(const std::string& spec) {
  if (spec == "bs") return std::nullopt;
  return PowerSeriesFamily::parse(spec);
}

const std::string& single_family(const RunConfig& config) {
  if (config.families.size() != 1) {
    throw DomainError("exactly one --family is required for this command");
  }
  return config.families.front();
}

DataSet load(const RunConfig& config) {
  if (config.data_path.empty()) throw DomainError("--data is required");
  return read_dataset(config.data_path);
}

// Law from --theta/--alpha/--beta, or fitted to --data when those are absent.
Law law_from(const RunConfig& config) {
  const auto family = family_of(single_family(config));
  if (!config.alpha && !config.beta && !config.theta && !config.data_path.empty()) {
    return fit(family, load(config)).law;
  }
  if (!config.alpha || !config.beta) throw DomainError("--alpha and --beta are required");
  const BSParams bs(*config.alpha, *config.beta);
  if (!family) return bs;
  if (!config.theta) throw DomainError("--theta is required for a compound family");
  return BspsModel(*family, *config.theta, bs);
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

std::string structured(const json& doc) { return doc.dump(2) + "\n"; }

void write_fit_text(std::ostream& os, const FitResult& f, const std::vector<Interval>* cis) {
  os << "model " << f.label() << "  data " << f.data_name << "  n " << f.n << "\n";
  os << std::left << std::setw(10) << "parameter" << std::setw(14) << "estimate" << std::setw(14)
     << "std_error";
  if (cis) os << std::setw(14) << "ci95_lower" << "ci95_upper";
  os << "\n";
  const auto names = law_parameter_names(f.law);
  for (std::size_t i = 0; i < names.size(); ++i) {
    os << std::setw(10) << names[i] << std::setw(14) << num(f.estimates[i]) << std::setw(14)
       << num(f.std_errors[i]);
    if (cis) os << std::setw(14) << num((*cis)[i].lower) << num((*cis)[i].upper);
    os << "\n";
  }
  os << "loglik " << num(f.loglik) << "\n";
  os << "-2loglik " << num(f.neg2loglik) << "\n";
  os << "AIC " << num(f.aic) << "\n";
  os << "BIC " << num(f.bic) << "\n";
  os << "converged " << (f.converged ? "yes" : "no") << "  grad_norm " << num(f.grad_norm)
     << "  boundary " << (f.boundary_flag ? "yes" : "no") << "\n";
  for (const auto& w : f.warnings) os << "warning: " << w << "\n";
}

std::string run_fit(const RunConfig& config) {
  const DataSet data = load(config);
  const FitResult f = fit(family_of(single_family(config)), data);
  std::vector<Interval> cis;
  if (!f.singular) cis = confidence_intervals(f, kGamma);
  if (config.format == Format::Structured) {
    json doc = {{"command", "fit"}, {"fit", f}};
    doc["confidence_intervals"] = f.singular ? json(nullptr) : intervals_to_json(f, cis, kGamma);
    return structured(doc);
  }
  std::ostringstream os;
  write_fit_text(os, f, f.singular ? nullptr : &cis);
  return os.str();
}

std::string run_gof(const RunConfig& config) {
  const DataSet data = load(config);
  const FitResult f = fit(family_of(single_family(config)), data);
  const GofReport g = goodness_of_fit(f, data, config.n_boot, config.seed);
  if (config.format == Format::Structured) {
    return structured({{"command", "gof"}, {"seed", config.seed}, {"fit", f}, {"gof", g}});
  }
  std::ostringstream os;
  write_fit_text(os, f, nullptr);
  os << "K-S " << num(g.ks) << "\n";
  os << "C-M " << num(g.cvm) << " (p = " << num(g.p_cvm) << ")\n";
  os << "A-D " << num(g.ad) << " (p = " << num(g.p_ad) << ")\n";
  os << "p-values: parametric bootstrap, n_boot " << g.n_boot << ", dropped " << g.dropped
     << ", seed " << config.seed << "\n";
  return os.str();
}

std::string run_compare(const RunConfig& config) {
  const DataSet data = load(config);
  if (config.families.empty()) throw DomainError("--families is required");
  std::vector<FitResult> fits;
  for (const auto& spec : config.families) {
    if (spec == "bs") continue;
    fits.push_back(fit(family_of(spec), data));
  }
  fits.push_back(fit(std::nullopt, data));
  const FitResult& base = fits.back();
  const std::vector<RankingRow> ranking = compare(fits);

  if (config.format == Format::Structured) {
    json models = json::array();
    for (const auto& f : fits) {
      json m = {{"fit", f}, {"ks", ks_statistic(f.law, data)}};
      if (&f != &base) m["lr_vs_bs"] = lr_test(f, base, 1);
      models.push_back(m);
    }
    return structured({{"command", "compare"}, {"data", data.name()}, {"models", models},
                       {"ranking", ranking}});
  }
  std::ostringstream os;
  os << "data " << data.name() << "  n " << data.size() << "\n";
  os << std::left << std::setw(8) << "model" << std::setw(12) << "theta" << std::setw(12)
     << "alpha" << std::setw(12) << "beta" << std::setw(10) << "K-S" << std::setw(11)
     << "-2loglik" << std::setw(11) << "AIC" << std::setw(11) << "BIC" << "best\n";
  for (const auto& row : ranking) {
    const auto it = std::find_if(fits.begin(), fits.end(),
                                 [&](const FitResult& f) { return f.label() == row.model; });
    const FitResult& f = *it;
    const bool compound = f.parameter_count() == 3;
    os << std::setw(8) << row.model << std::setw(12) << (compound ? num(f.estimates[0]) : "-")
       << std::setw(12) << num(f.estimates[compound ? 1 : 0]) << std::setw(12)
       << num(f.estimates[compound ? 2 : 1]) << std::setw(10) << num(ks_statistic(f.law, data))
       << std::setw(11) << num(row.neg2loglik) << std::setw(11) << num(row.aic) << std::setw(11)
       << num(row.bic);
    std::string flags;
    if (row.best_aic) flags += "AIC";
    if (row.best_bic) flags += flags.empty() ? "BIC" : ",BIC";
    os << flags << "\n";
  }
  for (const auto& f : fits) {
    if (&f == &base) continue;
    const LrTest lr = lr_test(f, base, 1);
    os << "LR " << f.label() << " vs BS: w = " << num(lr.statistic) << ", p = " << num(lr.p_value)
       << "\n";
  }
  return os.str();
}

std::string run_sample(const RunConfig& config) {
  if (config.n < 0) throw DomainError("--n must be nonnegative");
  const Law law = law_from(config);
  Rng rng = make_stream(config.seed, 0);
  std::vector<double> draws(static_cast<std::size_t>(config.n));
  for (double& x : draws) x = law_sample(law, rng);
  if (config.format == Format::Structured) {
    return structured({{"command", "sample"}, {"model", law_label(law)},
                       {"parameters", law_parameters(law)}, {"seed", config.seed},
                       {"draws", draws}});
  }
  std::ostringstream os;
  for (double x : draws) os << num(x) << "\n";
  return os.str();
}

std::string run_curve(const RunConfig& config) {
  if (config.n < 1) throw DomainError("--n must be at least 1 for a curve");
  const Law law = law_from(config);
  std::vector<double> xs, pdfs, cdfs, hazards;
  for (int k = 1; k <= config.n; ++k) {
    const double x = law_quantile(law, k / (config.n + 1.0));
    const double log_f = law_log_pdf(law, x);
    xs.push_back(x);
    pdfs.push_back(std::exp(log_f));
    cdfs.push_back(law_cdf(law, x));
    hazards.push_back(std::exp(log_f - law_log_survival(law, x)));
  }
  if (config.format == Format::Structured) {
    return structured({{"command", "curve"},
                       {"model", law_label(law)},
                       {"parameters", law_parameters(law)},
                       {"x", xs},
                       {"pdf", pdfs},
                       {"cdf", cdfs},
                       {"hazard", hazards}});
  }
  std::ostringstream os;
  os << "x pdf cdf hazard\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    os << num(xs[i]) << " " << num(pdfs[i]) << " " << num(cdfs[i]) << " " << num(hazards[i])
       << "\n";
  }
  return os.str();
}

}  // namespace

std::string run(const RunConfig& config) {
  switch (config.command) {
    case Command::Fit: return run_fit(config);
    case Command::Sample: return run_sample(config);
    case Command::Gof: return run_gof(config);
    case Command::Compare: return run_compare(config);
    case Command::Curve: return run_curve(config);
  }
  return {};
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::string report;
  try {
    report = run(config);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  if (config.out_path.empty()) {
    out << report;
    return 0;
  }
  std::ofstream file(config.out_path);
  if (!file) {
    err << "error: cannot write " << config.out_path << "\n";
    return 1;
  }
  file << report;
  return file.good() ? 0 : 1;
}

}  // namespace bsps::cli
