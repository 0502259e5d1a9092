// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bsps/dataset.hpp"
#include "bsps/gof.hpp"
#include "bsps/mle.hpp"
#include "bsps/normal.hpp"
#include "bsps/quadrature.hpp"

using namespace bsps;

namespace {

const std::string kData = BSPS_DATA_DIR;
const auto kGeo = PowerSeriesFamily::geometric();
const auto kPois = PowerSeriesFamily::poisson();
const auto kLog = PowerSeriesFamily::logarithmic();

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [miss] " << what << ";";
    }
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Reported row: estimates and standard errors in (theta, alpha, beta) order
// (theta omitted for the plain law), then KS, -2l, AIC, BIC.
struct Row {
  std::optional<PowerSeriesFamily> family;
  std::vector<double> est;
  std::vector<double> se;
  double ks, neg2l, aic, bic;
};

void check_rows(Outcome& out, const DataSet& data, const std::vector<Row>& rows) {
  for (const Row& row : rows) {
    const FitResult f = fit(row.family, data);
    const std::string tag = f.label() + " ";
    const auto names = law_parameter_names(f.law);
    for (std::size_t j = 0; j < row.est.size(); ++j) {
      const double tol = std::max(0.02 * std::abs(row.est[j]), row.se[j]);
      out.require(std::abs(f.estimates[j] - row.est[j]) <= tol,
                  tag + names[j] + " " + fmt(f.estimates[j]) + " vs " + fmt(row.est[j]));
    }
    const double ks = ks_statistic(f.law, data);
    out.require(std::abs(ks - row.ks) <= 0.005, tag + "KS " + fmt(ks) + " vs " + fmt(row.ks));
    out.require(std::abs(f.neg2loglik - row.neg2l) <= 0.2,
                tag + "-2l " + fmt(f.neg2loglik) + " vs " + fmt(row.neg2l));
    out.require(std::abs(f.aic - row.aic) <= 0.3, tag + "AIC " + fmt(f.aic));
    out.require(std::abs(f.bic - row.bic) <= 0.3, tag + "BIC " + fmt(f.bic));
  }
}

Outcome failure_times_table() {
  Outcome out;
  const DataSet data = read_dataset(kData + "/failure_times.csv");
  check_rows(out, data,
             {{kGeo, {0.9950, 0.6461, 0.4521}, {0.0184, 0.6194, 0.8247}, 0.1314, -77.6, -71.6, -68.6},
              {kPois, {5.1057, 0.4774, 0.1735}, {2.0932, 0.0877, 0.0304}, 0.1224, -73.2, -67.2, -64.3},
              {kLog, {0.9999, 0.3549, 0.2437}, {0.0001, 0.0570, 0.0419}, 0.2055, -74.0, -68.0, -65.0},
              {std::nullopt, {0.4466, 0.1107}, {0.0706, 0.0108}, 0.2029, -65.5, -61.5, -59.5}});
  out.detail << " 4 models checked";
  return out;
}

Outcome bearing_table() {
  Outcome out;
  const DataSet data = read_dataset(kData + "/bearing_fatigue.csv");
  check_rows(out, data,
             {{kGeo, {0.9672, 0.3087, 350.98}, {0.0861, 0.1285, 182.50}, 0.1681, 106.9, 112.9, 113.8},
              {kPois, {3.1140, 0.2917, 259.20}, {2.4589, 0.0772, 44.4148}, 0.1633, 108.3, 114.3, 115.2},
              {std::nullopt, {0.2825, 212.05}, {0.0632, 18.7530}, 0.1707, 109.9, 113.9, 114.5}});
  const FitResult bs = fit(std::nullopt, data);
  out.require(std::abs(bs.std_errors[0] / 0.0632 - 1.0) <= 0.05, "se(alpha) " + fmt(bs.std_errors[0]));
  out.require(std::abs(bs.std_errors[1] / 18.7530 - 1.0) <= 0.05, "se(beta) " + fmt(bs.std_errors[1]));
  out.detail << " se(alpha)=" << fmt(bs.std_errors[0]) << " se(beta)=" << fmt(bs.std_errors[1]);
  return out;
}

Outcome gof_tables() {
  Outcome out;
  struct GofRow {
    const char* file;
    std::optional<PowerSeriesFamily> family;
    double cvm, p_cvm, ad, p_ad, tol;
  };
  const std::vector<GofRow> rows = {
      {"failure_times", kGeo, 0.0469, 0.5563, 0.3116, 0.5517, 0.01},
      {"failure_times", kPois, 0.0877, 0.1650, 0.6629, 0.0835, 0.02},
      {"failure_times", kLog, 0.0784, 0.2173, 0.6064, 0.1151, 0.02},
      {"failure_times", std::nullopt, 0.1967, 0.0059, 1.3748, 0.0015, 0.02},
      {"bearing_fatigue", kGeo, 0.0370, 0.7373, 0.2761, 0.6575, 0.01},
      {"bearing_fatigue", kPois, 0.0573, 0.4108, 0.4243, 0.3178, 0.02},
      {"bearing_fatigue", std::nullopt, 0.0862, 0.1725, 0.6148, 0.1098, 0.02}};
  double worst_p = 0.0;
  for (const auto& row : rows) {
    const DataSet data = read_dataset(kData + "/" + row.file + ".csv");
    const FitResult f = fit(row.family, data);
    const GofReport g = goodness_of_fit(f, data, 1000, kDefaultSeed);
    const std::string tag = std::string(row.file) + " " + f.label() + " ";
    out.require(std::abs(g.cvm - row.cvm) <= row.tol, tag + "C-M " + fmt(g.cvm));
    out.require(std::abs(g.ad - row.ad) <= row.tol, tag + "A-D " + fmt(g.ad));
    out.require(std::abs(g.p_cvm - row.p_cvm) <= 0.1, tag + "p(C-M) " + fmt(g.p_cvm));
    out.require(std::abs(g.p_ad - row.p_ad) <= 0.1, tag + "p(A-D) " + fmt(g.p_ad));
    worst_p = std::max({worst_p, std::abs(g.p_cvm - row.p_cvm), std::abs(g.p_ad - row.p_ad)});
  }
  out.detail << " 7 models, n_boot=1000, largest p-value gap " << fmt(worst_p);
  return out;
}

Outcome theta_limit() {
  Outcome out;
  const BSParams bs(0.5, 1.0);
  for (const auto& fam : {kGeo, kPois, kLog, PowerSeriesFamily::binomial(3)}) {
    double prev = INFINITY;
    for (double th : {0.5, 0.1, 0.01, 0.001}) {
      const BspsModel m(fam, th, bs);
      double sup = 0.0;
      for (int k = 1; k <= 100; ++k) {
        const double x = bs_quantile(bs, k / 101.0);
        sup = std::max(sup, std::abs(cdf(m, x) - bs_cdf(bs, x)));
      }
      out.require(sup < prev, fam.name() + " not decreasing at theta=" + fmt(th));
      prev = sup;
    }
    out.require(prev < 1e-3, fam.name() + " sup at 0.001 = " + fmt(prev));
    out.detail << " " << fam.model_label() << ":" << fmt(prev);
  }
  return out;
}

Outcome score_check() {
  Outcome out;
  const DataSet failure = read_dataset(kData + "/failure_times.csv");
  const DataSet bearing = read_dataset(kData + "/bearing_fatigue.csv");
  Rng sim_rng = make_stream(kDefaultSeed, 900);
  std::vector<double> sim(60);
  for (double& x : sim) x = bs_sample(BSParams(0.8, 5.0), sim_rng);
  const DataSet simulated(sim, "simulated");
  const std::vector<std::pair<const DataSet*, double>> sets = {
      {&failure, 0.1}, {&bearing, 200.0}, {&simulated, 5.0}};
  const std::vector<PowerSeriesFamily> fams = {kGeo, kPois, kLog, PowerSeriesFamily::binomial(4)};

  std::mt19937_64 rng(kDefaultSeed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 30; ++t) {
    const auto& fam = fams[t % fams.size()];
    const auto& [data, scale] = sets[(t / fams.size()) % sets.size()];
    const double th = fam.kind() == FamilyKind::Poisson ? 0.1 + 8 * unit(rng) : 0.02 + 0.96 * unit(rng);
    const BspsModel m(fam, th, BSParams(0.15 + 1.5 * unit(rng), scale * (0.3 + 2 * unit(rng))));
    const Eigen::VectorXd s = score(m, *data);
    const std::vector<double> p = law_parameters(m);
    Eigen::VectorXd fd(3);
    for (int j = 0; j < 3; ++j) {
      const double h = 1e-5 * p[j];
      auto up = p, dn = p;
      up[j] += h;
      dn[j] -= h;
      fd[j] = (log_likelihood(law_with_parameters(m, up), *data) -
               log_likelihood(law_with_parameters(m, dn), *data)) /
              (2 * h);
    }
    const double rel = (s - fd).lpNorm<Eigen::Infinity>() / std::max(1.0, fd.lpNorm<Eigen::Infinity>());
    worst = std::max(worst, rel);
  }
  out.require(worst <= 1e-5, "max relative discrepancy " + fmt(worst));
  out.detail << " 30 triples, max relative discrepancy " << fmt(worst);
  return out;
}

Outcome sampling_routes() {
  Outcome out;
  const std::vector<BspsModel> models = {BspsModel(kGeo, 0.7, BSParams(0.5, 1.0)),
                                         BspsModel(kPois, 2.0, BSParams(1.0, 1.0)),
                                         BspsModel(kLog, 0.6, BSParams(0.8, 2.0))};
  std::uint64_t stream = 100;
  for (const auto& m : models) {
    Rng ra = make_stream(kDefaultSeed, stream++);
    Rng rb = make_stream(kDefaultSeed, stream++);
    std::vector<double> a(100000), b(100000);
    for (double& x : a) x = sample_inverse(m, ra);
    for (double& x : b) x = sample_compound(m, rb);
    const KsTest t = ks_two_sample(a, b);
    out.require(t.p_value > 0.001, law_label(m) + " p=" + fmt(t.p_value));
    out.detail << " " << law_label(m) << " p=" << fmt(t.p_value);
  }
  return out;
}

double integrate_positive(const std::function<double(double)>& f, double beta) {
  auto g = [&](double y) {
    const double x = beta * std::exp(y);
    return f(x) * x;
  };
  return quadrature::integrate(g, {-60.0, -3.0, -1.0, 0.0, 1.0, 3.0, 60.0}, 1e-12);
}

Outcome normalization() {
  Outcome out;
  const std::vector<Law> laws = {BspsModel(kGeo, 0.5, BSParams(1.0, 1.0)),
                                 BspsModel(kPois, 3.0, BSParams(0.5, 2.0)),
                                 BspsModel(kLog, 0.9, BSParams(0.3, 10.0)),
                                 BspsModel(PowerSeriesFamily::binomial(3), 0.4, BSParams(1.5, 0.2)),
                                 BSParams(0.8, 1.0)};
  double worst_mass = 0.0, worst_round = 0.0, worst_order = 0.0;
  for (const auto& law : laws) {
    const double beta = law_parameters(law).back();
    const double mass = integrate_positive([&](double x) { return std::exp(law_log_pdf(law, x)); }, beta);
    worst_mass = std::max(worst_mass, std::abs(mass - 1.0));
    for (int k = 1; k <= 999; ++k) {
      const double u = k / 1000.0;
      worst_round = std::max(worst_round, std::abs(law_cdf(law, law_quantile(law, u)) - u));
    }
  }
  const BspsModel g(kGeo, 0.5, BSParams(1.0, 1.0));
  for (auto [i, m] : {std::pair{1, 5}, {3, 5}, {5, 5}}) {
    const double mass = integrate_positive([&](double x) { return order_stat_pdf(g, i, m, x); }, 1.0);
    worst_order = std::max(worst_order, std::abs(mass - 1.0));
  }
  out.require(worst_mass <= 1e-8, "density mass error " + fmt(worst_mass));
  out.require(worst_round <= 1e-10, "quantile roundtrip error " + fmt(worst_round));
  out.require(worst_order <= 1e-7, "order statistic mass error " + fmt(worst_order));
  out.detail << " mass " << fmt(worst_mass) << ", roundtrip " << fmt(worst_round) << ", order "
             << fmt(worst_order);
  return out;
}

Outcome hazard_shape() {
  Outcome out;
  const double alpha = 0.5, beta = 2.0;
  for (double th : {0.2, 0.5, 0.9}) {
    const BspsModel g(kGeo, th, BSParams(alpha, beta));
    double prev = INFINITY;
    for (double x = 0.01 * beta; x < 1e4 * beta; x *= 1.2) {
      const double r = hazard(g, x) / bs_hazard(g.bs(), x);
      out.require(r <= prev * (1 + 1e-12), "ratio increases at x=" + fmt(x));
      prev = r;
    }
    const double lim = 1.0 / (2 * alpha * alpha * beta);
    const double h = hazard(g, 1e6 * beta);
    out.require(std::abs(h / lim - 1.0) <= 0.01, "limit " + fmt(h) + " vs " + fmt(lim));
  }
  const double hp = hazard(BspsModel(kPois, 2.0, BSParams(alpha, 1.0)), 1e-8);
  const double hl = hazard(BspsModel(kLog, 0.6, BSParams(alpha, 1.0)), 1e-8);
  out.require(hp < 1e-6, "BSP h(1e-8)=" + fmt(hp));
  out.require(hl < 1e-6, "BSL h(1e-8)=" + fmt(hl));
  out.detail << " BSP h(1e-8)=" << fmt(hp) << " BSL h(1e-8)=" << fmt(hl);
  return out;
}

Outcome recovery() {
  Outcome out;
  const std::vector<double> truth = {0.7, 0.5, 2.0};
  const BspsModel model(kGeo, truth[0], BSParams(truth[1], truth[2]));
  std::vector<int> covered(3, 0);
  int within_three = 0;
  const int reps = 100;
  for (int r = 0; r < reps; ++r) {
    Rng rng = make_stream(kDefaultSeed, 1000 + r);
    std::vector<double> xs(5000);
    for (double& x : xs) x = sample_inverse(model, rng);
    const FitResult f = fit(kGeo, DataSet(xs, "simulated"));
    const auto ci = confidence_intervals(f, 0.05);
    bool all3 = true;
    for (int j = 0; j < 3; ++j) {
      covered[j] += ci[j].lower <= truth[j] && truth[j] <= ci[j].upper;
      all3 = all3 && std::abs(f.estimates[j] - truth[j]) < 3 * f.std_errors[j];
    }
    if (r == 0) out.require(all3, "first replicate outside 3 standard errors");
    within_three += all3;
  }
  for (int j = 0; j < 3; ++j) {
    out.require(covered[j] >= 89, "coverage " + std::to_string(covered[j]) + "/100");
  }
  out.detail << " coverage theta/alpha/beta " << covered[0] << "/" << covered[1] << "/"
             << covered[2] << " of 100, within 3 se " << within_three << "/100";
  return out;
}

Outcome calibration() {
  Outcome out;
  const DataSet data = read_dataset(kData + "/failure_times.csv");
  const FitResult base = fit(kGeo, data);
  std::vector<double> p_cvm, p_ad;
  for (int r = 0; r < 50; ++r) {
    Rng rng = make_stream(kDefaultSeed, 5000 + r);
    std::vector<double> xs(data.size());
    for (double& x : xs) x = law_sample(base.law, rng);
    const DataSet sim(xs, "null");
    const FitResult f = fit(kGeo, sim);
    const GofReport g = goodness_of_fit(f, sim, 200, kDefaultSeed + r);
    p_cvm.push_back(g.p_cvm);
    p_ad.push_back(g.p_ad);
  }
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
  };
  const double mc = median(p_cvm), ma = median(p_ad);
  out.require(mc >= 0.3 && mc <= 0.7, "median p(C-M) " + fmt(mc));
  out.require(ma >= 0.3 && ma <= 0.7, "median p(A-D) " + fmt(ma));
  out.detail << " median p(C-M)=" << fmt(mc) << " p(A-D)=" << fmt(ma) << " over 50 replicates";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"failure-times fits: estimates, KS, -2l, AIC, BIC", failure_times_table},
      {"bearing fits: estimates, KS, -2l, AIC, BIC, BS standard errors", bearing_table},
      {"C-M and A-D statistics with bootstrap p-values", gof_tables},
      {"cdf converges to the base law as theta -> 0", theta_limit},
      {"analytic score vs central differences", score_check},
      {"inverse-cdf and minimum-construction sampling agree", sampling_routes},
      {"normalization and quantile roundtrips", normalization},
      {"hazard structure", hazard_shape},
      {"parameter recovery and interval coverage", recovery},
      {"bootstrap p-value calibration under the null", calibration}};

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("%s %2zu  %s:%s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
