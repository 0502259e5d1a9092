#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bsps/dataset.hpp"
#include "bsps/errors.hpp"
#include "cli.hpp"

using namespace bsps;
using doctest::Approx;

namespace {

const std::string kData = BSPS_DATA_DIR;

cli::RunConfig config(cli::Command cmd, std::vector<std::string> families, std::string data = "") {
  cli::RunConfig c;
  c.command = cmd;
  c.families = std::move(families);
  c.data_path = std::move(data);
  return c;
}

}  // namespace

TEST_CASE("bundled datasets") {
  const DataSet f = read_dataset(kData + "/failure_times.csv");
  REQUIRE(f.size() == 20);
  CHECK(f.values().front() == 0.067);
  CHECK(f.values()[1] == 0.068);
  CHECK(f.values().back() == 0.485);
  CHECK(f.name() == "failure_times");
  CHECK_FALSE(f.has_censoring());

  const DataSet b = read_dataset(kData + "/bearing_fatigue.csv");
  REQUIRE(b.size() == 10);
  CHECK(b.values().front() == 152.7);
  CHECK(b.values().back() == 422.6);
}

TEST_CASE("record parsing") {
  std::istringstream in("# header\n\n1.5,0\n2.25\n  3 , 1 \n");
  const DataSet d = parse_dataset(in, "x");
  REQUIRE(d.size() == 3);
  CHECK(d.values()[0] == 1.5);
  CHECK_FALSE(d.events()[0]);
  CHECK(d.events()[1]);
  CHECK(d.events()[2]);
  CHECK(d.event_count() == 2);

  std::istringstream bad("1.0\nabc\n");
  try {
    parse_dataset(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream bad_flag("1.0,2\n");
  CHECK_THROWS_AS(parse_dataset(bad_flag), ParseError);
  std::istringstream neg("1.0\n-2\n");
  CHECK_THROWS_AS(parse_dataset(neg), DomainError);
  std::istringstream zero("0\n");
  CHECK_THROWS_AS(parse_dataset(zero), DomainError);
  CHECK_THROWS(read_dataset("/nonexistent/file.csv"));
}

TEST_CASE("fingerprint and scaling") {
  const DataSet a({1.0, 2.0, 3.0});
  const DataSet b({1.0, 2.0, 3.0});
  const DataSet c({1.0, 2.0, 3.0}, std::vector<bool>{true, false, true});
  CHECK(a.fingerprint() == b.fingerprint());
  CHECK(a.fingerprint() != c.fingerprint());
  CHECK(a.scaled(2.0).values() == std::vector<double>{2.0, 4.0, 6.0});
  CHECK_THROWS_AS(DataSet({1.0, 2.0}, std::vector<bool>{true}), DomainError);
}

TEST_CASE("fit command") {
  const std::string text = cli::run(config(cli::Command::Fit, {"geometric"}, kData + "/failure_times.csv"));
  CHECK(text.find("model BSG") != std::string::npos);
  CHECK(text.find("0.994953") != std::string::npos);
  CHECK(text.find("AIC -71.58") != std::string::npos);

  auto c = config(cli::Command::Fit, {"geometric"}, kData + "/failure_times.csv");
  c.format = cli::Format::Structured;
  const auto doc = nlohmann::json::parse(cli::run(c));
  CHECK(doc["fit"]["model"] == "BSG");
  CHECK(doc["fit"]["estimates"]["theta"].get<double>() == Approx(0.995).epsilon(0.001));
  CHECK(doc["fit"]["aic"].get<double>() == Approx(-71.6).epsilon(0.005));
  CHECK(doc["confidence_intervals"]["level"].get<double>() == Approx(0.95));
}

TEST_CASE("compare command") {
  const std::string text = cli::run(
      config(cli::Command::Compare, {"geometric", "poisson", "logarithmic"}, kData + "/failure_times.csv"));
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  std::getline(lines, line);
  CHECK(line.rfind("BSG", 0) == 0);
  CHECK(line.find("AIC") != std::string::npos);
}

TEST_CASE("sample command") {
  auto c = config(cli::Command::Sample, {"poisson"});
  c.theta = 1.0;
  c.alpha = 1.0;
  c.beta = 1.0;
  c.n = 0;
  std::ostringstream out, err;
  CHECK(cli::execute(c, out, err) == 0);
  CHECK(out.str().empty());

  c.n = 5;
  const std::string a = cli::run(c);
  CHECK(a == cli::run(c));
  CHECK(std::count(a.begin(), a.end(), '\n') == 5);
  c.seed = 12345;
  CHECK(a != cli::run(c));

  c.theta.reset();
  std::ostringstream out2, err2;
  CHECK(cli::execute(c, out2, err2) != 0);
  CHECK(out2.str().empty());
  CHECK_FALSE(err2.str().empty());
}

TEST_CASE("curve command") {
  auto c = config(cli::Command::Curve, {"geometric"});
  c.theta = 0.5;
  c.alpha = 0.5;
  c.beta = 2.0;
  c.n = 9;
  c.format = cli::Format::Structured;
  const auto doc = nlohmann::json::parse(cli::run(c));
  REQUIRE(doc["x"].size() == 9);
  CHECK(doc["cdf"][4].get<double>() == Approx(0.5).epsilon(1e-10));
  for (std::size_t i = 1; i < 9; ++i) CHECK(doc["x"][i].get<double>() > doc["x"][i - 1].get<double>());
}

TEST_CASE("errors and output files") {
  std::ostringstream out, err;
  CHECK(cli::execute(config(cli::Command::Fit, {"geometric"}, kData + "/missing.csv"), out, err) != 0);
  CHECK(out.str().empty());
  CHECK(cli::execute(config(cli::Command::Fit, {"nonsense"}, kData + "/failure_times.csv"), out, err) != 0);
  CHECK(out.str().empty());

  auto g = config(cli::Command::Gof, {"bs"}, kData + "/bearing_fatigue.csv");
  g.n_boot = 10;
  CHECK(cli::execute(g, out, err) != 0);
  CHECK(out.str().empty());

  const auto path = std::filesystem::temp_directory_path() / "bsps_cli_test.json";
  auto c = config(cli::Command::Gof, {"bs"}, kData + "/bearing_fatigue.csv");
  c.n_boot = 200;
  c.format = cli::Format::Structured;
  c.out_path = path.string();
  CHECK(cli::execute(c, out, err) == 0);
  CHECK(out.str().empty());
  std::ifstream in(path);
  const auto doc = nlohmann::json::parse(in);
  CHECK(doc["gof"]["n_boot"] == 200);
  CHECK(doc["gof"]["p_method"] == "bootstrap");
  std::filesystem::remove(path);
}
