#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bsps/random.hpp"

namespace bsps::cli {

enum class Command { Fit, Sample, Gof, Compare, Curve };
enum class Format { Text, Structured };

struct RunConfig {
  Command command = Command::Fit;
  /// geometric | poisson | logarithmic | binomial:<m> | bs
  std::vector<std::string> families;
  std::string data_path;
  std::uint64_t seed = kDefaultSeed;
  int n_boot = 1000;
  std::string out_path;
  Format format = Format::Text;
  std::optional<double> theta;
  std::optional<double> alpha;
  std::optional<double> beta;
  /// Draws for `sample`, grid points for `curve`.
  int n = 100;
};

/// Builds the full report for `config`; throws on any error so that a
/// partial report is never produced.
std::string run(const RunConfig& config);

/// run() plus output handling: the report goes to config.out_path (or `out`),
/// errors to `err`. Returns the process exit code.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace bsps::cli
