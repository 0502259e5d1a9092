#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace bsps {

/// Positive lifetimes with right-censoring indicators (true = observed event).
class DataSet {
 public:
  DataSet(std::vector<double> values, std::vector<bool> events, std::string name = "data");
  /// All observations are events.
  explicit DataSet(std::vector<double> values, std::string name = "data");

  const std::vector<double>& values() const { return values_; }
  const std::vector<bool>& events() const { return events_; }
  const std::string& name() const { return name_; }
  std::size_t size() const { return values_.size(); }
  std::size_t event_count() const;
  bool has_censoring() const { return event_count() != size(); }

  /// Hash of the values and indicators, used to check that fits share data.
  std::uint64_t fingerprint() const;

  /// Copy with every value multiplied by k.
  DataSet scaled(double k) const;

 private:
  std::vector<double> values_;
  std::vector<bool> events_;
  std::string name_;
};

/// Reads one record per line: `value` or `value,censor` with censor in {0,1}
/// (default 1). Blank lines and `#` comments are skipped.
DataSet parse_dataset(std::istream& in, std::string name = "data");
DataSet read_dataset(const std::filesystem::path& path);

}  // namespace bsps
