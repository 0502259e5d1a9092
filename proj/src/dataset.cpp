#include "bsps/dataset.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string_view>

#include "bsps/errors.hpp"

namespace bsps {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

DataSet::DataSet(std::vector<double> values, std::vector<bool> events, std::string name)
    : values_(std::move(values)), events_(std::move(events)), name_(std::move(name)) {
  if (values_.size() != events_.size()) {
    throw DomainError("values and censoring indicators differ in length");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      throw DomainError("observation " + std::to_string(i) + " is not a positive finite number");
    }
  }
}

DataSet::DataSet(std::vector<double> values, std::string name)
    : DataSet(values, std::vector<bool>(values.size(), true), std::move(name)) {}

std::size_t DataSet::event_count() const {
  std::size_t n = 0;
  for (bool e : events_) n += e ? 1 : 0;
  return n;
}

std::uint64_t DataSet::fingerprint() const {
  // FNV-1a over the raw bytes.
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::uint64_t word) {
    for (int b = 0; b < 8; ++b) {
      h ^= (word >> (8 * b)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  };
  for (std::size_t i = 0; i < values_.size(); ++i) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &values_[i], sizeof bits);
    mix(bits);
    mix(events_[i] ? 1u : 0u);
  }
  return h;
}

DataSet DataSet::scaled(double k) const {
  if (!(k > 0.0)) throw DomainError("scale factor must be positive");
  std::vector<double> v = values_;
  for (double& x : v) x *= k;
  return DataSet(std::move(v), events_, name_);
}

DataSet parse_dataset(std::istream& in, std::string name) {
  std::vector<double> values;
  std::vector<bool> events;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    std::string_view value_text = line;
    std::string_view censor_text;
    if (const auto comma = line.find(','); comma != std::string_view::npos) {
      value_text = trim(line.substr(0, comma));
      censor_text = trim(line.substr(comma + 1));
    }
    double value = 0.0;
    const auto [vp, vec] =
        std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
    if (vec != std::errc() || vp != value_text.data() + value_text.size()) {
      throw ParseError("cannot parse value '" + std::string(value_text) + "'", line_no);
    }
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw DomainError("line " + std::to_string(line_no) + ": observations must be positive");
    }
    bool event = true;
    if (!censor_text.empty() || line.find(',') != std::string_view::npos) {
      if (censor_text == "1") {
        event = true;
      } else if (censor_text == "0") {
        event = false;
      } else {
        throw ParseError("censoring indicator must be 0 or 1, got '" + std::string(censor_text) + "'",
                         line_no);
      }
    }
    values.push_back(value);
    events.push_back(event);
  }
  return DataSet(std::move(values), std::move(events), std::move(name));
}

DataSet read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open data file " + path.string());
  return parse_dataset(in, path.stem().string());
}

}  // namespace bsps
