#pragma once

#include <json.hpp>

#include <span>

#include "bsps/gof.hpp"
#include "bsps/mle.hpp"

namespace bsps {

// Structured (JSON) forms of the library's result types. Doubles are
// written with round-trip precision; NaN standard errors become null.

void to_json(nlohmann::json& j, const FitResult& fit);
void to_json(nlohmann::json& j, const GofReport& report);
void to_json(nlohmann::json& j, const RankingRow& row);
void to_json(nlohmann::json& j, const LrTest& test);

/// Intervals keyed by parameter name.
nlohmann::json intervals_to_json(const FitResult& fit, std::span<const Interval> intervals,
                                 double gamma);

}  // namespace bsps
