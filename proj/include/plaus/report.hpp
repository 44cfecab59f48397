#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "plaus/dominance.hpp"
#include "plaus/godel_pi.hpp"
#include "plaus/market.hpp"
#include "plaus/scoring.hpp"

namespace plaus {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Shortest text that reads back to the same double.
std::string format_double(double value);

// "# key=value" lines for every config entry, in insertion order.
std::string csv_preamble(const Json& config);

std::string score_csv(const ScoreReport& report);
Json score_json(const ScoreReport& report);

std::string comparison_csv(const ComparisonReport& report);
Json comparison_json(const ComparisonReport& report);

std::string propriety_csv(const ProprietyReport& report);
Json propriety_json(const ProprietyReport& report);

std::string dominance_csv(const std::vector<double>& forecasts, const DominanceResult& result);
Json dominance_json(const std::vector<double>& forecasts, const WorldSet& worlds,
                    const DominanceResult& result);

std::string gain_csv(const GainSeries& series);
Json verdict_json(const ArbitrageVerdict& verdict);
Json market_json(const Json& config, const GainSeries& series, const ArbitrageVerdict& verdict);
// Reads back the per-n gain statistics and verdict parameters of market_json().
GainSeries gain_series_from_json(const Json& report);
ArbitrageParams arbitrage_params_from_json(const Json& report);

std::string worst_case_csv(const std::vector<WorstCaseEntry>& entries);
Json worst_case_json(const std::vector<WorstCaseEntry>& entries);

std::string godel_pi_csv(const GodelPiReport& report);
Json godel_pi_json(const GodelPiReport& report);

// Wraps a report body with schema_version and the resolved config.
Json envelope(const std::string& command, const Json& config, Json body);

}  // namespace plaus
