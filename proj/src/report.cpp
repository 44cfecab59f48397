#include "plaus/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "plaus/errors.hpp"

namespace plaus {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, end);
}

std::string csv_preamble(const Json& config) {
  std::ostringstream out;
  for (const auto& [key, value] : config.items()) {
    out << "# " << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
  return out.str();
}

std::string score_csv(const ScoreReport& report) {
  std::ostringstream out;
  out << "n,mode,mean,stderr,samples\n";
  for (const ScoreEntry& e : report.entries) {
    out << e.n << ',' << to_string(e.mode) << ',' << format_double(e.mean) << ','
        << format_double(e.std_error) << ',' << e.samples << '\n';
  }
  return out.str();
}

namespace {

Json entry_json(const ScoreEntry& e) {
  return Json{{"n", e.n}, {"mode", to_string(e.mode)}, {"mean", e.mean},
              {"stderr", e.std_error}, {"samples", e.samples}};
}

}  // namespace

Json score_json(const ScoreReport& report) {
  Json rows = Json::array();
  for (const ScoreEntry& e : report.entries) rows.push_back(entry_json(e));
  return Json{{"problem", report.problem}, {"ensemble", report.ensemble},
              {"forecaster", report.forecaster}, {"rule", report.rule},
              {"seed", report.seed}, {"entries", rows}};
}

std::string comparison_csv(const ComparisonReport& report) {
  std::ostringstream out;
  out << "n,mode,first_mean,first_stderr,second_mean,second_stderr,verdict\n";
  for (const ComparisonRow& r : report.rows) {
    out << r.n << ',' << to_string(r.first.mode) << ',' << format_double(r.first.mean) << ','
        << format_double(r.first.std_error) << ',' << format_double(r.second.mean) << ','
        << format_double(r.second.std_error) << ',' << to_string(r.verdict) << '\n';
  }
  out << "# aggregate=" << to_string(report.aggregate) << " (" << report.horizon_label << ")\n";
  return out.str();
}

Json comparison_json(const ComparisonReport& report) {
  Json rows = Json::array();
  for (const ComparisonRow& r : report.rows) {
    rows.push_back(Json{{"n", r.n}, {"first", entry_json(r.first)},
                        {"second", entry_json(r.second)}, {"verdict", to_string(r.verdict)}});
  }
  return Json{{"first", report.first}, {"second", report.second}, {"rows", rows},
              {"aggregate", to_string(report.aggregate)}, {"label", report.horizon_label},
              {"tie_rule", "overlapping 99% confidence intervals (monte-carlo); exact inequality (exact)"}};
}

std::string propriety_csv(const ProprietyReport& report) {
  std::ostringstream out;
  out << "belief,minimizer,deviation\n";
  for (std::size_t i = 0; i < report.beliefs.size(); ++i) {
    out << format_double(report.beliefs[i]) << ',' << format_double(report.minimizers[i]) << ','
        << format_double(std::fabs(report.minimizers[i] - report.beliefs[i])) << '\n';
  }
  return out.str();
}

Json propriety_json(const ProprietyReport& report) {
  Json curve = Json::array();
  for (std::size_t i = 0; i < report.beliefs.size(); ++i) {
    curve.push_back(Json{{"belief", report.beliefs[i]}, {"minimizer", report.minimizers[i]}});
  }
  return Json{{"rule", report.rule}, {"grid_step", report.grid_step},
              {"max_deviation", report.max_deviation}, {"passes", report.passes},
              {"curve", curve}};
}

std::string dominance_csv(const std::vector<double>& forecasts, const DominanceResult& result) {
  std::ostringstream out;
  out << "index,forecast,witness\n";
  for (std::size_t i = 0; i < forecasts.size(); ++i) {
    out << i << ',' << format_double(forecasts[i]) << ','
        << (result.dominated ? format_double(result.witness[i]) : std::string()) << '\n';
  }
  out << "# dominated=" << (result.dominated ? "true" : "false") << '\n';
  return out.str();
}

Json dominance_json(const std::vector<double>& forecasts, const WorldSet& worlds,
                    const DominanceResult& result) {
  Json body{{"forecast", forecasts}, {"worlds", worlds.worlds()},
            {"dominated", result.dominated}, {"hull_distance", result.hull_distance},
            {"forecast_scores", result.forecast_scores}};
  body["witness"] = result.dominated ? Json(result.witness) : Json(nullptr);
  body["witness_scores"] = result.dominated ? Json(result.witness_scores) : Json(nullptr);
  body["grid_confirmed"] = result.grid_confirmed ? Json(*result.grid_confirmed) : Json(nullptr);
  return body;
}

std::string gain_csv(const GainSeries& series) {
  std::ostringstream out;
  out << "n,mean_gain,stderr\n";
  for (const GainPoint& p : series.points) {
    out << p.n << ',' << format_double(p.mean_gain) << ',' << format_double(p.std_error) << '\n';
  }
  return out.str();
}

Json verdict_json(const ArbitrageVerdict& v) {
  const NegligibilityReport& neg = v.negligibility;
  return Json{
      {"strict", v.strict},
      {"relaxed", v.relaxed},
      {"label", v.label},
      {"params", {{"delta", v.params.delta}, {"rho", v.params.rho}, {"burn_in", neg.burn_in}}},
      {"tested_lengths", neg.tested},
      {"nonnegative_count", v.nonnegative_count},
      {"positive_count", v.positive_count},
      {"positive_hits", neg.positive_hits},
      {"negative_hits", neg.negative_hits},
      {"positive_non_negligible", neg.positive_non_negligible},
      {"negative_non_negligible", neg.negative_non_negligible},
      {"decay_exponent", neg.decay_exponent ? Json(*neg.decay_exponent) : Json(nullptr)}};
}

Json market_json(const Json& config, const GainSeries& series, const ArbitrageVerdict& verdict) {
  Json points = Json::array();
  for (const GainPoint& p : series.points) {
    points.push_back(Json{{"n", p.n}, {"mean_gain", p.mean_gain}, {"stderr", p.std_error},
                          {"reps", p.reps}});
  }
  Json body{{"gains", points}, {"verdict", verdict_json(verdict)}};
  return envelope("market", config, std::move(body));
}

GainSeries gain_series_from_json(const Json& report) {
  try {
    GainSeries series;
    for (const auto& p : report.at("gains")) {
      series.points.push_back({p.at("n").get<unsigned>(), p.at("mean_gain").get<double>(),
                               p.at("stderr").get<double>(), p.at("reps").get<unsigned>()});
    }
    return series;
  } catch (const nlohmann::json::exception& e) {
    throw DecodeError("market-report", e.what());
  }
}

ArbitrageParams arbitrage_params_from_json(const Json& report) {
  try {
    const Json& p = report.at("verdict").at("params");
    ArbitrageParams params;
    params.delta = p.at("delta").get<double>();
    params.rho = p.at("rho").get<double>();
    params.burn_in = p.at("burn_in").get<unsigned>();
    return params;
  } catch (const nlohmann::json::exception& e) {
    throw DecodeError("market-report", e.what());
  }
}

std::string worst_case_csv(const std::vector<WorstCaseEntry>& entries) {
  std::ostringstream out;
  out << "n,worst_score,worst_instance,mean_score\n";
  for (const WorstCaseEntry& e : entries) {
    out << e.n << ',' << format_double(e.worst_score) << ',' << e.worst_instance.to_string() << ','
        << format_double(e.mean_score) << '\n';
  }
  return out.str();
}

Json worst_case_json(const std::vector<WorstCaseEntry>& entries) {
  Json rows = Json::array();
  for (const WorstCaseEntry& e : entries) {
    rows.push_back(Json{{"n", e.n}, {"worst_score", e.worst_score},
                        {"worst_instance", e.worst_instance.to_string()},
                        {"mean_score", e.mean_score}});
  }
  return Json{{"rows", rows}};
}

std::string godel_pi_csv(const GodelPiReport& r) {
  std::ostringstream out;
  out << "threshold,digit_budget,verified_through,all_verified,boolos_n,boolos_reached,tail_product,tail_product_complement_log10\n";
  out << format_double(r.threshold) << ',' << r.digit_budget << ',' << r.verified_through << ','
      << (r.all_verified ? "true" : "false") << ',' << r.boolos_n << ','
      << (r.boolos_reached ? "true" : "false") << ',' << to_decimal_string(r.tail_product, 60) << ','
      << format_double(r.complement_log10) << '\n';
  return out.str();
}

Json godel_pi_json(const GodelPiReport& r) {
  return Json{{"threshold", r.threshold},
              {"digit_budget", r.digit_budget},
              {"verified_through", r.verified_through},
              {"all_verified", r.all_verified},
              {"counterexample", r.counterexample ? Json(*r.counterexample) : Json(nullptr)},
              {"tail_product", to_decimal_string(r.tail_product, 60)},
              {"tail_product_complement_log10", r.complement_log10},
              {"boolos_n", r.boolos_n},
              {"boolos_reached", r.boolos_reached}};
}

Json envelope(const std::string& command, const Json& config, Json body) {
  Json out{{"schema_version", kSchemaVersion}, {"command", command}, {"config", config}};
  for (auto& [key, value] : body.items()) out[key] = value;
  return out;
}

}  // namespace plaus
