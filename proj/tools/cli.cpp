#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "plaus/dominance.hpp"
#include "plaus/errors.hpp"
#include "plaus/godel_pi.hpp"
#include "plaus/market.hpp"
#include "plaus/registry.hpp"
#include "plaus/report.hpp"
#include "plaus/scoring.hpp"

namespace plaus::cli {
namespace {

struct Output {
  std::string out;
  std::string format = "csv";
};

struct Common {
  std::string problem;
  std::string ensemble;
  std::string rule = "brier";
  std::string lengths;
  std::string mode = "exact";
  std::uint64_t samples = 100000;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  std::string pi_digits;
};

std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InvalidArgument("cannot write " + path.string());
  file << text;
}

// Writes the report to --out, or to `out` when no path is given.
void emit(const Output& o, const Json& config, const std::string& csv_body, const Json& json,
          std::ostream& out) {
  const std::string text =
      o.format == "json" ? json.dump(2) + "\n" : csv_preamble(config) + csv_body;
  if (o.out.empty()) {
    out << text;
  } else {
    write_file(o.out, text);
    out << "wrote " << o.out << '\n';
  }
}

PiDigitSource digit_source(const std::string& path) {
  return path.empty() ? PiDigitSource() : PiDigitSource(path);
}

std::uint64_t require_seed(const std::optional<std::uint64_t>& seed, const std::string& why) {
  if (!seed) throw InvalidArgument("--seed is required: " + why);
  return *seed;
}

void add_output(CLI::App* app, Output& o, const std::string& default_format) {
  o.format = default_format;
  app->add_option("--out", o.out, "Report path (stdout if omitted)");
  app->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void add_common(CLI::App* app, Common& c, bool needs_mode) {
  app->add_option("--problem", c.problem, "Decision problem")->required();
  app->add_option("--ensemble", c.ensemble, "Input ensemble")->required();
  app->add_option("--rule", c.rule, "Scoring rule: brier, log, absolute")->capture_default_str();
  app->add_option("--n", c.lengths, "Lengths, e.g. 8..16")->required();
  if (needs_mode) {
    app->add_option("--mode", c.mode, "exact or monte-carlo")->capture_default_str();
    app->add_option("--samples", c.samples, "Monte Carlo samples per length")->capture_default_str();
  }
  app->add_option("--seed", c.seed, "64-bit seed");
  app->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--pi-digits", c.pi_digits, "Pi digit file");
}

// Resolved settings shared by score, compare and worst-case-demo reports.
// --jobs is left out: it cannot change any result.
Json common_config(const std::string& command, const Common& c, const EvalOptions& eval,
                   bool with_mode) {
  Json config{{"command", command}, {"problem", c.problem}, {"ensemble", c.ensemble},
              {"rule", c.rule}, {"n", c.lengths}};
  if (with_mode) {
    config["mode"] = to_string(eval.mode);
    if (eval.mode == EvalMode::kMonteCarlo) config["samples"] = eval.samples;
  }
  config["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
  return config;
}

EvalOptions eval_options(const Common& c, bool any_randomized) {
  EvalOptions eval;
  eval.mode = eval_mode_from_string(c.mode);
  eval.samples = c.samples;
  eval.jobs = c.jobs;
  if (eval.mode == EvalMode::kMonteCarlo) {
    eval.seed = require_seed(c.seed, "Monte Carlo mode draws instances");
  } else if (any_randomized) {
    eval.seed = require_seed(c.seed, "the forecaster is randomized");
  }
  return eval;
}

std::vector<double> parse_forecast(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument("--forecast: bad number '" + item + "'");
    }
  }
  if (values.empty()) throw InvalidArgument("--forecast is empty");
  return values;
}

WorldSet parse_worlds(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    auto worlds = doc.get<std::vector<std::vector<int>>>();
    if (worlds.empty()) throw InvalidArgument("--worlds is empty");
    const std::size_t k = worlds.front().size();
    return WorldSet(k, std::move(worlds));
  } catch (const nlohmann::json::exception& e) {
    throw DecodeError("worlds", e.what());
  }
}

// Adds `--key value` for config-file entries not already given as flags.
std::vector<std::string> merge_config(const std::vector<std::string>& args, const Json& file) {
  if (!file.is_object()) throw DecodeError("config", "expected a JSON object");
  std::vector<std::string> merged = args;
  for (const auto& [key, value] : file.items()) {
    if (key == "command") continue;
    const std::string flag = "--" + key;
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (given) continue;
    merged.push_back(flag);
    merged.push_back(value.is_string() ? value.get<std::string>() : value.dump());
  }
  return merged;
}

Json read_json_file(const std::string& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + what + " " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DecodeError(what, e.what());
  }
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int report_error(const Error& e, std::ostream& err) {
  err << "error: kind=" << e.kind();
  if (const auto* unknown = dynamic_cast<const UnknownNameError*>(&e)) {
    err << " name=" << unknown->name();
  }
  if (const auto* cap = dynamic_cast<const ConstraintViolation*>(&e)) err << " cap=" << cap->cap();
  err << " message=" << one_line(e.what()) << '\n';
  if (e.kind() == "resource-guard") return 3;
  if (e.kind() == "unknown-name" || e.kind() == "invalid-argument" || e.kind() == "domain" ||
      e.kind() == "decode") {
    return 2;
  }
  return 1;
}

int dispatch(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args = raw_args;

  // A --config file supplies defaults for any flag not given explicitly.
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i + 2));
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      continue;
    }
    args = merge_config(args, read_json_file(path, "config"));
    break;
  }

  CLI::App app{"Resource-bounded plausibility experiments", "plaus"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  Common common;
  Output output;
  std::string forecaster, first, second;

  auto* score = app.add_subcommand("score", "Expected score of a forecaster per length");
  add_common(score, common, true);
  score->add_option("--forecaster", forecaster, "Forecaster")->required();
  add_output(score, output, "csv");

  auto* comp = app.add_subcommand("compare", "Per-length comparison of two forecasters");
  add_common(comp, common, true);
  comp->add_option("--first", first, "First forecaster")->required();
  comp->add_option("--second", second, "Second forecaster")->required();
  add_output(comp, output, "csv");

  auto* worst = app.add_subcommand("worst-case-demo", "Worst instance per length vs the mean");
  add_common(worst, common, false);
  worst->add_option("--forecaster", forecaster, "Forecaster")->required();
  add_output(worst, output, "csv");

  double grid = 0.001;
  auto* prop = app.add_subcommand("propriety", "Grid check that a rule is proper");
  prop->add_option("--rule", common.rule, "Scoring rule")->capture_default_str();
  prop->add_option("--grid", grid, "Grid step")->capture_default_str();
  add_output(prop, output, "csv");

  std::string worlds_text, forecast_text;
  auto* dom = app.add_subcommand("dominance", "Is a forecast vector strictly dominated?");
  dom->add_option("--worlds", worlds_text, "JSON list of 0/1 world vectors")->required();
  dom->add_option("--forecast", forecast_text, "Comma-separated forecasts")->required();
  dom->add_option("--rule", common.rule, "Scoring rule")->capture_default_str();
  add_output(dom, output, "csv");

  std::string seller, buyer, payoff = "expectation";
  unsigned reps = 100;
  ArbitrageParams arb;
  std::optional<unsigned> burn_in;
  auto add_arb = [&](CLI::App* sub) {
    sub->add_option("--delta", arb.delta, "Non-negligibility floor")->capture_default_str();
    sub->add_option("--rho", arb.rho, "Fraction of lengths for 'infinitely often'")
        ->capture_default_str();
    sub->add_option("--burn-in", burn_in, "n0 (default: min n + 2)");
  };
  auto* market = app.add_subcommand("market", "Simulate the seller/buyer market");
  market->add_option("--problem", common.problem, "Decision problem")->required();
  market->add_option("--ensemble", common.ensemble, "Asset ensemble")->required();
  market->add_option("--seller", seller, "Seller forecaster")->required();
  market->add_option("--buyer", buyer, "Buyer strategy")->required();
  market->add_option("--n", common.lengths, "Lengths, e.g. 8..18")->required();
  market->add_option("--reps", reps, "Settlements per length")->capture_default_str();
  market->add_option("--payoff", payoff, "expectation or deterministic")->capture_default_str();
  market->add_option("--seed", common.seed, "64-bit seed");
  market->add_option("--jobs", common.jobs, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  market->add_option("--pi-digits", common.pi_digits, "Pi digit file");
  add_arb(market);
  add_output(market, output, "json");

  std::string report_in;
  auto* verdict = app.add_subcommand("verdict", "Re-verdict a saved market report");
  verdict->add_option("--in", report_in, "Market JSON report")->required();
  add_arb(verdict);

  double threshold = 0.999;
  std::uint64_t digit_budget = 10000;
  auto* godel = app.add_subcommand("godel-pi", "Enumerative induction on the pi-gap statements");
  godel->add_option("--threshold", threshold, "Target probability")->capture_default_str();
  godel->add_option("--digits", digit_budget, "Digit budget")->capture_default_str();
  godel->add_option("--pi-digits", common.pi_digits, "Pi digit file");
  add_output(godel, output, "csv");

  std::string batch_file;
  auto* batch = app.add_subcommand("batch", "Run every entry of an experiment file");
  batch->add_option("--file", batch_file, "JSON with a 'runs' list")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;
    err << "error: kind=usage message=" << one_line(e.what()) << '\n';
    return 2;
  }

  const PiDigitSource digits = digit_source(common.pi_digits);

  if (*score || *comp || *worst) {
    const std::string command = score->parsed() ? "score" : comp->parsed() ? "compare" : "worst-case-demo";
    const ProblemPtr problem = make_problem(common.problem, digits);
    const EnsemblePtr ensemble = make_ensemble(common.ensemble);
    const ScoringRule& rule = rule_by_name(common.rule);
    const auto lengths = parse_length_range(common.lengths);

    if (*comp) {
      const ForecasterPtr a = make_forecaster(first, problem, digits);
      const ForecasterPtr b = make_forecaster(second, problem, digits);
      const EvalOptions eval = eval_options(common, a->randomized() || b->randomized());
      Json config = common_config(command, common, eval, true);
      config["first"] = a->name();
      config["second"] = b->name();
      const auto report = compare(*a, *b, *problem, *ensemble, rule, lengths, eval);
      emit(output, config, comparison_csv(report),
           envelope(command, config, comparison_json(report)), out);
      return 0;
    }

    const ForecasterPtr f = make_forecaster(forecaster, problem, digits);
    if (*worst) common.mode = "exact";
    const EvalOptions eval = eval_options(common, f->randomized());
    Json config = common_config(command, common, eval, !*worst);
    config["forecaster"] = f->name();
    if (*score) {
      const auto report = score_report(*f, *problem, *ensemble, rule, lengths, eval);
      emit(output, config, score_csv(report), envelope(command, config, score_json(report)), out);
    } else {
      std::vector<WorstCaseEntry> entries;
      for (unsigned n : lengths) {
        entries.push_back(worst_case_score(*f, *problem, *ensemble, rule, n, eval));
      }
      emit(output, config, worst_case_csv(entries),
           envelope(command, config, worst_case_json(entries)), out);
    }
    return 0;
  }

  if (*prop) {
    const ScoringRule& rule = rule_by_name(common.rule);
    const auto report = check_propriety(rule, grid);
    const Json config{{"command", "propriety"}, {"rule", rule.name()}, {"grid", grid}};
    emit(output, config, propriety_csv(report), envelope("propriety", config, propriety_json(report)),
         out);
    return 0;
  }

  if (*dom) {
    const ScoringRule& rule = rule_by_name(common.rule);
    const WorldSet worlds = parse_worlds(worlds_text);
    const auto forecasts = parse_forecast(forecast_text);
    const auto result = dominance_check(forecasts, worlds, rule);
    const Json config{{"command", "dominance"}, {"rule", rule.name()},
                      {"worlds", worlds.worlds()}, {"forecast", forecasts}};
    emit(output, config, dominance_csv(forecasts, result),
         envelope("dominance", config, dominance_json(forecasts, worlds, result)), out);
    return 0;
  }

  if (*market) {
    arb.burn_in = burn_in;
    MarketConfig mc;
    mc.problem = make_problem(common.problem, digits);
    mc.ensemble = make_ensemble(common.ensemble);
    mc.seller = make_forecaster(seller, mc.problem, digits);
    const BuyerPtr b = make_buyer(buyer);
    const auto lengths = parse_length_range(common.lengths);
    mc.n_lo = lengths.front();
    mc.n_hi = lengths.back();
    mc.payoff_kind = payoff_kind_from_string(payoff);
    mc.reps = mc.payoff_kind == PayoffKind::kDeterministic ? 1 : reps;
    mc.seed = require_seed(common.seed, "the market draws assets at random");
    mc.jobs = common.jobs;
    validate(mc);

    const GainSeries series = run_market(mc, *b);
    const ArbitrageVerdict v = arbitrage_verdict(series, arb);
    const Json config{{"command", "market"},      {"problem", mc.problem->name()},
                      {"ensemble", mc.ensemble->name()}, {"seller", mc.seller->name()},
                      {"buyer", b->name()},         {"n", common.lengths},
                      {"payoff", to_string(mc.payoff_kind)}, {"reps", mc.reps},
                      {"seed", mc.seed}};
    const Json report = market_json(config, series, v);
    const std::string csv = csv_preamble(config) + gain_csv(series);
    if (output.out.empty()) {
      out << (output.format == "json" ? report.dump(2) + "\n" : csv);
    } else {
      std::filesystem::path path(output.out);
      write_file(path, report.dump(2) + "\n");
      path.replace_extension(".csv");
      write_file(path, csv);
      out << "wrote " << output.out << " and " << path.string() << '\n';
    }
    return 0;
  }

  if (*verdict) {
    const Json report = read_json_file(report_in, "market-report");
    const GainSeries series = gain_series_from_json(report);
    ArbitrageParams params = arbitrage_params_from_json(report);
    if (verdict->count("--delta")) params.delta = arb.delta;
    if (verdict->count("--rho")) params.rho = arb.rho;
    if (burn_in) params.burn_in = burn_in;
    out << verdict_json(arbitrage_verdict(series, params)).dump(2) << '\n';
    return 0;
  }

  if (*godel) {
    const auto store = digits.get();
    const GodelPiReport r = run_godel_pi(threshold, digit_budget, *store);
    const Json config{{"command", "godel-pi"}, {"threshold", threshold}, {"digits", digit_budget}};
    emit(output, config, godel_pi_csv(r), envelope("godel-pi", config, godel_pi_json(r)), out);
    return 0;
  }

  if (*batch) {
    const Json doc = read_json_file(batch_file, "batch");
    if (!doc.contains("runs") || !doc.at("runs").is_array()) {
      throw DecodeError("batch", "expected an object with a 'runs' list");
    }
    for (const Json& entry : doc.at("runs")) {
      if (!entry.is_object() || !entry.contains("command") || !entry.at("command").is_string()) {
        throw DecodeError("batch", "every run needs a 'command' string");
      }
      const int status = dispatch(merge_config({entry.at("command").get<std::string>()}, entry),
                                  out, err);
      if (status != 0) return status;
    }
    return 0;
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const Error& e) {
    return report_error(e, err);
  } catch (const std::exception& e) {
    err << "error: kind=internal message=" << one_line(e.what()) << '\n';
    return 1;
  }
}

}  // namespace plaus::cli
