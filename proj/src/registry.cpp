#include "plaus/registry.hpp"

#include <charconv>
#include <fstream>

#include <json.hpp>

#include "plaus/errors.hpp"

namespace plaus {

namespace {

std::uint64_t parse_uint(const std::string& text, const std::string& what) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw InvalidArgument(what + ": expected a nonnegative integer, got '" + text + "'");
  }
  return value;
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw InvalidArgument(what + ": expected a number, got '" + text + "'");
  }
}

}  // namespace

ComponentSpec ComponentSpec::parse(const std::string& text) {
  ComponentSpec spec;
  spec.text_ = text;
  const auto colon = text.find(':');
  spec.name_ = text.substr(0, colon);
  if (spec.name_.empty()) throw InvalidArgument("empty component name in '" + text + "'");
  if (colon == std::string::npos) return spec;

  std::string rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto eq = rest.find('=');
    if (eq == std::string::npos) throw InvalidArgument("expected key=value in '" + text + "'");
    const std::string key = rest.substr(0, eq);
    std::string::size_type stop;
    if (key == "base") {
      stop = rest.find(",file=", eq);
    } else {
      stop = rest.find(',', eq);
    }
    const std::string value = rest.substr(eq + 1, stop == std::string::npos ? std::string::npos
                                                                            : stop - eq - 1);
    if (key.empty() || value.empty()) throw InvalidArgument("empty key or value in '" + text + "'");
    if (!spec.params_.emplace(key, value).second) {
      throw InvalidArgument("parameter '" + key + "' repeated in '" + text + "'");
    }
    rest = stop == std::string::npos ? std::string() : rest.substr(stop + 1);
  }
  return spec;
}

std::string ComponentSpec::get_string(const std::string& key, const std::string& fallback) const {
  auto it = params_.find(key);
  return it == params_.end() ? fallback : it->second;
}

double ComponentSpec::get_double(const std::string& key, double fallback) const {
  auto it = params_.find(key);
  return it == params_.end() ? fallback : parse_double(it->second, name_ + "." + key);
}

std::uint64_t ComponentSpec::get_uint(const std::string& key, std::uint64_t fallback) const {
  auto it = params_.find(key);
  return it == params_.end() ? fallback : parse_uint(it->second, name_ + "." + key);
}

void ComponentSpec::expect_keys(std::initializer_list<const char*> allowed) const {
  for (const auto& [key, value] : params_) {
    bool known = false;
    for (const char* a : allowed) known |= key == a;
    if (!known) throw UnknownNameError("parameter of " + name_, key);
  }
}

std::shared_ptr<const PiDigitStore> PiDigitSource::get() const {
  if (!store_) store_ = std::make_shared<const PiDigitStore>(PiDigitStore::from_file(path_));
  return store_;
}

ProblemPtr make_problem(const std::string& text, const PiDigitSource& digits) {
  const ComponentSpec spec = ComponentSpec::parse(text);
  spec.expect_keys({});
  const std::string& name = spec.name();
  if (name == "primality") return make_primality();
  if (name == "parity") return make_parity();
  if (name == "pi-gap") return make_pi_gap(digits.get());
  if (name == "pi-gap-prefix") return make_pi_gap_prefix(digits.get());
  if (name == "goldbach") return make_goldbach();
  if (name == "goldbach-prefix") return make_goldbach_prefix();
  throw UnknownNameError("problem", name);
}

EnsemblePtr make_ensemble(const std::string& text) {
  const ComponentSpec spec = ComponentSpec::parse(text);
  const std::string& name = spec.name();
  if (name == "uniform-bits") {
    spec.expect_keys({});
    return make_uniform_bits();
  }
  if (name == "uniform-odd") {
    spec.expect_keys({});
    return make_uniform_odd();
  }
  if (name == "index-range") {
    spec.expect_keys({"lo", "hi"});
    if (!spec.has("lo") || !spec.has("hi")) throw InvalidArgument("index-range needs lo and hi");
    return make_index_range(spec.get_uint("lo", 0), spec.get_uint("hi", 0));
  }
  throw UnknownNameError("ensemble", name);
}

ForecasterPtr make_forecaster(const std::string& text, const ProblemPtr& problem,
                              const PiDigitSource& digits) {
  const ComponentSpec spec = ComponentSpec::parse(text);
  const std::string& name = spec.name();
  if (name == "constant") {
    spec.expect_keys({"v"});
    return make_constant(spec.get_double("v", 0.5));
  }
  if (name == "density") {
    spec.expect_keys({"B"});
    return make_density(spec.get_uint("B", 100));
  }
  if (name == "fermat") {
    spec.expect_keys({"k", "B"});
    return make_fermat(static_cast<unsigned>(spec.get_uint("k", 5)), spec.get_uint("B", 100));
  }
  if (name == "oracle") {
    spec.expect_keys({});
    if (!problem) throw InvalidArgument("oracle forecaster needs --problem");
    return make_exact_oracle(problem);
  }
  if (name == "induction") {
    spec.expect_keys({"threshold", "digits"});
    if (!problem) throw InvalidArgument("induction forecaster needs --problem");
    InductionClaim claim;
    if (problem->name() == "pi-gap") {
      claim = InductionClaim::kSingleIndex;
    } else if (problem->name() == "pi-gap-prefix") {
      claim = InductionClaim::kPrefix;
    } else {
      throw InvalidArgument("induction forecaster applies to pi-gap or pi-gap-prefix, not " +
                            problem->name());
    }
    std::optional<double> threshold;
    if (spec.has("threshold")) threshold = spec.get_double("threshold", 0.0);
    return make_induction(digits.get(), claim, spec.get_uint("digits", 10000), threshold);
  }
  if (name == "override") {
    spec.expect_keys({"base", "file"});
    if (!spec.has("base")) throw InvalidArgument("override needs base=<forecaster>");
    ForecasterPtr base = make_forecaster(spec.get_string("base", ""), problem, digits);
    std::map<Instance, double> table;
    if (spec.has("file")) table = load_override_table(spec.get_string("file", ""));
    return hardcoded_override(std::move(base), std::move(table));
  }
  throw UnknownNameError("forecaster", name);
}

BuyerPtr make_buyer(const std::string& text) {
  const ComponentSpec spec = ComponentSpec::parse(text);
  if (spec.name() != "fermat-greedy") throw UnknownNameError("buyer", spec.name());
  spec.expect_keys({"k", "B", "support", "margin", "quantity", "notional", "candidates"});
  FermatGreedyParams params;
  params.rounds = static_cast<unsigned>(spec.get_uint("k", 10));
  params.sieve_bound = spec.get_uint("B", 100);
  params.margin = spec.get_double("margin", 0.1);
  params.caps.max_support = spec.get_uint("support", 32);
  params.caps.max_quantity = spec.get_double("quantity", 1.0);
  params.caps.max_notional =
      spec.get_double("notional", static_cast<double>(params.caps.max_support));
  params.candidates = spec.get_uint("candidates", 0);
  return make_fermat_greedy(params);
}

Instance instance_from_key(const std::string& key) {
  const auto slash = key.find('/');
  const std::string hex = key.substr(0, slash);
  std::uint64_t value = 0;
  const char* end = hex.data() + hex.size();
  auto [ptr, ec] = std::from_chars(hex.data(), end, value, 16);
  if (hex.empty() || ec != std::errc() || ptr != end) {
    throw DecodeError("override-table", "bad hex key '" + key + "'");
  }
  if (slash == std::string::npos) return Instance::from_integer(value);
  const auto length = parse_uint(key.substr(slash + 1), "override-table length");
  if (length > Instance::kMaxLength) throw DecodeError("override-table", "length too large in '" + key + "'");
  return Instance(value, static_cast<unsigned>(length));
}

std::map<Instance, double> load_override_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open override table " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DecodeError("override-table", e.what());
  }
  if (!doc.is_object()) throw DecodeError("override-table", "expected a JSON object");
  std::map<Instance, double> table;
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_number()) throw DecodeError("override-table", "value for '" + key + "' is not a number");
    const double v = value.get<double>();
    if (!(v >= 0.0 && v <= 1.0)) throw DecodeError("override-table", "value for '" + key + "' outside [0,1]");
    table[instance_from_key(key)] = v;
  }
  return table;
}

std::vector<unsigned> parse_length_range(const std::string& text) {
  const auto dots = text.find("..");
  const std::uint64_t lo = parse_uint(text.substr(0, dots), "length range");
  const std::uint64_t hi = dots == std::string::npos ? lo : parse_uint(text.substr(dots + 2), "length range");
  if (lo == 0 || lo > hi || hi > Instance::kMaxLength) {
    throw InvalidArgument("length range must satisfy 1 <= lo <= hi <= 64, got '" + text + "'");
  }
  std::vector<unsigned> out;
  for (std::uint64_t n = lo; n <= hi; ++n) out.push_back(static_cast<unsigned>(n));
  return out;
}

}  // namespace plaus
