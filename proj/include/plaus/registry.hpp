#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "plaus/ensembles.hpp"
#include "plaus/forecasters.hpp"
#include "plaus/market.hpp"
#include "plaus/pi_digits.hpp"
#include "plaus/problems.hpp"

namespace plaus {

// A component named on the command line as `name[:key=value,...]`.
// The value of `base` (override forecasters) may itself contain ':' and ','
// and runs up to a following ",file=" or the end of the string.
class ComponentSpec {
 public:
  static ComponentSpec parse(const std::string& text);

  const std::string& name() const noexcept { return name_; }
  const std::string& text() const noexcept { return text_; }
  bool has(const std::string& key) const { return params_.contains(key); }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  // Throws UnknownNameError for any key outside `allowed`.
  void expect_keys(std::initializer_list<const char*> allowed) const;

 private:
  std::string text_;
  std::string name_;
  std::map<std::string, std::string> params_;
};

// Loads the pi digit file on first use.
class PiDigitSource {
 public:
  explicit PiDigitSource(std::filesystem::path path = default_pi_digit_path())
      : path_(std::move(path)) {}
  std::shared_ptr<const PiDigitStore> get() const;
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  mutable std::shared_ptr<const PiDigitStore> store_;
};

ProblemPtr make_problem(const std::string& text, const PiDigitSource& digits);
EnsemblePtr make_ensemble(const std::string& text);
// `problem` is used by forecasters that need it (oracle, induction).
ForecasterPtr make_forecaster(const std::string& text, const ProblemPtr& problem,
                              const PiDigitSource& digits);
BuyerPtr make_buyer(const std::string& text);

// Override tables: JSON object mapping instance keys to values in [0,1]. A
// key is the hex of the integer value (canonical length) or "hex/length".
std::map<Instance, double> load_override_table(const std::filesystem::path& path);
Instance instance_from_key(const std::string& key);

// "8..18" or "12".
std::vector<unsigned> parse_length_range(const std::string& text);

}  // namespace plaus
