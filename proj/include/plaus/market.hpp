#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "plaus/ensembles.hpp"
#include "plaus/forecasters.hpp"
#include "plaus/problems.hpp"

namespace plaus {

// Seller prices are a fixed function of the asset: the seller's coins for
// asset x come from path (kSellerExperiment, n, bits(x), 0).
inline constexpr std::uint64_t kSellerExperiment = 0x5e11e4;
inline constexpr std::uint64_t kMarketExperiment = 3;

enum class PayoffKind {
  kDeterministic,  // one settlement per length; F = 1_Pi
  kExpectation,    // mean of `reps` independent settlements per length
};
std::string to_string(PayoffKind kind);
PayoffKind payoff_kind_from_string(const std::string& text);

struct MarketConfig {
  ProblemPtr problem;
  EnsemblePtr ensemble;
  ForecasterPtr seller;
  unsigned n_lo = 0;
  unsigned n_hi = 0;
  PayoffKind payoff_kind = PayoffKind::kExpectation;
  unsigned reps = 100;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

// Rejects configurations whose lengths the payoff oracle cannot settle.
void validate(const MarketConfig& config);

// What a buyer can see: the ensemble and the seller's price for any asset.
class MarketView {
 public:
  MarketView(const MarketConfig& config, unsigned n) : config_(&config), n_(n) {}
  double price(const Instance& asset) const;
  const Ensemble& ensemble() const { return *config_->ensemble; }
  unsigned length() const noexcept { return n_; }

 private:
  const MarketConfig* config_;
  unsigned n_;
};

struct Position {
  Instance asset;
  double quantity = 0.0;  // negative = short sale
};

struct TradingCaps {
  std::size_t max_support = 32;
  double max_quantity = 1.0;
  double max_notional = 32.0;  // sum |g(x)| f(x)
};

class BuyerStrategy {
 public:
  virtual ~BuyerStrategy() = default;
  virtual std::string name() const = 0;
  virtual const ResourceBudget& budget() const = 0;
  virtual const TradingCaps& caps() const = 0;
  virtual std::vector<Position> select(unsigned n, const MarketView& view,
                                       RandomStream& stream) const = 0;
};

using BuyerPtr = std::shared_ptr<const BuyerStrategy>;

struct FermatGreedyParams {
  unsigned rounds = 10;
  std::uint64_t sieve_bound = 100;
  double margin = 0.1;
  TradingCaps caps;
  // Assets drawn from the ensemble before filtering; 0 means 4 * support.
  std::size_t candidates = 0;
};

// Draws candidate assets, estimates F with its own Fermat forecaster, goes
// long where estimate - f > margin and short where f - estimate > margin,
// quantity = edge * max_quantity, largest edges first, until a cap binds.
BuyerPtr make_fermat_greedy(const FermatGreedyParams& params);

struct Settlement {
  double gain = 0.0;
  std::size_t support = 0;
  double notional = 0.0;
};

// Throws ConstraintViolation naming the cap when positions break one.
void check_positions(const std::vector<Position>& positions, const TradingCaps& caps,
                     const MarketView& view);

// b = sum over positions of (F(x) - f(x)) g(x), with F = 1_Pi.
Settlement settle_positions(const MarketConfig& config, unsigned n,
                            const std::vector<Position>& positions, const TradingCaps& caps);

// One settlement of the buyer's selection at length n.
Settlement settle(const MarketConfig& config, const BuyerStrategy& buyer, unsigned n,
                  RandomStream& stream);

struct GainPoint {
  unsigned n = 0;
  double mean_gain = 0.0;
  double std_error = 0.0;
  unsigned reps = 0;
};

struct GainSeries {
  std::vector<GainPoint> points;  // consecutive n
};

// Settles every length in [n_lo, n_hi]; repetition r at length n uses path
// (kMarketExperiment, n, r, 0).
GainSeries run_market(const MarketConfig& config, const BuyerStrategy& buyer);

struct ArbitrageParams {
  double delta = 0.05;                // non-negligibility floor
  double rho = 0.5;                   // "infinitely often" proxy frequency
  std::optional<unsigned> burn_in;    // n0; defaults to min(n) + 2
};

struct NegligibilityReport {
  unsigned burn_in = 0;
  std::size_t tested = 0;          // lengths with n > n0
  std::size_t positive_hits = 0;   // b_n >= delta
  std::size_t negative_hits = 0;   // -b_n >= delta
  bool positive_non_negligible = false;
  bool negative_non_negligible = false;
  // Slope of -ln b_n against ln n over positive b_n; diagnostic only.
  std::optional<double> decay_exponent;
};

// Needs at least 8 lengths beyond n0.
NegligibilityReport classify_negligibility(const GainSeries& series, const ArbitrageParams& params);

struct ArbitrageVerdict {
  bool strict = false;
  bool relaxed = false;
  ArbitrageParams params;  // burn_in resolved
  NegligibilityReport negligibility;
  std::size_t nonnegative_count = 0;
  std::size_t positive_count = 0;  // b_n > 0 among n > n0
  std::string label = "finite-horizon proxy";
};

// strict: every b_n >= 0 and b_n > 0 for at least rho of n > n0.
// relaxed: +b non-negligible i.o. and -b not.
ArbitrageVerdict arbitrage_verdict(const GainSeries& series, const ArbitrageParams& params);

}  // namespace plaus
