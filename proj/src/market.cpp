#include "plaus/market.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <span>

#include "plaus/errors.hpp"
#include "plaus/parallel.hpp"

namespace plaus {

std::string to_string(PayoffKind kind) {
  return kind == PayoffKind::kDeterministic ? "deterministic" : "expectation";
}

PayoffKind payoff_kind_from_string(const std::string& text) {
  if (text == "deterministic") return PayoffKind::kDeterministic;
  if (text == "expectation") return PayoffKind::kExpectation;
  throw UnknownNameError("payoff kind", text);
}

void validate(const MarketConfig& config) {
  if (!config.problem || !config.ensemble || !config.seller) {
    throw InvalidArgument("market needs a problem, an ensemble and a seller");
  }
  if (config.n_lo == 0 || config.n_lo > config.n_hi) {
    throw InvalidArgument("market length range must satisfy 1 <= lo <= hi");
  }
  if (config.n_hi > config.problem->feasible_length_bound()) {
    throw ResourceGuardError("payoff oracle " + config.problem->name() + " cannot settle length " +
                             std::to_string(config.n_hi) + " (feasible bound " +
                             std::to_string(config.problem->feasible_length_bound()) + ")");
  }
  if (config.reps == 0) throw InvalidArgument("market needs at least one repetition");
}

double MarketView::price(const Instance& asset) const {
  RandomStream coins(config_->seed, {kSellerExperiment, n_, asset.bits(), 0});
  return config_->seller->evaluate(asset, coins);
}

void check_positions(const std::vector<Position>& positions, const TradingCaps& caps,
                     const MarketView& view) {
  if (positions.size() > caps.max_support) {
    throw ConstraintViolation("support", std::to_string(positions.size()) + " positions exceed cap " +
                                             std::to_string(caps.max_support));
  }
  std::set<Instance> seen;
  double notional = 0.0;
  for (const Position& p : positions) {
    if (!std::isfinite(p.quantity) || std::fabs(p.quantity) > caps.max_quantity) {
      throw ConstraintViolation("quantity", "|g| = " + std::to_string(std::fabs(p.quantity)) +
                                                " exceeds cap " + std::to_string(caps.max_quantity));
    }
    if (!seen.insert(p.asset).second) {
      throw ConstraintViolation("distinct-assets", "asset " + p.asset.to_string() + " listed twice");
    }
    notional += std::fabs(p.quantity) * view.price(p.asset);
  }
  if (notional > caps.max_notional * (1.0 + 1e-12)) {
    throw ConstraintViolation("notional", "gross notional " + std::to_string(notional) +
                                              " exceeds cap " + std::to_string(caps.max_notional));
  }
}

Settlement settle_positions(const MarketConfig& config, unsigned n,
                            const std::vector<Position>& positions, const TradingCaps& caps) {
  const MarketView view(config, n);
  check_positions(positions, caps, view);
  std::vector<double> terms(positions.size());
  std::vector<double> exposure(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const Position& p = positions[i];
    const double payoff = config.problem->decide(p.asset) ? 1.0 : 0.0;
    const double price = view.price(p.asset);
    terms[i] = (payoff - price) * p.quantity;
    exposure[i] = std::fabs(p.quantity) * price;
  }
  return {pairwise_sum(terms), positions.size(), pairwise_sum(exposure)};
}

Settlement settle(const MarketConfig& config, const BuyerStrategy& buyer, unsigned n,
                  RandomStream& stream) {
  const MarketView view(config, n);
  return settle_positions(config, n, buyer.select(n, view, stream), buyer.caps());
}

namespace {

class FermatGreedy final : public BuyerStrategy {
 public:
  explicit FermatGreedy(const FermatGreedyParams& params)
      : params_(params), estimator_(make_fermat(params.rounds, params.sieve_bound)) {
    if (params_.candidates == 0) params_.candidates = 4 * params_.caps.max_support;
    if (!(params_.margin >= 0.0)) throw InvalidArgument("margin must be nonnegative");
    if (!(params_.caps.max_quantity > 0.0)) throw InvalidArgument("quantity cap must be positive");
    budget_ = {"poly", std::nullopt, params_.rounds * params_.candidates, std::nullopt};
  }

  std::string name() const override {
    std::string margin = std::to_string(params_.margin);
    margin.erase(margin.find_last_not_of('0') + 1);
    if (margin.back() == '.') margin.push_back('0');
    return "fermat-greedy:k=" + std::to_string(params_.rounds) +
           ",B=" + std::to_string(params_.sieve_bound) +
           ",support=" + std::to_string(params_.caps.max_support) + ",margin=" + margin;
  }
  const ResourceBudget& budget() const override { return budget_; }
  const TradingCaps& caps() const override { return params_.caps; }

  std::vector<Position> select(unsigned n, const MarketView& view,
                               RandomStream& stream) const override {
    std::vector<Instance> candidates;
    std::set<Instance> seen;
    for (std::size_t c = 0; c < params_.candidates; ++c) {
      Instance x = view.ensemble().sample(n, stream);
      if (seen.insert(x).second) candidates.push_back(x);
    }

    struct Edge {
      Instance asset;
      double edge;
      double price;
    };
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      RandomStream coins = stream.fork(2 + i);
      double estimate = 0.0;
      try {
        estimate = estimator_->evaluate(candidates[i], coins);
      } catch (const DomainError&) {
        continue;  // outside the estimator's domain (e.g. even m)
      }
      const double price = view.price(candidates[i]);
      const double edge = estimate - price;
      if (std::fabs(edge) > params_.margin) edges.push_back({candidates[i], edge, price});
    }
    std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
      return std::fabs(a.edge) > std::fabs(b.edge);
    });

    std::vector<Position> positions;
    double notional = 0.0;
    for (const Edge& e : edges) {
      if (positions.size() >= params_.caps.max_support) break;
      const double quantity = e.edge * params_.caps.max_quantity;
      const double cost = std::fabs(quantity) * e.price;
      if (notional + cost > params_.caps.max_notional) break;
      notional += cost;
      positions.push_back({e.asset, quantity});
    }
    return positions;
  }

 private:
  FermatGreedyParams params_;
  ForecasterPtr estimator_;
  ResourceBudget budget_;
};

}  // namespace

BuyerPtr make_fermat_greedy(const FermatGreedyParams& params) {
  return std::make_shared<FermatGreedy>(params);
}

GainSeries run_market(const MarketConfig& config, const BuyerStrategy& buyer) {
  validate(config);
  const unsigned reps = config.payoff_kind == PayoffKind::kDeterministic ? 1 : config.reps;
  const unsigned lengths = config.n_hi - config.n_lo + 1;
  std::vector<double> gains(static_cast<std::size_t>(lengths) * reps);
  parallel_for(gains.size(), config.jobs, [&](std::size_t slot) {
    const unsigned n = config.n_lo + static_cast<unsigned>(slot / reps);
    const std::uint64_t rep = slot % reps;
    RandomStream stream(config.seed, {kMarketExperiment, n, rep, 0});
    gains[slot] = settle(config, buyer, n, stream).gain;
  });

  GainSeries series;
  for (unsigned l = 0; l < lengths; ++l) {
    const std::span<const double> block(gains.data() + static_cast<std::size_t>(l) * reps, reps);
    GainPoint point;
    point.n = config.n_lo + l;
    point.reps = reps;
    point.mean_gain = pairwise_sum(block) / reps;
    if (reps > 1) {
      std::vector<double> squares(reps);
      for (unsigned r = 0; r < reps; ++r) {
        squares[r] = (block[r] - point.mean_gain) * (block[r] - point.mean_gain);
      }
      point.std_error = std::sqrt(pairwise_sum(squares) / (reps - 1.0) / reps);
    }
    series.points.push_back(point);
  }
  return series;
}

NegligibilityReport classify_negligibility(const GainSeries& series, const ArbitrageParams& params) {
  if (series.points.empty()) throw InvalidArgument("gain series is empty");
  for (std::size_t i = 1; i < series.points.size(); ++i) {
    if (series.points[i].n != series.points[i - 1].n + 1) {
      throw InvalidArgument("gain series must cover consecutive lengths");
    }
  }
  if (!(params.rho > 0.0 && params.rho <= 1.0)) throw InvalidArgument("rho must lie in (0,1]");
  if (!(params.delta > 0.0)) throw InvalidArgument("delta must be positive");

  NegligibilityReport report;
  report.burn_in = params.burn_in.value_or(series.points.front().n + 2);
  for (const GainPoint& p : series.points) {
    if (!std::isfinite(p.mean_gain)) throw InvalidArgument("gain series has a non-finite entry");
    if (p.n <= report.burn_in) continue;
    ++report.tested;
    if (p.mean_gain >= params.delta) ++report.positive_hits;
    if (-p.mean_gain >= params.delta) ++report.negative_hits;
  }
  if (report.tested < 8) {
    throw InvalidArgument("need at least 8 lengths beyond n0=" + std::to_string(report.burn_in) +
                          ", have " + std::to_string(report.tested));
  }
  const double needed = params.rho * static_cast<double>(report.tested);
  report.positive_non_negligible = static_cast<double>(report.positive_hits) >= needed;
  report.negative_non_negligible = static_cast<double>(report.negative_hits) >= needed;

  // Least-squares slope of -ln b_n on ln n.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  for (const GainPoint& p : series.points) {
    if (p.mean_gain <= 0.0) continue;
    const double x = std::log(static_cast<double>(p.n));
    const double y = -std::log(p.mean_gain);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  const double denom = static_cast<double>(count) * sxx - sx * sx;
  if (count >= 2 && denom > 0.0) {
    report.decay_exponent = (static_cast<double>(count) * sxy - sx * sy) / denom;
  }
  return report;
}

ArbitrageVerdict arbitrage_verdict(const GainSeries& series, const ArbitrageParams& params) {
  ArbitrageVerdict verdict;
  verdict.negligibility = classify_negligibility(series, params);
  verdict.params = params;
  verdict.params.burn_in = verdict.negligibility.burn_in;

  bool all_nonnegative = true;
  for (const GainPoint& p : series.points) {
    if (p.mean_gain >= 0.0) {
      ++verdict.nonnegative_count;
    } else {
      all_nonnegative = false;
    }
    if (p.n > verdict.negligibility.burn_in && p.mean_gain > 0.0) ++verdict.positive_count;
  }
  const double needed = params.rho * static_cast<double>(verdict.negligibility.tested);
  verdict.strict = all_nonnegative && static_cast<double>(verdict.positive_count) >= needed;
  verdict.relaxed = verdict.negligibility.positive_non_negligible &&
                    !verdict.negligibility.negative_non_negligible;
  return verdict;
}

}  // namespace plaus
