#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mohaf/model.hpp"
#include "mohaf/rng.hpp"
#include "mohaf/utility.hpp"

namespace mohaf {

enum class StepSchedule { kConstant, kInverseSqrt };

inline const char* to_string(StepSchedule s) {
  return s == StepSchedule::kConstant ? "constant" : "inverse_sqrt";
}

struct PricingConfig {
  double rho_min = 0.1;
  double rho_max = 10.0;
  double tau = 0.8;    // target utilization, in (0,1)
  double eta0 = 0.1;   // initial step size
  StepSchedule step_schedule = StepSchedule::kInverseSqrt;
};

inline void check_config(const PricingConfig& cfg) {
  if (!(cfg.rho_min > 0) || !(cfg.rho_min < cfg.rho_max))
    throw std::invalid_argument("pricing: require 0 < rho_min < rho_max");
  if (!(cfg.tau > 0 && cfg.tau < 1)) throw std::invalid_argument("pricing: tau must be in (0,1)");
  if (!(cfg.eta0 > 0)) throw std::invalid_argument("pricing: eta0 must be > 0");
}

// Per-resource unit prices plus the utilization observed in the last round.
// Prices stay inside [rho_min, rho_max] at all times.
struct PricingState {
  std::map<std::string, double> price;             // resource_id -> rho_j
  int round = 0;                                   // completed rounds
  std::map<std::string, double> last_utilization;  // resource_id -> used/C in [0,1]

  double price_of(const std::string& resource_id) const { return price.at(resource_id); }
};

// Initial price equals the resource's unit cost, projected into range.
inline PricingState init_pricing_state(const Instance& inst, const PricingConfig& cfg) {
  PricingState state;
  for (const auto& r : inst.resources)
    state.price[r.id] = std::clamp(r.cost, cfg.rho_min, cfg.rho_max);
  return state;
}

inline double step_size(const PricingConfig& cfg, int round) {
  if (cfg.step_schedule == StepSchedule::kConstant) return cfg.eta0;
  return cfg.eta0 / std::sqrt(static_cast<double>(round) + 1.0);
}

// Projected utilization-driven update:
// rho <- clamp(rho + eta_t * (utilization/C - tau), rho_min, rho_max).
// Pure; the caller applies the returned price.
inline double update_price(const PricingState& state, const Resource& res, double utilization,
                           const PricingConfig& cfg) {
  if (utilization > res.capacity + kCapacityTol)
    throw std::invalid_argument("utilization exceeds capacity for resource " + res.id);
  const double rho = state.price_of(res.id);
  const double drive = utilization / res.capacity - cfg.tau;
  return std::clamp(rho + step_size(cfg, state.round) * drive, cfg.rho_min, cfg.rho_max);
}

// Transaction price: utility scales the unit price between 0.8x and 1.2x of
// rho * demand, clamped to the budget.
inline double transaction_price(double rho, const Request& req, double utility) {
  return std::min(rho * req.demand * (0.8 + 0.4 * utility), req.budget);
}

struct RoundRecord {
  int round = 0;                             // 1-based
  std::map<std::string, double> price;       // post-update prices
  std::map<std::string, double> utilization; // used/C per resource, this round
  double revenue = 0.0;
};

using RoundLog = std::vector<RoundRecord>;

// One allocation mechanism invocation within a pricing round. The mechanism
// sees the current prices and fairness history; round_seed drives any
// randomized mechanism.
using RoundMechanism = std::function<AllocationSet(
    const Instance&, const PricingState&, const FairnessHistory&, std::uint64_t round_seed)>;

// Runs `rounds` auctions against the same instance, updating every resource
// price from its realized utilization after each round and folding winners
// into the fairness history. Recorded prices are post-update.
inline RoundLog run_pricing_rounds(const Instance& inst, const RoundMechanism& mechanism,
                                   const PricingConfig& cfg, int rounds, std::uint64_t seed) {
  if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  check_config(cfg);
  PricingState state = init_pricing_state(inst, cfg);
  FairnessHistory hist;
  RoundLog log;
  log.reserve(static_cast<std::size_t>(rounds));

  for (int t = 0; t < rounds; ++t) {
    const AllocationSet alloc = mechanism(inst, state, hist, mix_seed(seed, static_cast<std::uint64_t>(t)));

    RoundRecord rec;
    rec.round = t + 1;
    std::set<std::string> winners;
    for (const auto& p : alloc.pairs) {
      rec.revenue += p.price;
      winners.insert(p.request_id);
    }
    for (const auto& res : inst.resources) {
      const auto it = alloc.used_capacity.find(res.id);
      const double used = it == alloc.used_capacity.end() ? 0.0 : it->second;
      rec.utilization[res.id] = std::min(used / res.capacity, 1.0);
    }

    for (const auto& res : inst.resources) {
      const auto it = alloc.used_capacity.find(res.id);
      const double used = it == alloc.used_capacity.end() ? 0.0 : it->second;
      rec.price[res.id] = update_price(state, res, used, cfg);
    }
    state.price = rec.price;
    state.last_utilization = rec.utilization;
    state.round += 1;
    hist.record_round(winners);
    log.push_back(std::move(rec));
  }
  return log;
}

struct ConvergenceReport {
  bool price_stable = false;        // all per-resource deltas < 1e-6 in the window
  bool utilization_stable = false;  // all |util - tau| < 0.05 in the window
  bool revenue_stable = false;      // relative revenue spread < 1% in the window
  double max_price_delta = 0.0;
  double max_utilization_deviation = 0.0;
  double revenue_spread = 0.0;
};

inline constexpr double kPriceStabilityEps = 1e-6;
inline constexpr double kUtilizationStabilityEps = 0.05;
inline constexpr double kRevenueStabilityRel = 0.01;

// Stability of the final `window` rounds of a log.
inline ConvergenceReport check_convergence(const RoundLog& log, const PricingConfig& cfg, int window) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  if (static_cast<int>(log.size()) < window)
    throw std::invalid_argument("log shorter than convergence window");
  const std::size_t begin = log.size() - static_cast<std::size_t>(window);

  ConvergenceReport rep;
  for (std::size_t t = begin; t < log.size(); ++t) {
    if (t > begin) {
      for (const auto& [id, rho] : log[t].price) {
        const double delta = std::abs(rho - log[t - 1].price.at(id));
        rep.max_price_delta = std::max(rep.max_price_delta, delta);
      }
    }
    for (const auto& [id, util] : log[t].utilization)
      rep.max_utilization_deviation = std::max(rep.max_utilization_deviation, std::abs(util - cfg.tau));
  }

  double rev_min = log[begin].revenue, rev_max = log[begin].revenue, rev_sum = 0.0;
  for (std::size_t t = begin; t < log.size(); ++t) {
    rev_min = std::min(rev_min, log[t].revenue);
    rev_max = std::max(rev_max, log[t].revenue);
    rev_sum += log[t].revenue;
  }
  const double rev_mean = rev_sum / static_cast<double>(window);
  rep.revenue_spread = rev_mean > 0.0 ? (rev_max - rev_min) / rev_mean : (rev_max - rev_min);

  rep.price_stable = rep.max_price_delta < kPriceStabilityEps;
  rep.utilization_stable = rep.max_utilization_deviation < kUtilizationStabilityEps;
  rep.revenue_stable = rep.revenue_spread < kRevenueStabilityRel;
  return rep;
}

}  // namespace mohaf
