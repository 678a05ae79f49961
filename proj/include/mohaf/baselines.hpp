#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "mohaf/model.hpp"
#include "mohaf/pricing.hpp"
#include "mohaf/rng.hpp"
#include "mohaf/utility.hpp"

namespace mohaf {

// Score weights of the priority-ordered baseline: w1 * priority + w2 *
// min-max normalized budget.
struct PriorityScoreWeights {
  double w1 = 0.5;
  double w2 = 0.5;
};

inline void check_weights(const PriorityScoreWeights& w) {
  if (w.w1 < 0 || w.w2 < 0 || !(w.w1 + w.w2 > 0))
    throw std::invalid_argument("priority score weights must be >= 0 and not both zero");
}

namespace detail {

// QoS + remaining-capacity compatibility; price checks are mechanism-specific.
inline bool compatible(const Request& req, const Resource& res, double used) {
  if (used + req.demand > res.capacity + kCapacityTol) return false;
  if (res.reliability < req.min_reliability) return false;
  if (res.availability < req.min_availability) return false;
  return latency(req.location, res.location) <= req.max_latency;
}

}  // namespace detail

// Pay-your-bid auction with bid = full budget. Requests are served in
// descending bid order (ties by id) and matched to the cheapest-cost
// compatible resource with remaining capacity. Deterministic; the seed is
// part of the common mechanism signature only.
inline AllocationSet first_price_auction(const Instance& inst, const PricingState& prices,
                                         const FairnessHistory& hist, const UtilityWeights& uw,
                                         double beta_f, [[maybe_unused]] std::uint64_t seed) {
  (void)prices;
  std::vector<std::size_t> order(inst.requests.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (inst.requests[a].budget != inst.requests[b].budget)
      return inst.requests[a].budget > inst.requests[b].budget;
    return inst.requests[a].id < inst.requests[b].id;
  });

  AllocationSet alloc;
  std::vector<double> used(inst.resources.size(), 0.0);
  for (const std::size_t i : order) {
    const Request& req = inst.requests[i];
    std::size_t best = inst.resources.size();
    for (std::size_t j = 0; j < inst.resources.size(); ++j) {
      if (!detail::compatible(req, inst.resources[j], used[j])) continue;
      if (best == inst.resources.size() || inst.resources[j].cost < inst.resources[best].cost ||
          (inst.resources[j].cost == inst.resources[best].cost &&
           inst.resources[j].id < inst.resources[best].id))
        best = j;
    }
    if (best == inst.resources.size()) continue;
    const Resource& res = inst.resources[best];
    insert_allocation(alloc, req, res, req.budget, aggregate_utility(req, res, hist, uw, beta_f));
    used[best] += req.demand;
  }
  return alloc;
}

// Serves requests in descending w1*priority + w2*normalized-budget order;
// each takes its highest-aggregate-utility compatible resource and pays the
// current transaction price.
inline AllocationSet greedy_priority_auction(const Instance& inst, const PriorityScoreWeights& w,
                                             const PricingState& prices, const FairnessHistory& hist,
                                             const UtilityWeights& uw, double beta_f,
                                             [[maybe_unused]] std::uint64_t seed) {
  check_weights(w);
  double max_budget = 0.0;
  for (const auto& req : inst.requests) max_budget = std::max(max_budget, req.budget);

  std::vector<std::size_t> order(inst.requests.size());
  std::vector<double> score(inst.requests.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
    const Request& req = inst.requests[i];
    score[i] = w.w1 * req.priority + w.w2 * (max_budget > 0 ? req.budget / max_budget : 0.0);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (score[a] != score[b]) return score[a] > score[b];
    return inst.requests[a].id < inst.requests[b].id;
  });

  AllocationSet alloc;
  std::vector<double> used(inst.resources.size(), 0.0);
  for (const std::size_t i : order) {
    const Request& req = inst.requests[i];
    std::size_t best = inst.resources.size();
    double best_utility = -1.0;
    for (std::size_t j = 0; j < inst.resources.size(); ++j) {
      if (!detail::compatible(req, inst.resources[j], used[j])) continue;
      const double u = aggregate_utility(req, inst.resources[j], hist, uw, beta_f);
      if (u > best_utility ||
          (u == best_utility && best != inst.resources.size() &&
           inst.resources[j].id < inst.resources[best].id)) {
        best_utility = u;
        best = j;
      }
    }
    if (best == inst.resources.size()) continue;
    const Resource& res = inst.resources[best];
    const double price = transaction_price(prices.price_of(res.id), req, best_utility);
    insert_allocation(alloc, req, res, price, best_utility);
    used[best] += req.demand;
  }
  return alloc;
}

// Seeded-random reference: shuffled request order, uniformly random
// compatible resource, transaction pricing. Deterministic per seed.
inline AllocationSet random_auction(const Instance& inst, const PricingState& prices,
                                    const FairnessHistory& hist, const UtilityWeights& uw,
                                    double beta_f, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> order(inst.requests.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);

  AllocationSet alloc;
  std::vector<double> used(inst.resources.size(), 0.0);
  std::vector<std::size_t> candidates;
  for (const std::size_t i : order) {
    const Request& req = inst.requests[i];
    candidates.clear();
    for (std::size_t j = 0; j < inst.resources.size(); ++j)
      if (detail::compatible(req, inst.resources[j], used[j])) candidates.push_back(j);
    if (candidates.empty()) continue;
    const std::size_t j = candidates[rng.uniform_int(0, candidates.size() - 1)];
    const Resource& res = inst.resources[j];
    const double utility = aggregate_utility(req, res, hist, uw, beta_f);
    const double price = transaction_price(prices.price_of(res.id), req, utility);
    insert_allocation(alloc, req, res, price, utility);
    used[j] += req.demand;
  }
  return alloc;
}

}  // namespace mohaf
