#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "mohaf/model.hpp"
#include "mohaf/objective.hpp"
#include "mohaf/pricing.hpp"
#include "mohaf/rng.hpp"
#include "mohaf/utility.hpp"

namespace mohaf {

// A feasible (request, resource) candidate at enumeration time.
struct Bid {
  std::string request_id;
  std::string resource_id;
  double utility = 0.0;          // aggregate utility when enumerated
  double tentative_price = 0.0;  // market price at current rho, <= budget
};

// Enumerates every pair that passes QoS, fits an empty resource, and whose
// market price rho * d * (0.8 + 0.4 U) stays within the budget. Order is
// request-major, resource-minor, following instance order.
inline std::vector<Bid> enumerate_bids(const Instance& inst, const PricingState& prices,
                                       const FairnessHistory& hist, const UtilityWeights& uw,
                                       double beta_f = kDefaultFairnessPenalty) {
  std::vector<Bid> bids;
  for (const auto& req : inst.requests) {
    const double fair = fairness_score(req, hist, beta_f);
    for (const auto& res : inst.resources) {
      if (req.demand > res.capacity + kCapacityTol) continue;
      if (res.reliability < req.min_reliability) continue;
      if (res.availability < req.min_availability) continue;
      if (latency(req.location, res.location) > req.max_latency) continue;
      const double utility = uw.alpha * cost_score(req, res) + uw.beta * qos_score(req, res) +
                             uw.gamma * energy_score(res) + uw.delta * fair;
      const double price = prices.price_of(res.id) * req.demand * (0.8 + 0.4 * utility);
      if (price > req.budget) continue;
      bids.push_back({req.id, res.id, utility, price});
    }
  }
  return bids;
}

// Greedy selection by maximum marginal gain over a lazy priority queue.
// Ties break lexicographically on (request_id, resource_id). Stops when no
// remaining feasible bid improves the objective.
inline AllocationSet greedy_allocate(const Instance& inst, const std::vector<Bid>& bids,
                                     const ObjectiveWeights& ow) {
  const InstanceIndex idx = build_index(inst);
  ObjectiveTracker tracker(ow);

  struct Entry {
    double gain;
    std::uint32_t bid;
  };
  const auto worse = [&bids](const Entry& a, const Entry& b) {
    if (a.gain != b.gain) return a.gain < b.gain;
    const Bid& ba = bids[a.bid];
    const Bid& bb = bids[b.bid];
    if (ba.request_id != bb.request_id) return ba.request_id > bb.request_id;
    return ba.resource_id > bb.resource_id;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);

  std::vector<double> used(inst.resources.size(), 0.0);
  std::vector<std::size_t> bid_request(bids.size()), bid_resource(bids.size());
  for (std::uint32_t b = 0; b < bids.size(); ++b) {
    bid_request[b] = idx.request.at(bids[b].request_id);
    bid_resource[b] = idx.resource.at(bids[b].resource_id);
    const double energy = inst.resources[bid_resource[b]].energy_eff;
    heap.push({tracker.gain(bids[b].request_id, bids[b].utility, energy), b});
  }

  AllocationSet alloc;
  std::unordered_set<std::string> assigned;
  while (!heap.empty()) {
    const Entry top = heap.top();
    heap.pop();
    if (top.gain <= 0.0) break;
    const Bid& bid = bids[top.bid];
    if (assigned.count(bid.request_id)) continue;
    const Request& req = inst.requests[bid_request[top.bid]];
    const Resource& res = inst.resources[bid_resource[top.bid]];
    if (used[bid_resource[top.bid]] + req.demand > res.capacity + kCapacityTol) continue;

    // Lazy re-evaluation: accept only if the cached gain is still current.
    const double fresh = tracker.gain(bid.request_id, bid.utility, res.energy_eff);
    if (fresh < top.gain - 1e-15) {
      heap.push({fresh, top.bid});
      continue;
    }
    insert_allocation(alloc, req, res, bid.tentative_price, bid.utility);
    used[bid_resource[top.bid]] += req.demand;
    assigned.insert(bid.request_id);
    tracker.commit(bid.request_id, bid.utility, res.energy_eff);
  }
  return alloc;
}

inline constexpr std::size_t kBruteForceMaxRequests = 10;
inline constexpr std::size_t kBruteForceMaxResources = 4;

// Exact maximizer of F over all feasible assignments; test oracle for the
// greedy guarantee. Enumerates {none} + compatible bids per request, pruning
// by remaining capacity. Guarded against instances too large to enumerate.
inline AllocationSet brute_force_allocate(const Instance& inst, const std::vector<Bid>& bids,
                                          const ObjectiveWeights& ow) {
  if (inst.requests.size() > kBruteForceMaxRequests || inst.resources.size() > kBruteForceMaxResources)
    throw std::invalid_argument("instance too large for exhaustive search");
  const InstanceIndex idx = build_index(inst);

  // Bid indices grouped per request, in enumeration order.
  std::vector<std::vector<std::uint32_t>> options(inst.requests.size());
  for (std::uint32_t b = 0; b < bids.size(); ++b)
    options[idx.request.at(bids[b].request_id)].push_back(b);

  std::vector<double> used(inst.resources.size(), 0.0);
  std::vector<std::int64_t> choice(inst.requests.size(), -1);
  std::vector<std::int64_t> best_choice;
  double best_value = -1.0;

  const std::function<void(std::size_t)> search = [&](std::size_t i) {
    if (i == inst.requests.size()) {
      AllocationSet alloc;
      for (std::size_t q = 0; q < choice.size(); ++q) {
        if (choice[q] < 0) continue;
        const Bid& bid = bids[static_cast<std::size_t>(choice[q])];
        insert_allocation(alloc, inst.requests[q], inst.resources[idx.resource.at(bid.resource_id)],
                          bid.tentative_price, bid.utility);
      }
      const double value = objective_value(alloc, inst, ow);
      if (value > best_value) {
        best_value = value;
        best_choice = choice;
      }
      return;
    }
    choice[i] = -1;
    search(i + 1);
    for (const std::uint32_t b : options[i]) {
      const std::size_t j = idx.resource.at(bids[b].resource_id);
      if (used[j] + inst.requests[i].demand > inst.resources[j].capacity + kCapacityTol) continue;
      used[j] += inst.requests[i].demand;
      choice[i] = b;
      search(i + 1);
      choice[i] = -1;
      used[j] -= inst.requests[i].demand;
    }
  };
  search(0);

  AllocationSet best;
  for (std::size_t q = 0; q < best_choice.size(); ++q) {
    if (best_choice[q] < 0) continue;
    const Bid& bid = bids[static_cast<std::size_t>(best_choice[q])];
    insert_allocation(best, inst.requests[q], inst.resources[idx.resource.at(bid.resource_id)],
                      bid.tentative_price, bid.utility);
  }
  return best;
}

struct ClusterPlan {
  int k = 1;
  std::map<std::string, int> resource_assignment;
  std::map<std::string, int> request_assignment;
  std::vector<std::array<double, 4>> centroids;  // (x, y, cost, capacity), min-max normalized
};

namespace detail {

inline double sq_dist(const std::array<double, 4>& a, const std::array<double, 4>& b, int dims) {
  double s = 0.0;
  for (int d = 0; d < dims; ++d) s += (a[d] - b[d]) * (a[d] - b[d]);
  return s;
}

inline int nearest_centroid(const std::vector<std::array<double, 4>>& centroids,
                            const std::array<double, 4>& point, int dims) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int c = 0; c < static_cast<int>(centroids.size()); ++c) {
    const double d = sq_dist(centroids[c], point, dims);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

}  // namespace detail

inline constexpr double kKmeansShiftEps = 1e-6;

// Lloyd's algorithm over resource features (x, y, cost, capacity), each
// min-max normalized to [0,1] over the resource set. k-means++ seeding from
// the seeded generator; deterministic for a fixed seed. Requests join the
// cluster of the nearest centroid by normalized location only.
inline ClusterPlan kmeans_cluster(const Instance& inst, int k, int max_iters, std::uint64_t seed) {
  const std::size_t m = inst.resources.size();
  if (k <= 0) throw std::invalid_argument("k must be positive");
  if (static_cast<std::size_t>(k) > m) throw std::invalid_argument("k exceeds resource count");
  if (max_iters <= 0) throw std::invalid_argument("max_iters must be positive");

  std::array<double, 4> lo{}, hi{};
  for (int d = 0; d < 4; ++d) {
    lo[d] = std::numeric_limits<double>::infinity();
    hi[d] = -std::numeric_limits<double>::infinity();
  }
  const auto raw = [](const Resource& r) {
    return std::array<double, 4>{r.location.x, r.location.y, r.cost, r.capacity};
  };
  for (const auto& r : inst.resources) {
    const auto f = raw(r);
    for (int d = 0; d < 4; ++d) {
      lo[d] = std::min(lo[d], f[d]);
      hi[d] = std::max(hi[d], f[d]);
    }
  }
  const auto normalize = [&](const std::array<double, 4>& f) {
    std::array<double, 4> out{};
    for (int d = 0; d < 4; ++d) out[d] = hi[d] > lo[d] ? (f[d] - lo[d]) / (hi[d] - lo[d]) : 0.0;
    return out;
  };

  std::vector<std::array<double, 4>> features(m);
  for (std::size_t j = 0; j < m; ++j) features[j] = normalize(raw(inst.resources[j]));

  // k-means++ seeding.
  Rng rng(seed);
  std::vector<std::array<double, 4>> centroids;
  centroids.reserve(static_cast<std::size_t>(k));
  centroids.push_back(features[rng.uniform_int(0, m - 1)]);
  std::vector<double> dist2(m);
  while (centroids.size() < static_cast<std::size_t>(k)) {
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      dist2[j] = detail::sq_dist(features[j], centroids[0], 4);
      for (std::size_t c = 1; c < centroids.size(); ++c)
        dist2[j] = std::min(dist2[j], detail::sq_dist(features[j], centroids[c], 4));
      total += dist2[j];
    }
    std::size_t pick = 0;
    if (total > 0.0) {
      const double r = rng.uniform(0.0, total);
      double acc = 0.0;
      pick = m - 1;
      for (std::size_t j = 0; j < m; ++j) {
        acc += dist2[j];
        if (acc >= r) {
          pick = j;
          break;
        }
      }
    } else {
      pick = rng.uniform_int(0, m - 1);
    }
    centroids.push_back(features[pick]);
  }

  // Lloyd iterations until centroid shift < eps or max_iters.
  std::vector<int> assignment(m, 0);
  for (int iter = 0; iter < max_iters; ++iter) {
    for (std::size_t j = 0; j < m; ++j)
      assignment[j] = detail::nearest_centroid(centroids, features[j], 4);

    double shift = 0.0;
    for (int c = 0; c < k; ++c) {
      std::array<double, 4> mean{};
      std::size_t count = 0;
      for (std::size_t j = 0; j < m; ++j) {
        if (assignment[j] != c) continue;
        for (int d = 0; d < 4; ++d) mean[d] += features[j][d];
        ++count;
      }
      if (count == 0) continue;  // empty cluster keeps its centroid
      for (int d = 0; d < 4; ++d) mean[d] /= static_cast<double>(count);
      shift = std::max(shift, std::sqrt(detail::sq_dist(mean, centroids[c], 4)));
      centroids[c] = mean;
    }
    if (shift < kKmeansShiftEps) break;
  }
  for (std::size_t j = 0; j < m; ++j)
    assignment[j] = detail::nearest_centroid(centroids, features[j], 4);

  ClusterPlan plan;
  plan.k = k;
  plan.centroids = centroids;
  for (std::size_t j = 0; j < m; ++j) plan.resource_assignment[inst.resources[j].id] = assignment[j];
  for (const auto& q : inst.requests) {
    const std::array<double, 4> f = normalize({q.location.x, q.location.y, 0.0, 0.0});
    plan.request_assignment[q.id] = detail::nearest_centroid(centroids, f, 2);
  }
  return plan;
}

struct ClusterConfig {
  int activation_threshold = 200;  // flat greedy at or below this many resources
  int kmeans_max_iters = 100;
  std::uint64_t seed = 0;
  int threads = 1;  // per-cluster allocations are independent
};

// Counters surfaced to the scalability study.
struct MohafRunStats {
  std::size_t bid_count = 0;
  int clusters_used = 0;  // 0 when the flat path ran
};

// The full MOHAF mechanism. Small markets run flat enumerate + greedy; above
// the activation threshold the market is partitioned with k = floor(sqrt(M))
// and each cluster is auctioned independently (requests only bid on
// same-cluster resources), then merged.
inline AllocationSet hierarchical_allocate(const Instance& inst, const PricingState& prices,
                                           const FairnessHistory& hist, const UtilityWeights& uw,
                                           const ObjectiveWeights& ow, const ClusterConfig& cfg,
                                           double beta_f = kDefaultFairnessPenalty,
                                           MohafRunStats* stats = nullptr) {
  const std::size_t m = inst.resources.size();
  if (m <= static_cast<std::size_t>(cfg.activation_threshold)) {
    const std::vector<Bid> bids = enumerate_bids(inst, prices, hist, uw, beta_f);
    if (stats) {
      stats->bid_count = bids.size();
      stats->clusters_used = 0;
    }
    return greedy_allocate(inst, bids, ow);
  }

  const int k = std::max(1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(m)))));
  const ClusterPlan plan = kmeans_cluster(inst, k, cfg.kmeans_max_iters, cfg.seed);

  std::vector<Instance> sub(static_cast<std::size_t>(k));
  for (const auto& r : inst.resources) sub[plan.resource_assignment.at(r.id)].resources.push_back(r);
  for (const auto& q : inst.requests) sub[plan.request_assignment.at(q.id)].requests.push_back(q);

  std::vector<AllocationSet> parts(static_cast<std::size_t>(k));
  std::vector<std::size_t> bid_counts(static_cast<std::size_t>(k), 0);
  const auto solve_cluster = [&](int c) {
    const std::vector<Bid> bids = enumerate_bids(sub[c], prices, hist, uw, beta_f);
    bid_counts[c] = bids.size();
    parts[c] = greedy_allocate(sub[c], bids, ow);
  };

  if (cfg.threads > 1) {
    std::vector<std::future<void>> futures;
    futures.reserve(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c)
      futures.push_back(std::async(std::launch::async, solve_cluster, c));
    for (auto& f : futures) f.get();
  } else {
    for (int c = 0; c < k; ++c) solve_cluster(c);
  }

  AllocationSet merged;
  std::size_t total_bids = 0;
  for (int c = 0; c < k; ++c) {
    total_bids += bid_counts[c];
    for (const auto& p : parts[c].pairs) merged.pairs.push_back(p);
    for (const auto& [id, used] : parts[c].used_capacity) merged.used_capacity[id] += used;
  }
  if (stats) {
    stats->bid_count = total_bids;
    stats->clusters_used = k;
  }
  return merged;
}

}  // namespace mohaf
