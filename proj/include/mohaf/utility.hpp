#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "mohaf/model.hpp"

namespace mohaf {

// Weights of the four utility components. Not required to sum to 1, but the
// stock configurations do.
struct UtilityWeights {
  double alpha = 0.4;  // cost
  double beta = 0.3;   // QoS
  double gamma = 0.1;  // energy
  double delta = 0.2;  // fairness
};

inline void check_weights(const UtilityWeights& w) {
  if (w.alpha < 0 || w.beta < 0 || w.gamma < 0 || w.delta < 0)
    throw std::invalid_argument("utility weights must be >= 0");
  if (!(w.alpha + w.beta + w.gamma + w.delta > 0))
    throw std::invalid_argument("utility weights must not all be zero");
}

// Fairness penalty coefficient inside the fairness component. Distinct from
// the QoS weight beta; the two share a symbol upstream but not a meaning.
inline constexpr double kDefaultFairnessPenalty = 0.5;

// Per-requester fraction of prior auction rounds won. Empty history treats
// every requester as share 0.
struct FairnessHistory {
  std::map<std::string, double> allocation_share;  // request_id -> [0,1]
  int rounds_observed = 0;

  double share(const std::string& request_id) const {
    const auto it = allocation_share.find(request_id);
    return it == allocation_share.end() ? 0.0 : it->second;
  }

  // Folds one completed round into the running shares: winners move toward 1,
  // everyone else toward 0. Called once per round by the coordinator.
  void record_round(const std::set<std::string>& winners) {
    const double r = static_cast<double>(rounds_observed);
    for (auto& [id, s] : allocation_share) s = s * r / (r + 1.0);
    for (const auto& id : winners) allocation_share[id] += 1.0 / (r + 1.0);
    rounds_observed += 1;
  }
};

inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Budget-relative cost attractiveness: 1 for free, 0 once the full-demand
// cost reaches the budget. Zero budget scores 0.
inline double cost_score(const Request& req, const Resource& res) {
  if (req.budget <= 0.0) return 0.0;
  return clamp01(1.0 - (res.cost * req.demand) / req.budget);
}

// Mean of reliability, availability and the latency slack term.
inline double qos_score(const Request& req, const Resource& res) {
  const double lat_term = std::max(0.0, 1.0 - latency(req.location, res.location) / req.max_latency);
  return (res.reliability + res.availability + lat_term) / 3.0;
}

// Already normalized at generation time.
inline double energy_score(const Resource& res) { return res.energy_eff; }

// Priority discounted by past wins: requesters that keep winning lose
// standing, starved ones recover toward their raw priority.
inline double fairness_score(const Request& req, const FairnessHistory& hist,
                             double beta_f = kDefaultFairnessPenalty) {
  return clamp01(req.priority - beta_f * hist.share(req.id));
}

// Weighted sum of the four component scores; in [0,1] whenever the weights
// sum to 1.
inline double aggregate_utility(const Request& req, const Resource& res, const FairnessHistory& hist,
                                const UtilityWeights& w, double beta_f = kDefaultFairnessPenalty) {
  return w.alpha * cost_score(req, res) + w.beta * qos_score(req, res) +
         w.gamma * energy_score(res) + w.delta * fairness_score(req, hist, beta_f);
}

}  // namespace mohaf
