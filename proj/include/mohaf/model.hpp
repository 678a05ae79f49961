#pragma once

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace mohaf {

// Absolute slack for capacity sums; repeated demand additions accumulate
// floating-point error.
inline constexpr double kCapacityTol = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Euclidean distance on the 2-D location plane. Symmetric, zero iff equal.
inline double latency(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Supply-side entity.
struct Resource {
  std::string id;
  double capacity = 0.0;      // capacity units, > 0
  double cost = 0.0;          // currency per demand unit, >= 0
  double reliability = 0.0;   // [0,1]
  double availability = 0.0;  // [0,1]
  double energy_eff = 0.0;    // [0,1]
  Point location;
};

// Demand-side entity.
struct Request {
  std::string id;
  double demand = 0.0;            // capacity units, > 0
  double budget = 0.0;            // currency, >= 0
  double priority = 0.0;          // [0,1]
  double min_reliability = 0.0;   // [0,1]
  double min_availability = 0.0;  // [0,1]
  double max_latency = 0.0;       // distance units, > 0
  Point location;
};

inline void check_resource(const Resource& r) {
  auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!(r.capacity > 0.0)) throw std::invalid_argument("resource " + r.id + ": capacity must be > 0");
  if (r.cost < 0.0) throw std::invalid_argument("resource " + r.id + ": cost must be >= 0");
  if (!in01(r.reliability) || !in01(r.availability) || !in01(r.energy_eff))
    throw std::invalid_argument("resource " + r.id + ": reliability/availability/energy_eff must be in [0,1]");
}

inline void check_request(const Request& q) {
  auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!(q.demand > 0.0)) throw std::invalid_argument("request " + q.id + ": demand must be > 0");
  if (q.budget < 0.0) throw std::invalid_argument("request " + q.id + ": budget must be >= 0");
  if (!in01(q.priority) || !in01(q.min_reliability) || !in01(q.min_availability))
    throw std::invalid_argument("request " + q.id + ": priority/min_reliability/min_availability must be in [0,1]");
  if (!(q.max_latency > 0.0)) throw std::invalid_argument("request " + q.id + ": max_latency must be > 0");
}

struct Instance {
  std::vector<Resource> resources;
  std::vector<Request> requests;
};

// Field invariants plus id uniqueness within each collection.
inline void check_instance(const Instance& inst) {
  std::set<std::string> seen;
  for (const auto& r : inst.resources) {
    check_resource(r);
    if (!seen.insert(r.id).second) throw std::invalid_argument("duplicate resource id " + r.id);
  }
  seen.clear();
  for (const auto& q : inst.requests) {
    check_request(q);
    if (!seen.insert(q.id).second) throw std::invalid_argument("duplicate request id " + q.id);
  }
}

// id -> position lookup built once where hot loops need it.
struct InstanceIndex {
  std::unordered_map<std::string, std::size_t> resource;
  std::unordered_map<std::string, std::size_t> request;
};

inline InstanceIndex build_index(const Instance& inst) {
  InstanceIndex idx;
  idx.resource.reserve(inst.resources.size());
  idx.request.reserve(inst.requests.size());
  for (std::size_t j = 0; j < inst.resources.size(); ++j) idx.resource.emplace(inst.resources[j].id, j);
  for (std::size_t i = 0; i < inst.requests.size(); ++i) idx.request.emplace(inst.requests[i].id, i);
  return idx;
}

// One allocated (request, resource) pair; presence encodes x_ij = 1.
struct AllocationPair {
  std::string request_id;
  std::string resource_id;
  double price = 0.0;    // transaction price, <= request budget
  double utility = 0.0;  // aggregate utility at allocation time
};

// Single-writer. Each request appears at most once; used_capacity tracks the
// summed demand per resource and never exceeds its capacity.
struct AllocationSet {
  std::vector<AllocationPair> pairs;
  std::map<std::string, double> used_capacity;
};

inline void insert_allocation(AllocationSet& alloc, const Request& req, const Resource& res,
                              double price, double utility) {
  alloc.pairs.push_back({req.id, res.id, price, utility});
  alloc.used_capacity[res.id] += req.demand;
}

// Feasibility of adding (req -> res) given current used capacity and the
// price to be charged: capacity, QoS (reliability, availability, latency) and
// budget. Single-assignment is the caller's AllocationSet invariant.
inline bool is_feasible_pair(const Request& req, const Resource& res, double used, double price) {
  if (used + req.demand > res.capacity + kCapacityTol) return false;
  if (res.reliability < req.min_reliability) return false;
  if (res.availability < req.min_availability) return false;
  if (latency(req.location, res.location) > req.max_latency) return false;
  return price <= req.budget;
}

enum class ConstraintKind {
  kCapacity,          // summed demand exceeds capacity, or used_capacity is inconsistent
  kSingleAssignment,  // request allocated more than once
  kQosReliability,
  kQosAvailability,
  kQosLatency,
  kBudget,
};

inline const char* to_string(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::kCapacity: return "capacity";
    case ConstraintKind::kSingleAssignment: return "single_assignment";
    case ConstraintKind::kQosReliability: return "qos_reliability";
    case ConstraintKind::kQosAvailability: return "qos_availability";
    case ConstraintKind::kQosLatency: return "qos_latency";
    case ConstraintKind::kBudget: return "budget";
  }
  return "unknown";
}

struct Violation {
  ConstraintKind kind;
  std::string request_id;   // empty for resource-level findings
  std::string resource_id;  // empty for request-level findings
  std::string detail;
};

// Checks every stored pair against the feasibility constraints. Returns one
// record per broken constraint; empty means feasible. Unknown ids are errors,
// not violations.
inline std::vector<Violation> validate(const AllocationSet& alloc, const Instance& inst) {
  const InstanceIndex idx = build_index(inst);
  std::vector<Violation> out;

  std::map<std::string, int> request_count;
  std::map<std::string, double> demand_sum;
  for (const auto& p : alloc.pairs) {
    const auto qi = idx.request.find(p.request_id);
    if (qi == idx.request.end()) throw std::out_of_range("unknown request id " + p.request_id);
    const auto rj = idx.resource.find(p.resource_id);
    if (rj == idx.resource.end()) throw std::out_of_range("unknown resource id " + p.resource_id);
    const Request& req = inst.requests[qi->second];
    const Resource& res = inst.resources[rj->second];

    request_count[p.request_id] += 1;
    demand_sum[p.resource_id] += req.demand;

    if (res.reliability < req.min_reliability)
      out.push_back({ConstraintKind::kQosReliability, p.request_id, p.resource_id,
                     "reliability below requested minimum"});
    if (res.availability < req.min_availability)
      out.push_back({ConstraintKind::kQosAvailability, p.request_id, p.resource_id,
                     "availability below requested minimum"});
    if (latency(req.location, res.location) > req.max_latency)
      out.push_back({ConstraintKind::kQosLatency, p.request_id, p.resource_id,
                     "latency above requested maximum"});
    if (p.price > req.budget)
      out.push_back({ConstraintKind::kBudget, p.request_id, p.resource_id,
                     "price exceeds budget"});
  }

  for (const auto& [rid, count] : request_count)
    if (count > 1)
      out.push_back({ConstraintKind::kSingleAssignment, rid, "",
                     "request allocated " + std::to_string(count) + " times"});

  for (const auto& [sid, sum] : demand_sum) {
    const Resource& res = inst.resources[idx.resource.at(sid)];
    if (sum > res.capacity + kCapacityTol)
      out.push_back({ConstraintKind::kCapacity, "", sid, "allocated demand exceeds capacity"});
    const auto it = alloc.used_capacity.find(sid);
    const double recorded = it == alloc.used_capacity.end() ? 0.0 : it->second;
    if (std::abs(recorded - sum) > kCapacityTol)
      out.push_back({ConstraintKind::kCapacity, "", sid, "used_capacity inconsistent with assigned demand"});
  }
  for (const auto& [sid, recorded] : alloc.used_capacity) {
    if (idx.resource.find(sid) == idx.resource.end())
      throw std::out_of_range("unknown resource id " + sid);
    if (demand_sum.find(sid) == demand_sum.end() && std::abs(recorded) > kCapacityTol)
      out.push_back({ConstraintKind::kCapacity, "", sid, "used_capacity recorded for unassigned resource"});
  }
  return out;
}

}  // namespace mohaf
