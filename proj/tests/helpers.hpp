#pragma once

#include <string>

#include "mohaf/ingest.hpp"
#include "mohaf/model.hpp"

namespace testing {

// Resource with every constraint slack unless overridden.
inline mohaf::Resource make_resource(std::string id, double capacity = 1.0, double cost = 0.5,
                                     double x = 0.0, double y = 0.0) {
  mohaf::Resource r;
  r.id = std::move(id);
  r.capacity = capacity;
  r.cost = cost;
  r.reliability = 0.99;
  r.availability = 0.99;
  r.energy_eff = 0.8;
  r.location = {x, y};
  return r;
}

// Request that accepts any of the above resources unless overridden.
inline mohaf::Request make_request(std::string id, double demand = 0.1, double budget = 20.0,
                                   double priority = 0.5, double x = 0.0, double y = 0.0) {
  mohaf::Request q;
  q.id = std::move(id);
  q.demand = demand;
  q.budget = budget;
  q.priority = priority;
  q.min_reliability = 0.9;
  q.min_availability = 0.9;
  q.max_latency = 500.0;
  q.location = {x, y};
  return q;
}

// Small seeded instance from the production generator.
inline mohaf::Instance small_instance(int n_requests, int n_resources, std::uint64_t seed) {
  return mohaf::build_instance({n_requests, n_resources, seed, {}});
}

}  // namespace testing
