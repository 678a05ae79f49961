#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "mohaf/allocator.hpp"
#include "mohaf/objective.hpp"
#include "mohaf/pricing.hpp"
#include "mohaf/rng.hpp"

using namespace mohaf;

namespace {

Instance two_requester_instance() {
  Instance inst;
  inst.resources = {testing::make_resource("s0"), testing::make_resource("s1")};
  inst.requests = {testing::make_request("r0", 0.2), testing::make_request("r1", 0.2)};
  return inst;
}

}  // namespace

TEST_CASE("phi_fair sums square roots per requester") {
  CHECK(phi_fair(AllocationSet{}) == 0.0);

  const Instance inst = two_requester_instance();
  AllocationSet one;
  insert_allocation(one, inst.requests[0], inst.resources[0], 0.1, 0.64);
  CHECK(phi_fair(one) == Catch::Approx(0.8).epsilon(1e-12));

  AllocationSet two;
  insert_allocation(two, inst.requests[0], inst.resources[0], 0.1, 0.25);
  insert_allocation(two, inst.requests[1], inst.resources[1], 0.1, 1.0);
  CHECK(phi_fair(two) == Catch::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("psi_energy sums assigned resource energies") {
  Instance inst;
  inst.resources = {testing::make_resource("s0"), testing::make_resource("s1"),
                    testing::make_resource("s2")};
  inst.resources[0].energy_eff = 0.6;
  inst.resources[1].energy_eff = 0.7;
  inst.resources[2].energy_eff = 0.9;
  inst.requests = {testing::make_request("r0", 0.1), testing::make_request("r1", 0.1),
                   testing::make_request("r2", 0.1)};

  CHECK(psi_energy(AllocationSet{}, inst) == 0.0);

  AllocationSet one;
  insert_allocation(one, inst.requests[0], inst.resources[2], 0.1, 0.5);
  CHECK(psi_energy(one, inst) == Catch::Approx(0.9));

  AllocationSet three;
  for (int i = 0; i < 3; ++i)
    insert_allocation(three, inst.requests[i], inst.resources[i], 0.1, 0.5);
  CHECK(psi_energy(three, inst) == Catch::Approx(2.2).epsilon(1e-12));

  AllocationSet ghost;
  ghost.pairs.push_back({"r0", "nope", 0.0, 0.5});
  CHECK_THROWS_AS(psi_energy(ghost, inst), std::out_of_range);
}

TEST_CASE("objective_value combines the three terms") {
  const ObjectiveWeights w{};  // (1.0, 0.5, 0.25)
  Instance inst;
  inst.resources = {testing::make_resource("s0")};
  inst.resources[0].energy_eff = 0.8;
  inst.requests = {testing::make_request("r0", 0.1)};

  CHECK(objective_value(AllocationSet{}, inst, w) == 0.0);

  AllocationSet alloc;
  insert_allocation(alloc, inst.requests[0], inst.resources[0], 0.1, 0.6);
  CHECK(objective_value(alloc, inst, w) ==
        Catch::Approx(0.6 + 0.5 * std::sqrt(0.6) + 0.25 * 0.8).epsilon(1e-12));
  CHECK(objective_value(alloc, inst, w) == Catch::Approx(1.1872983346207416).epsilon(1e-12));

  // theta = (1,0,0) degenerates to the plain utility sum.
  CHECK(objective_value(alloc, inst, {1.0, 0.0, 0.0}) == Catch::Approx(0.6));
}

TEST_CASE("marginal_gain on the empty set equals the singleton objective") {
  const ObjectiveWeights w{};
  Instance inst;
  inst.resources = {testing::make_resource("s0")};
  inst.requests = {testing::make_request("r0", 0.1)};
  const AllocationPair cand{"r0", "s0", 0.1, 0.49};

  AllocationSet singleton;
  insert_allocation(singleton, inst.requests[0], inst.resources[0], 0.1, 0.49);
  CHECK(marginal_gain(AllocationSet{}, cand, inst, w) ==
        Catch::Approx(objective_value(singleton, inst, w)).epsilon(1e-12));

  // theta = (1,0,0): gain is exactly the candidate utility.
  CHECK(marginal_gain(AllocationSet{}, cand, inst, {1.0, 0.0, 0.0}) == Catch::Approx(0.49));

  AllocationSet occupied = singleton;
  CHECK_THROWS_AS(marginal_gain(occupied, cand, inst, w), std::invalid_argument);
}

TEST_CASE("incremental gains equal full recomputation", "[property]") {
  // Oracle: two full objective_value evaluations per candidate.
  const ObjectiveWeights w{1.0, 0.7, 0.3};
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = testing::small_instance(8, 3, seed);
    const PricingState prices = init_pricing_state(inst, {});
    const FairnessHistory hist;
    const auto bids = enumerate_bids(inst, prices, hist, {});

    ObjectiveTracker tracker(w);
    AllocationSet alloc;
    const InstanceIndex idx = build_index(inst);
    std::set<std::string> assigned;
    for (const auto& bid : bids) {
      if (assigned.count(bid.request_id)) continue;
      const Resource& res = inst.resources[idx.resource.at(bid.resource_id)];
      const Request& req = inst.requests[idx.request.at(bid.request_id)];
      const auto it = alloc.used_capacity.find(res.id);
      if ((it == alloc.used_capacity.end() ? 0.0 : it->second) + req.demand >
          res.capacity + kCapacityTol)
        continue;

      const double incremental = tracker.gain(bid.request_id, bid.utility, res.energy_eff);
      AllocationSet extended = alloc;
      insert_allocation(extended, req, res, bid.tentative_price, bid.utility);
      const double recomputed = objective_value(extended, inst, w) - objective_value(alloc, inst, w);
      REQUIRE(incremental == Catch::Approx(recomputed).margin(1e-12));
      REQUIRE(marginal_gain(alloc, {bid.request_id, bid.resource_id, bid.tentative_price, bid.utility},
                            inst, w) == Catch::Approx(recomputed).margin(1e-12));

      tracker.commit(bid.request_id, bid.utility, res.energy_eff);
      alloc = std::move(extended);
      assigned.insert(bid.request_id);
      REQUIRE(tracker.value() == Catch::Approx(objective_value(alloc, inst, w)).margin(1e-12));
    }
  }
}

TEST_CASE("objective is monotone under insertions", "[property]") {
  const ObjectiveWeights w{};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = testing::small_instance(10, 3, seed);
    const PricingState prices = init_pricing_state(inst, {});
    const auto bids = enumerate_bids(inst, prices, {}, {});
    const InstanceIndex idx = build_index(inst);

    AllocationSet alloc;
    std::set<std::string> assigned;
    double previous = 0.0;
    for (const auto& bid : bids) {
      if (assigned.count(bid.request_id)) continue;
      const Resource& res = inst.resources[idx.resource.at(bid.resource_id)];
      const Request& req = inst.requests[idx.request.at(bid.request_id)];
      const auto it = alloc.used_capacity.find(res.id);
      if ((it == alloc.used_capacity.end() ? 0.0 : it->second) + req.demand >
          res.capacity + kCapacityTol)
        continue;
      insert_allocation(alloc, req, res, bid.tentative_price, bid.utility);
      assigned.insert(bid.request_id);
      const double value = objective_value(alloc, inst, w);
      REQUIRE(value >= previous - 1e-12);
      previous = value;
    }
  }
}

TEST_CASE("diminishing returns on exhaustively enumerated small instances", "[property]") {
  // For feasible S subset of T and candidate c outside T:
  // F(S+c) - F(S) >= F(T+c) - F(T).
  const ObjectiveWeights w{};
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Instance inst = testing::small_instance(4, 2, seed);
    const PricingState prices = init_pricing_state(inst, {});
    const auto bids = enumerate_bids(inst, prices, {}, {});
    if (bids.size() < 3) continue;
    const InstanceIndex idx = build_index(inst);

    const auto value_of = [&](const std::vector<std::size_t>& chosen) {
      AllocationSet alloc;
      for (const std::size_t b : chosen)
        insert_allocation(alloc, inst.requests[idx.request.at(bids[b].request_id)],
                          inst.resources[idx.resource.at(bids[b].resource_id)],
                          bids[b].tentative_price, bids[b].utility);
      return objective_value(alloc, inst, w);
    };
    const auto feasible = [&](const std::vector<std::size_t>& chosen) {
      std::map<std::string, double> used;
      std::set<std::string> reqs;
      for (const std::size_t b : chosen) {
        if (!reqs.insert(bids[b].request_id).second) return false;
        used[bids[b].resource_id] += inst.requests[idx.request.at(bids[b].request_id)].demand;
      }
      for (const auto& [rid, u] : used)
        if (u > inst.resources[idx.resource.at(rid)].capacity + kCapacityTol) return false;
      return true;
    };

    const std::size_t n = std::min<std::size_t>(bids.size(), 8);
    for (std::uint32_t t_mask = 0; t_mask < (1u << n); ++t_mask) {
      std::vector<std::size_t> t_set;
      for (std::size_t b = 0; b < n; ++b)
        if (t_mask & (1u << b)) t_set.push_back(b);
      if (!feasible(t_set)) continue;
      // Subsets of T via submask enumeration.
      for (std::uint32_t s_mask = t_mask;; s_mask = (s_mask - 1) & t_mask) {
        std::vector<std::size_t> s_set;
        for (std::size_t b = 0; b < n; ++b)
          if (s_mask & (1u << b)) s_set.push_back(b);
        for (std::size_t c = 0; c < n; ++c) {
          if (t_mask & (1u << c)) continue;
          auto t_plus = t_set;
          t_plus.push_back(c);
          if (!feasible(t_plus)) continue;
          auto s_plus = s_set;
          s_plus.push_back(c);
          const double gain_s = value_of(s_plus) - value_of(s_set);
          const double gain_t = value_of(t_plus) - value_of(t_set);
          REQUIRE(gain_s >= gain_t - 1e-12);
        }
        if (s_mask == 0) break;
      }
    }
  }
}
