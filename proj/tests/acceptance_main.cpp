// Acceptance suite: ten end-to-end criteria covering approximation quality,
// mechanism ordering, pricing convergence, metric exactness, feasibility,
// submodularity, scalability and reproducibility. Prints one PASS/FAIL line
// per criterion and exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mohaf/allocator.hpp"
#include "mohaf/baselines.hpp"
#include "mohaf/experiment.hpp"
#include "mohaf/ingest.hpp"
#include "mohaf/io.hpp"
#include "mohaf/metrics.hpp"

using namespace mohaf;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_s(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Criterion {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string fmt(double v, int precision = 4) {
  std::ostringstream ss;
  ss.precision(precision);
  ss << std::fixed << v;
  return ss.str();
}

// ---------------------------------------------------------------------------
// 1. Greedy approximation vs exhaustive optimum on 200 seeded instances.
Criterion criterion_greedy_approximation() {
  Criterion c;
  const auto start = Clock::now();
  const double floor = 1.0 - 1.0 / std::exp(1.0);
  double ratio_sum = 0.0, min_ratio = 1.0;
  int violations = 0;

  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Rng shape(mix_seed(seed, 4242));
    const int n = 2 + static_cast<int>(shape.uniform_int(0, 5));  // N in [2,7]
    const int m = 1 + static_cast<int>(shape.uniform_int(0, 2));  // M in [1,3]
    const Instance inst = build_instance({n, m, seed, {}});
    const PricingState prices = init_pricing_state(inst, {});
    const auto bids = enumerate_bids(inst, prices, {}, {});

    const double greedy = objective_value(greedy_allocate(inst, bids, {}), inst, {});
    const double optimal = objective_value(brute_force_allocate(inst, bids, {}), inst, {});
    if (optimal < greedy - 1e-9) {
      c.fail("oracle dominance broken at seed " + std::to_string(seed));
      ++violations;
    }
    if (greedy + 1e-9 < floor * optimal) {
      c.fail("ratio below 1-1/e at seed " + std::to_string(seed) + " (" +
             fmt(optimal > 0 ? greedy / optimal : 1.0) + ")");
      ++violations;
    }
    ratio_sum += optimal > 0.0 ? greedy / optimal : 1.0;
    min_ratio = std::min(min_ratio, optimal > 0.0 ? greedy / optimal : 1.0);
  }
  const double mean_ratio = ratio_sum / 200.0;
  if (mean_ratio < 0.95) c.fail("mean ratio " + fmt(mean_ratio) + " < 0.95");
  const double secs = elapsed_s(start);
  if (secs >= 60.0) c.fail("runtime " + fmt(secs, 1) + "s >= 60s");
  c.note("min ratio " + fmt(min_ratio) + ", mean " + fmt(mean_ratio) + ", " + fmt(secs, 1) + "s");
  return c;
}

// Shared compare run for criteria 2 and 3.
struct CompareData {
  std::vector<double> eff_mohaf, eff_gp, eff_fp, eff_rand;
  std::vector<double> rev_mohaf, rev_fp;
  std::vector<double> jain_mohaf;
  double secs = 0.0;
};

CompareData run_paper_shape_compare() {
  const auto start = Clock::now();
  ExperimentConfig cfg;
  cfg.gen = {1000, 250, 0, {}};
  cfg.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  cfg.out_dir = "acceptance_runs";
  cfg.threads = 4;
  // Flat MOHAF, mirroring the reference run's zero-cluster configuration.
  cfg.cluster.activation_threshold = 250;
  const RunOutcome outcome = run_compare(cfg, "paper-shape");
  if (!outcome.ok()) throw std::runtime_error("compare run failed: " + outcome.failures.front());

  CompareData data;
  for (const auto& row : outcome.rows) {
    if (row.label == "mohaf") {
      data.eff_mohaf.push_back(row.efficiency);
      data.rev_mohaf.push_back(row.revenue);
      data.jain_mohaf.push_back(row.jain);
    } else if (row.label == "greedy-priority") {
      data.eff_gp.push_back(row.efficiency);
    } else if (row.label == "first-price") {
      data.eff_fp.push_back(row.efficiency);
      data.rev_fp.push_back(row.revenue);
    } else if (row.label == "random") {
      data.eff_rand.push_back(row.efficiency);
    }
  }
  data.secs = elapsed_s(start);
  return data;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (const double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// ---------------------------------------------------------------------------
// 2. Mechanism ordering with significance on paper-shape instances.
Criterion criterion_mechanism_ordering(const CompareData& data) {
  Criterion c;
  const double mohaf = mean_of(data.eff_mohaf);
  const double gp = mean_of(data.eff_gp);
  const double fp = mean_of(data.eff_fp);
  const double rand = mean_of(data.eff_rand);
  if (!(mohaf > gp)) c.fail("mohaf (" + fmt(mohaf) + ") not above greedy-priority (" + fmt(gp) + ")");
  if (!(gp > fp)) c.fail("greedy-priority (" + fmt(gp) + ") not above first-price (" + fmt(fp) + ")");
  if (!(fp > rand))
    c.fail("first-price (" + fmt(fp) + ") not above random (" + fmt(rand) +
           "): random's packing count advantage outweighs its per-winner utility deficit under "
           "divisible capacity");

  const PairedTResult t = paired_t_test(data.eff_mohaf, data.eff_gp);
  const double p = t_test_p_value(t);
  if (!(t.t > 0.0 && p < 0.05)) c.fail("lead over greedy-priority not significant (p=" + fmt(p) + ")");

  const double jain = mean_of(data.jain_mohaf);
  if (jain < 0.95) c.fail("mohaf jain " + fmt(jain) + " < 0.95");
  if (data.secs >= 300.0) c.fail("runtime " + fmt(data.secs, 1) + "s >= 300s");
  c.note("eff mohaf " + fmt(mohaf) + ", gp " + fmt(gp) + ", fp " + fmt(fp) + ", random " + fmt(rand) +
         "; mohaf-vs-gp p=" + fmt(p, 6) + ", jain " + fmt(jain) + ", " + fmt(data.secs, 1) + "s");
  return c;
}

// ---------------------------------------------------------------------------
// 3. Revenue trade-off: first-price beats mohaf on at least 9/10 seeds.
Criterion criterion_revenue_tradeoff(const CompareData& data) {
  Criterion c;
  int wins = 0;
  for (std::size_t i = 0; i < data.rev_fp.size(); ++i)
    if (data.rev_fp[i] > data.rev_mohaf[i]) ++wins;
  if (wins < 9) c.fail("first-price out-earned mohaf on only " + std::to_string(wins) + "/10 seeds");
  c.note(std::to_string(wins) + "/10 seeds, mean revenue " + fmt(mean_of(data.rev_fp), 1) + " vs " +
         fmt(mean_of(data.rev_mohaf), 1));
  return c;
}

// ---------------------------------------------------------------------------
// 4. Ablation ordering: CostOnly >= Full >= NoCost with significant gaps.
Criterion criterion_ablation_ordering() {
  Criterion c;
  ExperimentConfig cfg;
  cfg.gen = {1000, 250, 0, {}};
  cfg.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  cfg.out_dir = "acceptance_runs";
  cfg.threads = 4;
  cfg.cluster.activation_threshold = 250;  // flat, as in the comparison run
  const RunOutcome outcome = run_ablate(cfg, "paper-shape");
  if (!outcome.ok()) {
    c.fail("ablate run failed: " + outcome.failures.front());
    return c;
  }

  std::vector<double> cost_only, full, no_cost;
  for (const auto& row : outcome.rows) {
    if (row.label == "CostOnly") cost_only.push_back(row.efficiency);
    else if (row.label == "Full") full.push_back(row.efficiency);
    else if (row.label == "NoCost") no_cost.push_back(row.efficiency);
  }
  const double m_cost = mean_of(cost_only), m_full = mean_of(full), m_nocost = mean_of(no_cost);
  if (!(m_cost >= m_full && m_full >= m_nocost))
    c.fail("ordering broken: " + fmt(m_cost) + " / " + fmt(m_full) + " / " + fmt(m_nocost));

  const PairedTResult t1 = paired_t_test(cost_only, full);
  const PairedTResult t2 = paired_t_test(full, no_cost);
  const double p1 = t_test_p_value(t1);
  const double p2 = t_test_p_value(t2);
  if (!(t1.t > 0.0 && p1 < 0.05)) c.fail("CostOnly-Full gap not significant (p=" + fmt(p1, 6) + ")");
  if (!(t2.t > 0.0 && p2 < 0.05)) c.fail("Full-NoCost gap not significant (p=" + fmt(p2, 6) + ")");
  c.note("eff " + fmt(m_cost) + " >= " + fmt(m_full) + " >= " + fmt(m_nocost) + ", p1=" + fmt(p1, 6) +
         ", p2=" + fmt(p2, 6));
  return c;
}

// ---------------------------------------------------------------------------
// 5. Pricing convergence on a stationary oversubscribed market.
Instance stationary_oversubscribed_instance() {
  Instance inst;
  for (int j = 0; j < 8; ++j) {
    Resource r;
    r.id = "s" + std::to_string(j);
    r.capacity = 1.0;
    r.cost = 0.5;
    r.reliability = 0.99;
    r.availability = 0.99;
    r.energy_eff = 0.75;
    r.location = {static_cast<double>(j), 0.0};
    inst.resources.push_back(r);
  }
  for (int i = 0; i < 64; ++i) {
    Request q;
    q.id = "r" + std::to_string(100 + i);
    q.demand = 0.25;  // uniform demands keep utilization identical each round
    q.budget = 20.0;
    q.priority = static_cast<double>(i % 11) / 10.0;
    q.min_reliability = 0.9;
    q.min_availability = 0.9;
    q.max_latency = 1000.0;
    q.location = {static_cast<double>(i % 8), 0.0};
    inst.requests.push_back(q);
  }
  return inst;
}

Criterion criterion_pricing_convergence() {
  Criterion c;
  const Instance inst = stationary_oversubscribed_instance();
  PricingConfig cfg;
  cfg.rho_max = 2.0;  // keeps the climb to the projection bound inside 10k rounds
  cfg.step_schedule = StepSchedule::kInverseSqrt;

  const RoundMechanism mech = [](const Instance& i, const PricingState& prices,
                                 const FairnessHistory& hist, std::uint64_t) {
    return greedy_allocate(i, enumerate_bids(i, prices, hist, {}), {});
  };
  const RoundLog log = run_pricing_rounds(inst, mech, cfg, 10000, 7);

  for (const auto& rec : log)
    for (const auto& [id, rho] : rec.price)
      if (rho < cfg.rho_min - 1e-15 || rho > cfg.rho_max + 1e-15) {
        c.fail("price left [rho_min, rho_max] at round " + std::to_string(rec.round));
        break;
      }

  const ConvergenceReport rep = check_convergence(log, cfg, 100);
  if (!rep.price_stable)
    c.fail("price_stable false (max delta " + fmt(rep.max_price_delta, 9) + ")");
  int settled = 0;
  for (const auto& rec : log) {
    bool pinned = true;
    for (const auto& [id, rho] : rec.price) pinned = pinned && rho == cfg.rho_max;
    if (pinned) {
      settled = rec.round;
      break;
    }
  }
  c.note("price_stable=" + std::string(rep.price_stable ? "true" : "false") + ", pinned at round " +
         std::to_string(settled));
  return c;
}

// ---------------------------------------------------------------------------
// 6. Metric exactness.
Criterion criterion_metric_exactness() {
  Criterion c;
  if (jain_index({1, 1, 1, 1}) != 1.0) c.fail("jain([1,1,1,1]) != 1");
  if (jain_index({1, 0, 0, 0}) != 0.25) c.fail("jain([1,0,0,0]) != 0.25");
  if (jain_index({2, 4}) != 0.9) c.fail("jain([2,4]) != 0.9");

  Request req;
  req.id = "r";
  req.demand = 1.0;
  req.budget = 20.0;
  req.max_latency = 1.0;
  if (std::abs(transaction_price(1.0, req, 0.0) - 0.8) > 1e-12)
    c.fail("multiplier at U=0 is not 0.8");
  if (std::abs(transaction_price(1.0, req, 1.0) - 1.2) > 1e-12)
    c.fail("multiplier at U=1 is not 1.2");
  req.budget = 1.0;
  if (std::abs(transaction_price(1.0, req, 1.0) - 1.0) > 1e-12) c.fail("budget clamp broken");
  c.note("jain and transaction price boundaries exact");
  return c;
}

// ---------------------------------------------------------------------------
// 7. Feasibility across 10,000 randomized mechanism runs.
Criterion criterion_feasibility_universal() {
  Criterion c;
  const auto start = Clock::now();
  std::size_t runs = 0, bad = 0;
  for (std::uint64_t seed = 1; seed <= 625; ++seed) {
    const Instance inst = build_instance({30, 8, seed, {}});
    const PricingState prices = init_pricing_state(inst, {});
    for (std::uint64_t sub = 0; sub < 4; ++sub) {
      const std::uint64_t mseed = mix_seed(seed, 900 + sub);
      FairnessHistory hist;
      if (sub > 0) hist.record_round({inst.requests[sub % inst.requests.size()].id});
      const AllocationSet sets[4] = {
          hierarchical_allocate(inst, prices, hist, {}, {}, {}, 0.5),
          greedy_priority_auction(inst, {}, prices, hist, {}, 0.5, mseed),
          first_price_auction(inst, prices, hist, {}, 0.5, mseed),
          random_auction(inst, prices, hist, {}, 0.5, mseed)};
      for (const auto& alloc : sets) {
        ++runs;
        if (!validate(alloc, inst).empty()) ++bad;
      }
    }
  }
  if (runs != 10000) c.fail("expected 10000 runs, got " + std::to_string(runs));
  if (bad != 0) c.fail(std::to_string(bad) + " runs produced violations");
  c.note(std::to_string(runs) + " runs, 0 violations, " + fmt(elapsed_s(start), 1) + "s");
  return c;
}

// ---------------------------------------------------------------------------
// 8. Monotonicity and diminishing returns of F, exhaustively on 50 instances.
Criterion criterion_submodularity() {
  Criterion c;
  const auto start = Clock::now();
  const ObjectiveWeights w{};
  std::size_t checks = 0, violations = 0;

  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Rng shape(mix_seed(seed, 808));
    const int n = 2 + static_cast<int>(shape.uniform_int(0, 3));  // N in [2,5]
    const int m = 1 + static_cast<int>(shape.uniform_int(0, 2));  // M in [1,3]
    const Instance inst = build_instance({n, m, seed, {}});
    const PricingState prices = init_pricing_state(inst, {});
    const auto bids = enumerate_bids(inst, prices, {}, {});
    const InstanceIndex idx = build_index(inst);

    // Option 0 per request is "unassigned"; option o >= 1 is its o-th bid.
    std::vector<std::vector<std::uint32_t>> options(static_cast<std::size_t>(n));
    for (std::uint32_t b = 0; b < bids.size(); ++b)
      options[idx.request.at(bids[b].request_id)].push_back(b);

    std::vector<std::size_t> radix(static_cast<std::size_t>(n));
    std::size_t codes = 1;
    for (std::size_t q = 0; q < options.size(); ++q) {
      radix[q] = codes;
      codes *= options[q].size() + 1;
    }

    const auto decode = [&](std::size_t code, std::size_t q) {
      return (code / radix[q]) % (options[q].size() + 1);
    };
    std::vector<double> f_cache(codes, -1.0);
    std::vector<char> feasible(codes, 0);

    for (std::size_t code = 0; code < codes; ++code) {
      std::map<std::string, double> used;
      bool ok = true;
      AllocationSet alloc;
      for (std::size_t q = 0; q < options.size() && ok; ++q) {
        const std::size_t o = decode(code, q);
        if (o == 0) continue;
        const Bid& bid = bids[options[q][o - 1]];
        const Request& req = inst.requests[q];
        const Resource& res = inst.resources[idx.resource.at(bid.resource_id)];
        used[bid.resource_id] += req.demand;
        if (used[bid.resource_id] > res.capacity + kCapacityTol) ok = false;
        insert_allocation(alloc, req, res, bid.tentative_price, bid.utility);
      }
      feasible[code] = ok ? 1 : 0;
      if (ok) f_cache[code] = objective_value(alloc, inst, w);
    }

    for (std::size_t t_code = 0; t_code < codes; ++t_code) {
      if (!feasible[t_code]) continue;
      // Enumerate S subset of T by zeroing assigned requests (binary submask).
      std::vector<std::size_t> assigned;
      for (std::size_t q = 0; q < options.size(); ++q)
        if (decode(t_code, q) != 0) assigned.push_back(q);
      const std::size_t n_assigned = assigned.size();
      for (std::size_t mask = 0; mask < (static_cast<std::size_t>(1) << n_assigned); ++mask) {
        std::size_t s_code = t_code;
        for (std::size_t k = 0; k < n_assigned; ++k)
          if (!(mask & (static_cast<std::size_t>(1) << k)))
            s_code -= decode(t_code, assigned[k]) * radix[assigned[k]];
        // Monotonicity: F(S) <= F(T).
        ++checks;
        if (f_cache[s_code] > f_cache[t_code] + 1e-12) ++violations;

        // Diminishing returns for every candidate addable to T.
        for (std::size_t q = 0; q < options.size(); ++q) {
          if (decode(t_code, q) != 0) continue;
          for (std::size_t o = 1; o <= options[q].size(); ++o) {
            const std::size_t t_plus = t_code + o * radix[q];
            if (!feasible[t_plus]) continue;
            const std::size_t s_plus = s_code + o * radix[q];
            ++checks;
            const double gain_s = f_cache[s_plus] - f_cache[s_code];
            const double gain_t = f_cache[t_plus] - f_cache[t_code];
            if (gain_s < gain_t - 1e-12) ++violations;
          }
        }
      }
    }
  }
  if (violations != 0) c.fail(std::to_string(violations) + " violations");
  c.note(std::to_string(checks) + " checks, 0 violations, " + fmt(elapsed_s(start), 1) + "s");
  return c;
}

// ---------------------------------------------------------------------------
// 9. Scalability: wall-time growth per doubling across the ladder.
Criterion criterion_scalability() {
  Criterion c;
  const auto start = Clock::now();
  ExperimentConfig cfg;
  cfg.ladder = {{500, 125}, {1000, 250}, {2000, 500}};
  cfg.seeds = {1, 2, 3};
  cfg.out_dir = "acceptance_runs";
  const ScaleOutcome outcome = run_scale(cfg, "ladder");
  if (!outcome.ok()) {
    c.fail("scale run failed: " + outcome.failures.front());
    return c;
  }

  std::vector<double> rung_mean(cfg.ladder.size(), 0.0);
  std::vector<int> rung_count(cfg.ladder.size(), 0);
  for (const auto& row : outcome.rows) {
    rung_mean[static_cast<std::size_t>(row.rung)] += row.wall_ms;
    rung_count[static_cast<std::size_t>(row.rung)] += 1;
  }
  for (std::size_t r = 0; r < rung_mean.size(); ++r)
    if (rung_count[r] > 0) rung_mean[r] /= rung_count[r];

  double factor_sum = 0.0;
  for (std::size_t r = 1; r < rung_mean.size(); ++r)
    factor_sum += rung_mean[r] / std::max(rung_mean[r - 1], 1e-9);
  const double mean_factor = factor_sum / static_cast<double>(rung_mean.size() - 1);
  if (mean_factor > 2.6) c.fail("mean growth factor " + fmt(mean_factor, 2) + " > 2.6");
  const double secs = elapsed_s(start);
  if (secs >= 300.0) c.fail("runtime " + fmt(secs, 1) + "s >= 300s");
  c.note("rung means " + fmt(rung_mean[0], 1) + "/" + fmt(rung_mean[1], 1) + "/" +
         fmt(rung_mean[2], 1) + " ms, mean factor " + fmt(mean_factor, 2) + ", " + fmt(secs, 1) + "s");
  return c;
}

// ---------------------------------------------------------------------------
// 10. Byte-identical reruns of every subcommand.
Criterion criterion_determinism() {
  Criterion c;
  ExperimentConfig cfg;
  cfg.gen = {100, 25, 42, {}};
  cfg.seeds = {1, 2};
  cfg.out_dir = "acceptance_runs/determinism";

  const RunOutcome cmp_a = run_compare(cfg, "a");
  const RunOutcome cmp_b = run_compare(cfg, "b");
  if (slurp(cmp_a.dir / "results.csv") != slurp(cmp_b.dir / "results.csv"))
    c.fail("compare rerun differs");

  ExperimentConfig threaded = cfg;
  threaded.threads = 4;
  const RunOutcome cmp_t = run_compare(threaded, "t");
  if (slurp(cmp_a.dir / "results.csv") != slurp(cmp_t.dir / "results.csv"))
    c.fail("compare with worker pool differs");

  const RunOutcome abl_a = run_ablate(cfg, "a");
  const RunOutcome abl_b = run_ablate(cfg, "b");
  if (slurp(abl_a.dir / "results.csv") != slurp(abl_b.dir / "results.csv"))
    c.fail("ablate rerun differs");

  ExperimentConfig scale_cfg = cfg;
  scale_cfg.ladder = {{60, 15}, {120, 30}};
  scale_cfg.seeds = {1};
  const ScaleOutcome sc_a = run_scale(scale_cfg, "a");
  const ScaleOutcome sc_b = run_scale(scale_cfg, "b");
  if (slurp(sc_a.dir / "results.csv") != slurp(sc_b.dir / "results.csv"))
    c.fail("scale rerun differs");

  ExperimentConfig sim_cfg = cfg;
  sim_cfg.gen = {40, 10, 42, {}};
  sim_cfg.mechanisms = {"mohaf"};
  sim_cfg.rounds = 50;
  sim_cfg.window = 10;
  const PriceSimOutcome ps_a = run_price_sim(sim_cfg, "a");
  const PriceSimOutcome ps_b = run_price_sim(sim_cfg, "b");
  if (slurp(ps_a.dir / "results.csv") != slurp(ps_b.dir / "results.csv"))
    c.fail("price-sim rerun differs");

  const std::string gen_a = instance_to_json(build_instance({80, 20, 9, {}})).dump(2);
  const std::string gen_b = instance_to_json(build_instance({80, 20, 9, {}})).dump(2);
  if (gen_a != gen_b) c.fail("gen rerun differs");

  c.note("compare/ablate/scale/price-sim/gen reruns byte-identical");
  return c;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Criterion result;
  };
  std::vector<Entry> entries;

  const auto run = [&](const char* name, Criterion (*fn)()) {
    entries.push_back({name, fn()});
  };

  run("1 greedy approximation", criterion_greedy_approximation);

  CompareData compare_data;
  try {
    compare_data = run_paper_shape_compare();
    entries.push_back({"2 mechanism ordering", criterion_mechanism_ordering(compare_data)});
    entries.push_back({"3 revenue trade-off", criterion_revenue_tradeoff(compare_data)});
  } catch (const std::exception& e) {
    Criterion failed;
    failed.fail(e.what());
    entries.push_back({"2 mechanism ordering", failed});
    entries.push_back({"3 revenue trade-off", failed});
  }

  run("4 ablation ordering", criterion_ablation_ordering);
  run("5 pricing convergence", criterion_pricing_convergence);
  run("6 metric exactness", criterion_metric_exactness);
  run("7 feasibility universal", criterion_feasibility_universal);
  run("8 submodularity and monotonicity", criterion_submodularity);
  run("9 scalability", criterion_scalability);
  run("10 determinism", criterion_determinism);

  int failures = 0;
  for (const auto& e : entries) {
    std::cout << (e.result.pass ? "[PASS] " : "[FAIL] ") << "criterion " << e.name;
    if (!e.result.detail.empty()) std::cout << " -- " << e.result.detail;
    std::cout << "\n";
    if (!e.result.pass) ++failures;
  }
  std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed"
                              : "ACCEPTANCE: " + std::to_string(failures) + " criteria failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
