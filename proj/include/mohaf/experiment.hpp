#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "mohaf/allocator.hpp"
#include "mohaf/baselines.hpp"
#include "mohaf/ingest.hpp"
#include "mohaf/io.hpp"
#include "mohaf/metrics.hpp"
#include "mohaf/objective.hpp"
#include "mohaf/pricing.hpp"

namespace mohaf {

enum class Mechanism { kMohaf, kGreedyPriority, kFirstPrice, kRandom };

inline const char* to_string(Mechanism m) {
  switch (m) {
    case Mechanism::kMohaf: return "mohaf";
    case Mechanism::kGreedyPriority: return "greedy-priority";
    case Mechanism::kFirstPrice: return "first-price";
    case Mechanism::kRandom: return "random";
  }
  return "unknown";
}

inline Mechanism mechanism_from_string(const std::string& s) {
  if (s == "mohaf") return Mechanism::kMohaf;
  if (s == "greedy-priority") return Mechanism::kGreedyPriority;
  if (s == "first-price") return Mechanism::kFirstPrice;
  if (s == "random") return Mechanism::kRandom;
  throw std::invalid_argument("unknown mechanism: " + s);
}

// One declarative bundle drives every subcommand; flags override file values.
struct ExperimentConfig {
  std::vector<std::string> mechanisms{"mohaf", "greedy-priority", "first-price", "random"};
  UtilityWeights weights{};
  double beta_f = kDefaultFairnessPenalty;
  ObjectiveWeights objective{};
  PriorityScoreWeights priority_score{};
  PricingConfig pricing{};
  GenerationConfig gen{1000, 250, 42, {}};
  ClusterConfig cluster{};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::string out_dir = "runs";
  int threads = 1;
  int rounds = 2000;  // price-sim
  int window = 100;   // price-sim convergence window
  std::vector<std::array<int, 2>> ladder{{500, 125}, {1000, 250}, {2000, 500}};
  std::string trace_path;  // empty = synthetic requests
  ColumnMap columns{};
};

inline void check_config(const ExperimentConfig& cfg) {
  if (cfg.mechanisms.empty()) throw std::invalid_argument("config: need at least one mechanism");
  for (const auto& m : cfg.mechanisms) mechanism_from_string(m);
  if (cfg.seeds.empty()) throw std::invalid_argument("config: need at least one seed");
  check_weights(cfg.weights);
  check_weights(cfg.objective);
  check_weights(cfg.priority_score);
  mohaf::check_config(cfg.pricing);
  mohaf::check_config(cfg.gen);
  if (cfg.threads < 1) throw std::invalid_argument("config: threads must be >= 1");
  if (cfg.rounds < 1 || cfg.window < 1 || cfg.rounds < cfg.window)
    throw std::invalid_argument("config: need rounds >= window >= 1");
  if (cfg.ladder.empty()) throw std::invalid_argument("config: ladder must not be empty");
}

inline json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["mechanisms"] = cfg.mechanisms;
  j["utility_weights"] = {{"alpha", cfg.weights.alpha},
                          {"beta", cfg.weights.beta},
                          {"gamma", cfg.weights.gamma},
                          {"delta", cfg.weights.delta}};
  j["fairness_penalty"] = cfg.beta_f;
  j["objective_weights"] = {{"theta1", cfg.objective.theta1},
                            {"theta2", cfg.objective.theta2},
                            {"theta3", cfg.objective.theta3}};
  j["priority_score_weights"] = {{"w1", cfg.priority_score.w1}, {"w2", cfg.priority_score.w2}};
  j["pricing"] = {{"rho_min", cfg.pricing.rho_min},
                  {"rho_max", cfg.pricing.rho_max},
                  {"tau", cfg.pricing.tau},
                  {"eta0", cfg.pricing.eta0},
                  {"step_schedule", to_string(cfg.pricing.step_schedule)}};
  j["generation"] = {{"n_requests", cfg.gen.n_requests},
                     {"n_resources", cfg.gen.n_resources},
                     {"seed", cfg.gen.seed},
                     {"qos",
                      {{"min_reliability", cfg.gen.qos.min_reliability},
                       {"min_availability", cfg.gen.qos.min_availability},
                       {"max_latency", cfg.gen.qos.max_latency}}}};
  j["cluster"] = {{"activation_threshold", cfg.cluster.activation_threshold},
                  {"kmeans_max_iters", cfg.cluster.kmeans_max_iters}};
  j["seeds"] = cfg.seeds;
  j["out_dir"] = cfg.out_dir;
  j["threads"] = cfg.threads;
  j["rounds"] = cfg.rounds;
  j["window"] = cfg.window;
  j["ladder"] = json::array();
  for (const auto& rung : cfg.ladder) j["ladder"].push_back({rung[0], rung[1]});
  j["trace_path"] = cfg.trace_path;
  j["columns"] = json::array({cfg.columns.timestamp, cfg.columns.job_id, cfg.columns.event_type,
                              cfg.columns.scheduling_class, cfg.columns.priority});
  return j;
}

// Partial configs override the defaults key by key.
inline ExperimentConfig config_from_json(const json& j, ExperimentConfig cfg = {}) {
  if (j.contains("mechanisms")) cfg.mechanisms = j["mechanisms"].get<std::vector<std::string>>();
  if (j.contains("utility_weights")) {
    const auto& w = j["utility_weights"];
    if (w.contains("alpha")) cfg.weights.alpha = w["alpha"].get<double>();
    if (w.contains("beta")) cfg.weights.beta = w["beta"].get<double>();
    if (w.contains("gamma")) cfg.weights.gamma = w["gamma"].get<double>();
    if (w.contains("delta")) cfg.weights.delta = w["delta"].get<double>();
  }
  if (j.contains("fairness_penalty")) cfg.beta_f = j["fairness_penalty"].get<double>();
  if (j.contains("objective_weights")) {
    const auto& w = j["objective_weights"];
    if (w.contains("theta1")) cfg.objective.theta1 = w["theta1"].get<double>();
    if (w.contains("theta2")) cfg.objective.theta2 = w["theta2"].get<double>();
    if (w.contains("theta3")) cfg.objective.theta3 = w["theta3"].get<double>();
  }
  if (j.contains("priority_score_weights")) {
    const auto& w = j["priority_score_weights"];
    if (w.contains("w1")) cfg.priority_score.w1 = w["w1"].get<double>();
    if (w.contains("w2")) cfg.priority_score.w2 = w["w2"].get<double>();
  }
  if (j.contains("pricing")) {
    const auto& p = j["pricing"];
    if (p.contains("rho_min")) cfg.pricing.rho_min = p["rho_min"].get<double>();
    if (p.contains("rho_max")) cfg.pricing.rho_max = p["rho_max"].get<double>();
    if (p.contains("tau")) cfg.pricing.tau = p["tau"].get<double>();
    if (p.contains("eta0")) cfg.pricing.eta0 = p["eta0"].get<double>();
    if (p.contains("step_schedule")) {
      const auto s = p["step_schedule"].get<std::string>();
      if (s == "constant") cfg.pricing.step_schedule = StepSchedule::kConstant;
      else if (s == "inverse_sqrt") cfg.pricing.step_schedule = StepSchedule::kInverseSqrt;
      else throw std::invalid_argument("unknown step_schedule: " + s);
    }
  }
  if (j.contains("generation")) {
    const auto& g = j["generation"];
    if (g.contains("n_requests")) cfg.gen.n_requests = g["n_requests"].get<int>();
    if (g.contains("n_resources")) cfg.gen.n_resources = g["n_resources"].get<int>();
    if (g.contains("seed")) cfg.gen.seed = g["seed"].get<std::uint64_t>();
    if (g.contains("qos")) {
      const auto& q = g["qos"];
      if (q.contains("min_reliability")) cfg.gen.qos.min_reliability = q["min_reliability"].get<double>();
      if (q.contains("min_availability")) cfg.gen.qos.min_availability = q["min_availability"].get<double>();
      if (q.contains("max_latency")) cfg.gen.qos.max_latency = q["max_latency"].get<double>();
    }
  }
  if (j.contains("cluster")) {
    const auto& c = j["cluster"];
    if (c.contains("activation_threshold"))
      cfg.cluster.activation_threshold = c["activation_threshold"].get<int>();
    if (c.contains("kmeans_max_iters")) cfg.cluster.kmeans_max_iters = c["kmeans_max_iters"].get<int>();
  }
  if (j.contains("seeds")) cfg.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
  if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
  if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
  if (j.contains("rounds")) cfg.rounds = j["rounds"].get<int>();
  if (j.contains("window")) cfg.window = j["window"].get<int>();
  if (j.contains("ladder")) {
    cfg.ladder.clear();
    for (const auto& rung : j["ladder"])
      cfg.ladder.push_back({rung.at(0).get<int>(), rung.at(1).get<int>()});
  }
  if (j.contains("trace_path")) cfg.trace_path = j["trace_path"].get<std::string>();
  if (j.contains("columns")) {
    const auto& c = j["columns"];
    cfg.columns.timestamp = c.at(0).get<int>();
    cfg.columns.job_id = c.at(1).get<int>();
    cfg.columns.event_type = c.at(2).get<int>();
    cfg.columns.scheduling_class = c.at(3).get<int>();
    cfg.columns.priority = c.at(4).get<int>();
  }
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  json j;
  in >> j;
  return config_from_json(j, std::move(base));
}

// Builds the per-seed instance: trace-backed when trace_path is set,
// otherwise synthetic. The run seed replaces the generation seed.
inline Instance build_experiment_instance(const ExperimentConfig& cfg, std::uint64_t seed) {
  GenerationConfig gen = cfg.gen;
  gen.seed = seed;
  if (cfg.trace_path.empty()) return build_instance(gen);
  std::ifstream in(cfg.trace_path);
  if (!in) throw std::runtime_error("cannot open trace " + cfg.trace_path);
  const TraceParseResult parsed = parse_job_events(in, cfg.columns);
  return build_instance_from_events(gen, parsed.events);
}

// Mechanism sub-stream tags keep per-mechanism randomness independent of the
// instance stream.
inline std::uint64_t mechanism_seed(std::uint64_t seed, Mechanism m) {
  return mix_seed(seed, 100 + static_cast<std::uint64_t>(m));
}

inline AllocationSet run_mechanism(Mechanism m, const Instance& inst, const PricingState& prices,
                                   const FairnessHistory& hist, const ExperimentConfig& cfg,
                                   std::uint64_t seed, MohafRunStats* stats = nullptr) {
  switch (m) {
    case Mechanism::kMohaf: {
      ClusterConfig cluster = cfg.cluster;
      cluster.seed = mechanism_seed(seed, m);
      return hierarchical_allocate(inst, prices, hist, cfg.weights, cfg.objective, cluster,
                                   cfg.beta_f, stats);
    }
    case Mechanism::kGreedyPriority:
      return greedy_priority_auction(inst, cfg.priority_score, prices, hist, cfg.weights, cfg.beta_f,
                                     mechanism_seed(seed, m));
    case Mechanism::kFirstPrice:
      return first_price_auction(inst, prices, hist, cfg.weights, cfg.beta_f, mechanism_seed(seed, m));
    case Mechanism::kRandom:
      return random_auction(inst, prices, hist, cfg.weights, cfg.beta_f, mechanism_seed(seed, m));
  }
  throw std::logic_error("unreachable");
}

// One (mechanism, seed) measurement. Jain and energy are 0 when nothing was
// allocated.
struct MetricRow {
  std::string label;
  std::uint64_t seed = 0;
  std::size_t pairs = 0;
  double efficiency = 0.0;
  double revenue = 0.0;
  double satisfaction = 0.0;
  double utilization = 0.0;
  double jain = 0.0;
  double energy = 0.0;
};

inline MetricRow compute_metric_row(const std::string& label, std::uint64_t seed,
                                    const AllocationSet& alloc, const Instance& inst) {
  MetricRow row;
  row.label = label;
  row.seed = seed;
  row.pairs = alloc.pairs.size();
  row.efficiency = allocation_efficiency(alloc, inst);
  row.revenue = mohaf::revenue(alloc);
  row.satisfaction = satisfaction_rate(alloc, inst);
  row.utilization = resource_utilization(alloc, inst);
  if (!alloc.pairs.empty()) {
    row.jain = jain_index(allocated_utilities(alloc));
    row.energy = energy_efficiency_score(alloc, inst);
  }
  return row;
}

inline std::string metric_csv_header() {
  return "mechanism,seed,pairs,efficiency,revenue,satisfaction,utilization,jain,energy\n";
}

inline std::string metric_csv_row(const MetricRow& r) {
  std::string out = csv_escape(r.label);
  out += ',';
  out += std::to_string(r.seed);
  out += ',';
  out += std::to_string(r.pairs);
  for (const double v : {r.efficiency, r.revenue, r.satisfaction, r.utilization, r.jain, r.energy}) {
    out += ',';
    out += format_double(v);
  }
  out += '\n';
  return out;
}

namespace detail {

// Bounded pool over independent tasks; results land in per-task slots so
// output order never depends on scheduling.
inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) break;
      fn(i);
    }
  };
  const std::size_t pool_size = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  std::vector<std::thread> pool;
  pool.reserve(pool_size);
  for (std::size_t t = 0; t < pool_size; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

inline std::string timestamp_label() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%d-%H%M%S", &tm);
  return buf;
}

inline std::filesystem::path make_run_dir(const ExperimentConfig& cfg, const std::string& command,
                                          std::string label) {
  if (label.empty()) label = timestamp_label();
  std::filesystem::path dir = std::filesystem::path(cfg.out_dir) / command / label;
  int suffix = 1;
  while (std::filesystem::exists(dir))
    dir = std::filesystem::path(cfg.out_dir) / command / (label + "-" + std::to_string(++suffix));
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

inline json metadata_json(const ExperimentConfig& cfg, const std::string& command) {
  json meta;
  meta["command"] = command;
  meta["rng"] = kRngVersion;
  meta["float_format"] = "to_chars-shortest";
  meta["config"] = config_to_json(cfg);
  return meta;
}

// mean +- CI95 across seeds; a single seed reports half-width 0.
inline json summarize(const std::vector<double>& samples) {
  if (samples.size() < 2) return {{"mean", samples.empty() ? 0.0 : samples[0]}, {"ci95", 0.0}};
  const MeanCi ci = mean_ci95(samples);
  return {{"mean", ci.mean}, {"ci95", ci.half_width}};
}

}  // namespace detail

struct RunOutcome {
  std::filesystem::path dir;
  std::vector<MetricRow> rows;
  std::vector<std::string> failures;  // "(label, seed): error"

  bool ok() const { return failures.empty(); }
};

// Runs every configured mechanism on the same per-seed instance, single
// round, fresh prices and empty history. Emits results.csv, summary.json and
// a config snapshot under <out>/compare/<label>/.
inline RunOutcome run_compare(const ExperimentConfig& cfg, const std::string& label = "") {
  check_config(cfg);
  RunOutcome out;
  out.dir = detail::make_run_dir(cfg, "compare", label);
  detail::write_file(out.dir / "config_snapshot.json", config_to_json(cfg).dump(2) + "\n");

  const std::size_t n_seeds = cfg.seeds.size();
  std::vector<Instance> instances(n_seeds);
  std::vector<std::string> build_errors(n_seeds);
  detail::parallel_for(n_seeds, cfg.threads, [&](std::size_t s) {
    try {
      instances[s] = build_experiment_instance(cfg, cfg.seeds[s]);
    } catch (const std::exception& e) {
      build_errors[s] = e.what();
    }
  });
  for (std::size_t s = 0; s < n_seeds; ++s)
    if (!build_errors[s].empty())
      out.failures.push_back("(instance, seed " + std::to_string(cfg.seeds[s]) + "): " + build_errors[s]);
  if (!out.failures.empty()) return out;

  const std::size_t n_tasks = cfg.mechanisms.size() * n_seeds;
  std::vector<MetricRow> rows(n_tasks);
  std::vector<std::string> errors(n_tasks);
  detail::parallel_for(n_tasks, cfg.threads, [&](std::size_t t) {
    const std::size_t m = t / n_seeds;
    const std::size_t s = t % n_seeds;
    try {
      const Mechanism mech = mechanism_from_string(cfg.mechanisms[m]);
      const Instance& inst = instances[s];
      const PricingState prices = init_pricing_state(inst, cfg.pricing);
      const FairnessHistory hist;
      const AllocationSet alloc = run_mechanism(mech, inst, prices, hist, cfg, cfg.seeds[s]);
      rows[t] = compute_metric_row(cfg.mechanisms[m], cfg.seeds[s], alloc, inst);
    } catch (const std::exception& e) {
      errors[t] = e.what();
    }
  });
  for (std::size_t t = 0; t < n_tasks; ++t) {
    if (!errors[t].empty()) {
      out.failures.push_back("(" + cfg.mechanisms[t / n_seeds] + ", seed " +
                             std::to_string(cfg.seeds[t % n_seeds]) + "): " + errors[t]);
      continue;
    }
    out.rows.push_back(rows[t]);
  }

  std::string csv = metric_csv_header();
  for (const auto& row : out.rows) csv += metric_csv_row(row);
  detail::write_file(out.dir / "results.csv", csv);

  json summary;
  summary["metadata"] = detail::metadata_json(cfg, "compare");
  for (const auto& mech : cfg.mechanisms) {
    std::vector<double> eff, rev, sat, util, jain, energy;
    for (const auto& row : out.rows) {
      if (row.label != mech) continue;
      eff.push_back(row.efficiency);
      rev.push_back(row.revenue);
      sat.push_back(row.satisfaction);
      util.push_back(row.utilization);
      jain.push_back(row.jain);
      energy.push_back(row.energy);
    }
    summary["results"][mech] = {{"efficiency", detail::summarize(eff)},
                                {"revenue", detail::summarize(rev)},
                                {"satisfaction", detail::summarize(sat)},
                                {"utilization", detail::summarize(util)},
                                {"jain", detail::summarize(jain)},
                                {"energy", detail::summarize(energy)}};
  }
  if (!out.failures.empty()) summary["failures"] = out.failures;
  detail::write_file(out.dir / "summary.json", summary.dump(2) + "\n");
  return out;
}

struct AblationConfig {
  std::string name;
  UtilityWeights weights;
};

// The six studied weight bundles. NoEnergy and NoFairness are the full
// weights with the ablated term zeroed and the remainder rescaled to sum 1.
inline std::vector<AblationConfig> ablation_suite() {
  return {{"Full", {0.4, 0.3, 0.1, 0.2}},
          {"NoCost", {0.0, 0.5, 0.2, 0.3}},
          {"NoQoS", {0.6, 0.0, 0.1, 0.3}},
          {"NoEnergy", {4.0 / 9.0, 3.0 / 9.0, 0.0, 2.0 / 9.0}},
          {"NoFairness", {0.5, 0.375, 0.125, 0.0}},
          {"CostOnly", {1.0, 0.0, 0.0, 0.0}}};
}

// Runs MOHAF once per (ablation config, seed). Weight vectors are recorded in
// the summary metadata.
inline RunOutcome run_ablate(const ExperimentConfig& cfg, const std::string& label = "") {
  check_config(cfg);
  RunOutcome out;
  out.dir = detail::make_run_dir(cfg, "ablate", label);
  detail::write_file(out.dir / "config_snapshot.json", config_to_json(cfg).dump(2) + "\n");

  const std::vector<AblationConfig> suite = ablation_suite();
  const std::size_t n_seeds = cfg.seeds.size();
  std::vector<Instance> instances(n_seeds);
  for (std::size_t s = 0; s < n_seeds; ++s)
    instances[s] = build_experiment_instance(cfg, cfg.seeds[s]);

  const std::size_t n_tasks = suite.size() * n_seeds;
  std::vector<MetricRow> rows(n_tasks);
  std::vector<std::string> errors(n_tasks);
  detail::parallel_for(n_tasks, cfg.threads, [&](std::size_t t) {
    const std::size_t a = t / n_seeds;
    const std::size_t s = t % n_seeds;
    try {
      ExperimentConfig variant = cfg;
      variant.weights = suite[a].weights;
      const Instance& inst = instances[s];
      const PricingState prices = init_pricing_state(inst, cfg.pricing);
      const FairnessHistory hist;
      const AllocationSet alloc =
          run_mechanism(Mechanism::kMohaf, inst, prices, hist, variant, cfg.seeds[s]);
      rows[t] = compute_metric_row(suite[a].name, cfg.seeds[s], alloc, inst);
    } catch (const std::exception& e) {
      errors[t] = e.what();
    }
  });
  for (std::size_t t = 0; t < n_tasks; ++t) {
    if (!errors[t].empty()) {
      out.failures.push_back("(" + suite[t / n_seeds].name + ", seed " +
                             std::to_string(cfg.seeds[t % n_seeds]) + "): " + errors[t]);
      continue;
    }
    out.rows.push_back(rows[t]);
  }

  std::string csv = "config,seed,pairs,efficiency,revenue,satisfaction,utilization,jain,energy\n";
  for (const auto& row : out.rows) csv += metric_csv_row(row);
  detail::write_file(out.dir / "results.csv", csv);

  json summary;
  summary["metadata"] = detail::metadata_json(cfg, "ablate");
  for (const auto& ab : suite) {
    std::vector<double> eff, sat, jain;
    for (const auto& row : out.rows) {
      if (row.label != ab.name) continue;
      eff.push_back(row.efficiency);
      sat.push_back(row.satisfaction);
      jain.push_back(row.jain);
    }
    summary["results"][ab.name] = {{"weights",
                                    {{"alpha", ab.weights.alpha},
                                     {"beta", ab.weights.beta},
                                     {"gamma", ab.weights.gamma},
                                     {"delta", ab.weights.delta}}},
                                   {"efficiency", detail::summarize(eff)},
                                   {"satisfaction", detail::summarize(sat)},
                                   {"jain", detail::summarize(jain)}};
  }
  if (!out.failures.empty()) summary["failures"] = out.failures;
  detail::write_file(out.dir / "summary.json", summary.dump(2) + "\n");
  return out;
}

struct ScaleRow {
  int rung = 0;
  int n_requests = 0;
  int n_resources = 0;
  std::uint64_t seed = 0;
  std::size_t bids = 0;
  int clusters = 0;
  std::size_t pairs = 0;
  double objective = 0.0;
  double wall_ms = 0.0;  // excluded from results.csv; timings are not reproducible
};

struct ScaleOutcome {
  std::filesystem::path dir;
  std::vector<ScaleRow> rows;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

// MOHAF across the size ladder. Deterministic quantities go to results.csv;
// wall times go to timings.csv so reruns stay byte-identical where promised.
inline ScaleOutcome run_scale(const ExperimentConfig& cfg, const std::string& label = "") {
  check_config(cfg);
  ScaleOutcome out;
  out.dir = detail::make_run_dir(cfg, "scale", label);
  detail::write_file(out.dir / "config_snapshot.json", config_to_json(cfg).dump(2) + "\n");

  for (std::size_t r = 0; r < cfg.ladder.size(); ++r) {
    for (const std::uint64_t seed : cfg.seeds) {
      ScaleRow row;
      row.rung = static_cast<int>(r);
      row.n_requests = cfg.ladder[r][0];
      row.n_resources = cfg.ladder[r][1];
      row.seed = seed;
      try {
        ExperimentConfig rung_cfg = cfg;
        rung_cfg.gen.n_requests = row.n_requests;
        rung_cfg.gen.n_resources = row.n_resources;
        const Instance inst = build_experiment_instance(rung_cfg, seed);
        const PricingState prices = init_pricing_state(inst, cfg.pricing);
        const FairnessHistory hist;
        MohafRunStats stats;
        const auto t0 = std::chrono::steady_clock::now();
        const AllocationSet alloc =
            run_mechanism(Mechanism::kMohaf, inst, prices, hist, rung_cfg, seed, &stats);
        const auto t1 = std::chrono::steady_clock::now();
        row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        row.bids = stats.bid_count;
        row.clusters = stats.clusters_used;
        row.pairs = alloc.pairs.size();
        row.objective = objective_value(alloc, inst, cfg.objective);
        out.rows.push_back(row);
      } catch (const std::exception& e) {
        out.failures.push_back("(rung " + std::to_string(r) + ", seed " + std::to_string(seed) +
                               "): " + e.what());
      }
    }
  }

  std::string csv = "rung,n_requests,n_resources,seed,bids,clusters,pairs,objective\n";
  std::string timings = "rung,n_requests,n_resources,seed,wall_ms\n";
  for (const auto& row : out.rows) {
    csv += std::to_string(row.rung) + ',' + std::to_string(row.n_requests) + ',' +
           std::to_string(row.n_resources) + ',' + std::to_string(row.seed) + ',' +
           std::to_string(row.bids) + ',' + std::to_string(row.clusters) + ',' +
           std::to_string(row.pairs) + ',' + format_double(row.objective) + '\n';
    timings += std::to_string(row.rung) + ',' + std::to_string(row.n_requests) + ',' +
               std::to_string(row.n_resources) + ',' + std::to_string(row.seed) + ',' +
               format_double(row.wall_ms) + '\n';
  }
  detail::write_file(out.dir / "results.csv", csv);
  detail::write_file(out.dir / "timings.csv", timings);

  json summary;
  summary["metadata"] = detail::metadata_json(cfg, "scale");
  std::vector<double> rung_means;
  for (std::size_t r = 0; r < cfg.ladder.size(); ++r) {
    std::vector<double> walls, bids;
    for (const auto& row : out.rows) {
      if (row.rung != static_cast<int>(r)) continue;
      walls.push_back(row.wall_ms);
      bids.push_back(static_cast<double>(row.bids));
    }
    double mean_wall = 0.0;
    for (const double w : walls) mean_wall += w;
    if (!walls.empty()) mean_wall /= static_cast<double>(walls.size());
    rung_means.push_back(mean_wall);
    summary["rungs"].push_back({{"n_requests", cfg.ladder[r][0]},
                                {"n_resources", cfg.ladder[r][1]},
                                {"mean_wall_ms", mean_wall},
                                {"mean_bids", detail::summarize(bids)["mean"]}});
  }
  for (std::size_t r = 1; r < rung_means.size(); ++r)
    summary["growth_factors"].push_back(rung_means[r - 1] > 0 ? rung_means[r] / rung_means[r - 1] : 0.0);
  if (!out.failures.empty()) summary["failures"] = out.failures;
  detail::write_file(out.dir / "summary.json", summary.dump(2) + "\n");
  return out;
}

struct PriceSimOutcome {
  std::filesystem::path dir;
  RoundLog log;
  ConvergenceReport report;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

// Multi-round pricing simulation with the first configured mechanism.
// Emits rounds.csv (round, resource, price, utilization, revenue) and
// convergence.json with the three stability verdicts.
inline PriceSimOutcome run_price_sim(const ExperimentConfig& cfg, const std::string& label = "") {
  check_config(cfg);
  PriceSimOutcome out;
  out.dir = detail::make_run_dir(cfg, "price-sim", label);
  detail::write_file(out.dir / "config_snapshot.json", config_to_json(cfg).dump(2) + "\n");

  try {
    const std::uint64_t seed = cfg.seeds.front();
    const Instance inst = build_experiment_instance(cfg, seed);
    const Mechanism mech = mechanism_from_string(cfg.mechanisms.front());
    const RoundMechanism round_mech = [&](const Instance& i, const PricingState& prices,
                                          const FairnessHistory& hist, std::uint64_t round_seed) {
      return run_mechanism(mech, i, prices, hist, cfg, round_seed);
    };
    out.log = run_pricing_rounds(inst, round_mech, cfg.pricing, cfg.rounds, seed);
    out.report = check_convergence(out.log, cfg.pricing, cfg.window);

    std::string csv = "round,resource_id,price,utilization,revenue\n";
    for (const auto& rec : out.log) {
      for (const auto& res : inst.resources) {
        csv += std::to_string(rec.round) + ',' + csv_escape(res.id) + ',' +
               format_double(rec.price.at(res.id)) + ',' +
               format_double(rec.utilization.at(res.id)) + ',' + format_double(rec.revenue) + '\n';
      }
    }
    detail::write_file(out.dir / "results.csv", csv);

    json report;
    report["metadata"] = detail::metadata_json(cfg, "price-sim");
    report["rounds"] = cfg.rounds;
    report["window"] = cfg.window;
    report["price_stable"] = out.report.price_stable;
    report["utilization_stable"] = out.report.utilization_stable;
    report["revenue_stable"] = out.report.revenue_stable;
    report["max_price_delta"] = out.report.max_price_delta;
    report["max_utilization_deviation"] = out.report.max_utilization_deviation;
    report["revenue_spread"] = out.report.revenue_spread;
    detail::write_file(out.dir / "convergence.json", report.dump(2) + "\n");
  } catch (const std::exception& e) {
    out.failures.push_back(std::string("(price-sim): ") + e.what());
  }
  return out;
}

}  // namespace mohaf
