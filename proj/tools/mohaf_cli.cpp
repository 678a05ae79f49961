// Experiment harness: mechanism comparison, ablation, scalability and
// dynamic-pricing studies with seeded, file-based reproducibility.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mohaf/experiment.hpp"
#include "mohaf/io.hpp"

namespace {

struct CliOverrides {
  std::string config_path;
  std::string out_dir;
  std::string columns;
  std::string label;
  std::string trace_path;
  std::vector<std::uint64_t> seeds;
  int threads = 0;
  int n_requests = 0;
  int n_resources = 0;
  int rounds = 0;
  int window = 0;
};

mohaf::ExperimentConfig resolve_config(const CliOverrides& ov) {
  mohaf::ExperimentConfig cfg;
  if (!ov.config_path.empty()) cfg = mohaf::load_config(ov.config_path, cfg);
  if (!ov.out_dir.empty()) cfg.out_dir = ov.out_dir;
  if (!ov.columns.empty()) cfg.columns = mohaf::parse_column_map(ov.columns);
  if (!ov.trace_path.empty()) cfg.trace_path = ov.trace_path;
  if (!ov.seeds.empty()) cfg.seeds = ov.seeds;
  if (ov.threads > 0) cfg.threads = ov.threads;
  if (ov.n_requests > 0) cfg.gen.n_requests = ov.n_requests;
  if (ov.n_resources > 0) cfg.gen.n_resources = ov.n_resources;
  if (ov.rounds > 0) cfg.rounds = ov.rounds;
  if (ov.window > 0) cfg.window = ov.window;
  return cfg;
}

void add_common_options(CLI::App* cmd, CliOverrides& ov) {
  cmd->add_option("--config", ov.config_path, "JSON experiment config; flags override file values");
  cmd->add_option("--out", ov.out_dir, "output directory root");
  cmd->add_option("--seed", ov.seeds, "seed list (repeatable)");
  cmd->add_option("--threads", ov.threads, "worker pool size");
  cmd->add_option("--columns", ov.columns, "trace column map ts,job,type,class,prio");
  cmd->add_option("--trace", ov.trace_path, "job event trace file (synthetic requests if absent)");
  cmd->add_option("--requests", ov.n_requests, "requests per instance");
  cmd->add_option("--resources", ov.n_resources, "resources per instance");
  cmd->add_option("--label", ov.label, "run directory label (default: UTC timestamp)");
}

int report(const std::vector<std::string>& failures, const std::string& dir) {
  std::cout << "run directory: " << dir << "\n";
  if (failures.empty()) return 0;
  std::cerr << failures.size() << " task(s) failed:\n";
  for (const auto& f : failures) std::cerr << "  " << f << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mohaf: multi-objective hierarchical auction experiment harness"};
  app.require_subcommand(1);

  CliOverrides ov;

  auto* compare = app.add_subcommand("compare", "run all mechanisms on shared instances");
  add_common_options(compare, ov);

  auto* ablate = app.add_subcommand("ablate", "run the six utility-weight ablation configs");
  add_common_options(ablate, ov);

  auto* scale = app.add_subcommand("scale", "run the size ladder and record bids/time");
  add_common_options(scale, ov);

  auto* price_sim = app.add_subcommand("price-sim", "multi-round dynamic pricing simulation");
  add_common_options(price_sim, ov);
  price_sim->add_option("--rounds", ov.rounds, "auction rounds to simulate");
  price_sim->add_option("--window", ov.window, "convergence window (final rounds)");

  auto* gen = app.add_subcommand("gen", "generate an instance JSON file");
  std::string gen_output = "instance.json";
  std::uint64_t gen_seed = 42;
  add_common_options(gen, ov);
  gen->add_option("--output", gen_output, "instance file to write");
  gen->add_option("--gen-seed", gen_seed, "generation seed");

  auto* validate_cmd = app.add_subcommand("validate", "check an allocation against an instance");
  std::string val_instance, val_allocation;
  validate_cmd->add_option("--instance", val_instance, "instance JSON file")->required();
  validate_cmd->add_option("--allocation", val_allocation, "allocation CSV or JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (compare->parsed()) {
      const auto outcome = mohaf::run_compare(resolve_config(ov), ov.label);
      return report(outcome.failures, outcome.dir.string());
    }
    if (ablate->parsed()) {
      const auto outcome = mohaf::run_ablate(resolve_config(ov), ov.label);
      return report(outcome.failures, outcome.dir.string());
    }
    if (scale->parsed()) {
      const auto outcome = mohaf::run_scale(resolve_config(ov), ov.label);
      return report(outcome.failures, outcome.dir.string());
    }
    if (price_sim->parsed()) {
      const auto outcome = mohaf::run_price_sim(resolve_config(ov), ov.label);
      if (outcome.ok()) {
        std::cout << "price_stable=" << (outcome.report.price_stable ? "true" : "false")
                  << " utilization_stable=" << (outcome.report.utilization_stable ? "true" : "false")
                  << " revenue_stable=" << (outcome.report.revenue_stable ? "true" : "false") << "\n";
      }
      return report(outcome.failures, outcome.dir.string());
    }
    if (gen->parsed()) {
      mohaf::ExperimentConfig cfg = resolve_config(ov);
      mohaf::GenerationConfig g = cfg.gen;
      if (!ov.seeds.empty()) g.seed = ov.seeds.front();
      else if (gen->count("--gen-seed")) g.seed = gen_seed;
      mohaf::Instance inst;
      if (cfg.trace_path.empty()) {
        inst = mohaf::build_instance(g);
      } else {
        std::ifstream in(cfg.trace_path);
        if (!in) throw std::runtime_error("cannot open trace " + cfg.trace_path);
        const auto parsed = mohaf::parse_job_events(in, cfg.columns);
        std::cout << "parsed " << parsed.events.size() << " submission events ("
                  << parsed.malformed << " malformed rows skipped)\n";
        inst = mohaf::build_instance_from_events(g, parsed.events);
      }
      mohaf::save_instance(inst, gen_output);
      std::cout << "wrote " << gen_output << " (" << inst.requests.size() << " requests, "
                << inst.resources.size() << " resources)\n";
      return 0;
    }
    if (validate_cmd->parsed()) {
      const mohaf::Instance inst = mohaf::load_instance(val_instance);
      mohaf::AllocationSet alloc;
      if (val_allocation.size() > 5 && val_allocation.substr(val_allocation.size() - 5) == ".json") {
        std::ifstream in(val_allocation);
        if (!in) throw std::runtime_error("cannot open " + val_allocation);
        mohaf::json j;
        in >> j;
        alloc = mohaf::allocation_from_json(j);
      } else {
        std::ifstream in(val_allocation);
        if (!in) throw std::runtime_error("cannot open " + val_allocation);
        alloc = mohaf::allocation_from_csv(in, inst);
      }
      const auto violations = mohaf::validate(alloc, inst);
      if (violations.empty()) {
        std::cout << "feasible: " << alloc.pairs.size() << " pairs, 0 violations\n";
        return 0;
      }
      std::cerr << violations.size() << " violation(s):\n";
      for (const auto& v : violations)
        std::cerr << "  " << mohaf::to_string(v.kind) << " request=" << v.request_id
                  << " resource=" << v.resource_id << " " << v.detail << "\n";
      return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
