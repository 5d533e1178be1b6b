#include "cli.hpp"

#include <array>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "trade/errors.hpp"
#include "trade/log.hpp"
#include "trade/oracle.hpp"
#include "trade/pga.hpp"
#include "trade/problem_io.hpp"
#include "trade/report_io.hpp"
#include "trade/scenario_io.hpp"
#include "trade/simulator.hpp"

namespace trade::cli {

namespace fs = std::filesystem;

void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(fmt::format("cannot write '{}'", tmp.string()));
    out << content;
    if (!out.flush()) throw Error(fmt::format("short write to '{}'", tmp.string()));
  }
  fs::rename(tmp, path);
}

namespace {

struct RunConfig {
  std::string scenario;
  std::string policy = "trade";
  std::optional<std::size_t> workers;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  std::string format = "json";
  bool serial = false;
  bool timing = false;
  std::uint64_t max_candidates = kDefaultOracleBound;
};

using Outputs = std::vector<std::pair<std::string, std::string>>;

void emit(const RunConfig& cfg, const Outputs& files) {
  fs::create_directories(cfg.out);
  for (const auto& [name, content] : files) {
    write_atomic(fs::path(cfg.out) / name, content);
    spdlog::info("wrote {}", (fs::path(cfg.out) / name).string());
  }
}

Outputs cmd_solve(const RunConfig& cfg) {
  const PlacementProblem p = load_problem(cfg.scenario);
  SolveOptions opt;
  opt.workers = cfg.workers.value_or(1);
  opt.execution = cfg.serial ? Execution::serial : Execution::openmp;
  const auto demands = p.demands();
  const auto caps = p.capacities();
  const PlacementResult r = solve_placement(p.traffic, p.delay, p.initial, demands, caps, p.weights, opt);
  SolveSummary summary;
  summary.workers = opt.workers;
  summary.execution = opt.execution;
  summary.initial_cost = calc_cost(p.traffic, p.initial, p.delay, demands, caps, p.weights);
  summary.include_timing = cfg.timing;
  fmt::print("cost {} -> {} in {} rounds\n", summary.initial_cost.total, r.cost.total, r.iterations);
  return {{"placement.json", placement_json(p, r, summary)}};
}

Outputs cmd_oracle(const RunConfig& cfg) {
  const PlacementProblem p = load_problem(cfg.scenario);
  const PlacementResult r =
      brute_force_oracle(p.traffic, p.delay, p.demands(), p.capacities(), p.weights, cfg.max_candidates);
  fmt::print("optimum cost {} over {} placements\n", r.cost.total, r.iterations);
  return {{"oracle.json", oracle_json(p, r, cfg.timing)}};
}

Outputs cmd_analyze(const RunConfig& cfg) {
  const MetricsDump dump = load_metrics(cfg.scenario);
  const std::size_t k = dump.service_names.size();
  StressGraphBuild build;
  if (dump.samples.empty()) {
    build.graph = TrafficStressGraph::zeros(k, 1.0);
  } else {
    build = build_stress_graph(dump.samples, k, dump.window_s);
  }
  const SortedPairs pairs = sort_pairs(build.graph);
  fmt::print("{} stressed pairs\n", pairs.size());
  if (cfg.format == "csv") return {{"stress_pairs.csv", stress_csv(dump, pairs)}};
  return {{"stress_graph.json", stress_json(dump, build, pairs)}};
}

LoadedScenario load_with_overrides(const RunConfig& cfg) {
  LoadedScenario sc = load_scenario(cfg.scenario);
  if (cfg.seed) {
    sc.spec.seed = *cfg.seed;
    sc.spec.noise.seed = *cfg.seed;
  }
  if (cfg.workers) sc.spec.control.pga.workers = *cfg.workers;
  if (cfg.serial) sc.spec.control.pga.execution = Execution::serial;
  return sc;
}

Outputs cmd_simulate(const RunConfig& cfg) {
  const LoadedScenario sc = load_with_overrides(cfg);
  const SimulationReport r = run_simulation(sc.spec, parse_policy(cfg.policy));
  fmt::print("{}: {} requests, goodput {:.4f}, {} migration events\n", cfg.policy, r.requests, r.goodput,
             r.migrations.size());
  Outputs files;
  if (cfg.format == "csv") {
    files.emplace_back("timeseries.csv", timeseries_csv(r));
  } else {
    files.emplace_back("report.json", report_json(r, sc));
  }
  files.emplace_back("decisions.jsonl", decisions_jsonl(r, sc));
  return files;
}

Outputs cmd_compare(const RunConfig& cfg) {
  const LoadedScenario sc = load_with_overrides(cfg);
  std::vector<SimulationReport> reports;
  for (Policy p : {Policy::kdefault, Policy::netmarks, Policy::trade}) {
    reports.push_back(run_simulation(sc.spec, p));
    const auto& r = reports.back();
    fmt::print("{:>9}: goodput {:.4f}, mean {:.1f} ms\n", to_string(p), r.goodput, r.mean_ms.value_or(0.0));
  }
  if (cfg.format == "csv") return {{"compare.csv", compare_csv(reports)}};
  return {{"compare.json", compare_json(reports, sc)}};
}

void add_common(CLI::App* sub, RunConfig& cfg, bool simulation) {
  sub->add_option("--scenario", cfg.scenario, "input file")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", cfg.out, "output directory");
  sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--seed", cfg.seed, "override the scenario seed");
  sub->add_option("--workers", cfg.workers, "PGA workers")->check(CLI::PositiveNumber);
  sub->add_flag("--serial", cfg.serial, "run PGA workers on the serial reference path");
  if (simulation) {
    sub->add_option("--policy", cfg.policy, "kdefault, netmarks or trade")
        ->check(CLI::IsMember({"kdefault", "netmarks", "trade"}));
  } else {
    sub->add_flag("--timing", cfg.timing, "include elapsed_ms in the output file");
  }
}

}  // namespace

int run(const std::vector<std::string>& args) {
  init_logging();
  CLI::App app{"Traffic- and delay-aware microservice placement toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* solve = app.add_subcommand("solve", "greedy placement for a problem file");
  add_common(solve, cfg, false);
  auto* oracle = app.add_subcommand("oracle", "exhaustive optimum for a small problem file");
  add_common(oracle, cfg, false);
  oracle->add_option("--max-candidates", cfg.max_candidates, "largest search space to enumerate");
  auto* analyze = app.add_subcommand("analyze", "stress graph from a counter dump");
  add_common(analyze, cfg, false);
  auto* simulate = app.add_subcommand("simulate", "run one policy on a scenario");
  add_common(simulate, cfg, true);
  auto* compare = app.add_subcommand("compare", "run all three policies on a scenario");
  add_common(compare, cfg, true);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidationError;
  }

  try {
    Outputs files;
    if (*solve) {
      files = cmd_solve(cfg);
    } else if (*oracle) {
      files = cmd_oracle(cfg);
    } else if (*analyze) {
      files = cmd_analyze(cfg);
    } else if (*simulate) {
      files = cmd_simulate(cfg);
    } else {
      files = cmd_compare(cfg);
    }
    emit(cfg, files);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kOk;
}

}  // namespace trade::cli
