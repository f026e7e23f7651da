// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: plan, verify, bench, gen-structure, inspect.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "pcgplan/cli/bench.h"
#include "pcgplan/cli/commands.h"
#include "pcgplan/cli/config.h"
#include "pcgplan/errors.h"
#include "pcgplan/parallel.h"

namespace {

using pcgplan::PlanConfig;

struct GlobalOptions {
  std::string config;
  std::optional<uint64_t> seed;
  std::string out;
  int threads = 0;
  std::string log_level = "info";
};

PlanConfig base_config(const GlobalOptions& g) {
  PlanConfig c = g.config.empty() ? PlanConfig{} : pcgplan::load_config(g.config);
  if (g.seed) c.seed = *g.seed;
  if (!g.out.empty()) c.output_dir = g.out;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pcgplan: coverage path planning over a primitive coverage graph"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--config", g.config, "JSON config file");
  app.add_option("--seed", g.seed, "RNG seed (overrides the config)");
  app.add_option("--out", g.out, "Output directory (overrides the config)");
  app.add_option("--threads", g.threads,
                 "Worker threads (default: PCGPLAN_THREADS or all cores)");
  app.add_option("--log-level", g.log_level, "trace|debug|info|warn|error|off");

  auto* plan = app.add_subcommand("plan", "Plan an inspection path for a mesh");
  std::string plan_mesh, plan_method;
  std::optional<double> plan_target;
  bool plan_debug = false;
  plan->add_option("--mesh", plan_mesh, "OBJ or STL mesh (overrides the config)");
  plan->add_option("--method", plan_method, "gns | greedy | vpp-tsp");
  plan->add_option("--coverage-target", plan_target, "Required coverage ratio");
  plan->add_flag("--debug-exports", plan_debug, "Write via-point/primitive JSONL dumps");

  auto* verify = app.add_subcommand("verify", "Simulate a scan along a planned path");
  std::string verify_path, verify_mesh;
  verify->add_option("path", verify_path, "path.json from plan")->required();
  verify->add_option("--mesh", verify_mesh, "Mesh (default: from the run manifest)");

  auto* bench = app.add_subcommand("bench", "Compare methods on synthetic structures");
  std::vector<std::string> bench_structures = {"box", "l-shape"};
  std::vector<std::string> bench_methods = {"gns", "vpp-tsp", "greedy"};
  int bench_trials = 10;
  bench->add_option("--structures", bench_structures, "box, l-shape, tower+annex, cavity")
      ->delimiter(',');
  bench->add_option("--methods", bench_methods, "gns, vpp-tsp, greedy")->delimiter(',');
  bench->add_option("--trials", bench_trials, "Trials per structure");

  auto* gen = app.add_subcommand("gen-structure", "Write a synthetic structure mesh");
  std::string gen_kind, gen_out;
  std::vector<double> gen_dims;
  gen->add_option("kind", gen_kind, "box | l-shape | tower+annex | cavity")->required();
  gen->add_option("--dims", gen_dims, "Dimensions in metres")->delimiter(',');
  gen->add_option("-o,--output", gen_out, "Output .obj or .stl")->required();

  auto* inspect = app.add_subcommand("inspect", "Print mesh or graph statistics");
  std::string inspect_file;
  inspect->add_option("file", inspect_file, "Mesh or pcg.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and friends exit 0; usage errors count as configuration errors.
    return app.exit(e) == 0 ? pcgplan::kExitOk : pcgplan::kExitConfigError;
  }

  const auto level = spdlog::level::from_str(g.log_level);
  if (level == spdlog::level::off && g.log_level != "off") {
    std::cerr << "invalid --log-level '" << g.log_level << "'\n";
    return pcgplan::kExitConfigError;
  }
  spdlog::set_level(level);
  if (g.threads > 0) pcgplan::set_worker_threads(g.threads);

  try {
    if (*plan) {
      PlanConfig c = base_config(g);
      if (!plan_mesh.empty()) c.mesh = plan_mesh;
      if (!plan_method.empty()) c.method = plan_method;
      if (plan_target) c.search.coverage_target = *plan_target;
      if (plan_debug) c.export_debug = true;
      return pcgplan::cmd_plan(c);
    }
    if (*verify) {
      std::optional<PlanConfig> c;
      if (!g.config.empty()) c = base_config(g);
      std::optional<std::filesystem::path> mesh, out;
      if (!verify_mesh.empty()) mesh = verify_mesh;
      if (!g.out.empty()) out = g.out;
      return pcgplan::cmd_verify(verify_path, mesh, c, out);
    }
    if (*bench) {
      pcgplan::BenchSpec spec;
      spec.config = base_config(g);
      spec.methods = bench_methods;
      spec.trials = bench_trials;
      spec.base_seed = spec.config.seed;
      for (const std::string& s : bench_structures) {
        spec.cases.push_back({s, pcgplan::parse_structure_kind(s), {}});
      }
      return pcgplan::cmd_bench(spec, g.out.empty() ? "pcgplan_bench" : g.out);
    }
    if (*gen) {
      return pcgplan::cmd_gen_structure(pcgplan::parse_structure_kind(gen_kind), gen_dims,
                                        gen_out);
    }
    if (*inspect) return pcgplan::cmd_inspect(inspect_file, std::cout);
  } catch (const pcgplan::ConfigError& e) {
    spdlog::error("{}", e.what());
    return pcgplan::kExitConfigError;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return pcgplan::kExitIoError;
  }
  return pcgplan::kExitOk;
}
