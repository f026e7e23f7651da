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

#include "pcgplan/cli/bench.h"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <set>

#include <spdlog/fmt/fmt.h>
#include <spdlog/spdlog.h>

#include "pcgplan/cli/commands.h"
#include "pcgplan/errors.h"
#include "pcgplan/pcg/graph_io.h"

namespace pcgplan {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Published average reductions of the GNS path length against each baseline.
const std::map<std::string, double> kReferenceReductionPct = {{"vpp-tsp", 18.4},
                                                              {"greedy", 29.2}};

}  // namespace

void BenchSpec::validate() const {
  if (trials < 1) throw ConfigError("bench trials must be >= 1");
  if (cases.empty()) throw ConfigError("bench needs at least one structure");
  if (methods.empty()) throw ConfigError("bench needs at least one method");
  for (const std::string& m : methods) {
    if (m != "gns" && m != "greedy" && m != "vpp-tsp") {
      throw ConfigError("unknown bench method '" + m + "'");
    }
  }
}

BenchResult run_bench(const BenchSpec& spec, const fs::path& out_dir) {
  spec.validate();
  fs::create_directories(out_dir);
  BenchResult result;
  for (const BenchCase& bc : spec.cases) {
    const fs::path mesh_path = out_dir / (bc.name + ".obj");
    write_obj(make_structure(bc.kind, bc.dims), mesh_path);
    PlanConfig config = spec.config;
    config.mesh = mesh_path;
    config.resolve();
    config.validate();
    const Scene scene(load_mesh(mesh_path), config.max_patch_area);
    for (int t = 0; t < spec.trials; ++t) {
      config.seed = spec.base_seed + static_cast<uint64_t>(t);
      std::optional<PlanningGraph> pg;
      std::string graph_error;
      try {
        pg = build_planning_graph(scene, config);
      } catch (const std::exception& e) {
        graph_error = e.what();
      }
      for (const std::string& method : spec.methods) {
        BenchRow row;
        row.method = method;
        row.structure = bc.name;
        row.trial = t;
        row.seed = config.seed;
        if (!pg) {
          row.status = "error: " + graph_error;
          result.rows.push_back(row);
          continue;
        }
        const auto start = std::chrono::steady_clock::now();
        try {
          const InspectionPath path = run_search(pg->graph, method, config.search);
          row.length = path.length;
          row.coverage = path.coverage;
        } catch (const UnreachableCoverageError& e) {
          row.status = "unreachable";
          row.coverage = e.max_coverage();
        } catch (const std::exception& e) {
          row.status = std::string("error: ") + e.what();
        }
        row.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        spdlog::info("bench {} trial {} {}: length {:.2f} coverage {:.4f} [{}]", bc.name, t,
                     method, row.length, row.coverage, row.status);
        result.rows.push_back(row);
      }
    }
  }
  result.summary = summarize_bench(result.rows, spec.methods);
  return result;
}

json summarize_bench(const std::vector<BenchRow>& rows,
                     const std::vector<std::string>& methods) {
  struct Acc {
    double length = 0.0, coverage = 0.0, time = 0.0;
    int ok = 0, total = 0;
  };
  std::vector<std::string> structures;
  std::map<std::pair<std::string, std::string>, Acc> per;  // (structure, method)
  for (const BenchRow& r : rows) {
    if (std::find(structures.begin(), structures.end(), r.structure) == structures.end()) {
      structures.push_back(r.structure);
    }
    Acc& a = per[{r.structure, r.method}];
    ++a.total;
    if (r.status != "ok") continue;
    ++a.ok;
    a.length += r.length;
    a.coverage += r.coverage;
    a.time += r.wall_time_s;
  }

  json summary;
  summary["structures"] = json::object();
  std::map<std::string, std::vector<double>> reductions;
  bool ordering_holds = true;
  bool complete = true;
  for (const std::string& s : structures) {
    json js = json::object();
    std::map<std::string, double> mean_length;
    for (const std::string& m : methods) {
      const Acc& a = per[{s, m}];
      json jm = {{"runs", a.total}, {"ok", a.ok}};
      if (a.ok > 0) {
        mean_length[m] = a.length / a.ok;
        jm["mean_length"] = a.length / a.ok;
        jm["mean_coverage"] = a.coverage / a.ok;
        jm["mean_wall_time_s"] = a.time / a.ok;
      }
      if (a.ok != a.total) complete = false;
      js[m] = jm;
    }
    if (mean_length.count("gns")) {
      for (const auto& [m, len] : mean_length) {
        if (m == "gns") continue;
        const double red = 100.0 * (len - mean_length["gns"]) / len;
        reductions[m].push_back(red);
        js["gns_reduction_pct"][m] = red;
        if (!(mean_length["gns"] < len)) ordering_holds = false;
      }
    } else {
      ordering_holds = false;
    }
    summary["structures"][s] = js;
  }
  for (const auto& [m, values] : reductions) {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= values.size();
    summary["gns_reduction_pct"][m] = mean;
    if (kReferenceReductionPct.count(m)) {
      summary["reference_reduction_pct"][m] = kReferenceReductionPct.at(m);
    }
  }
  summary["gns_shortest"] = ordering_holds && !reductions.empty();
  summary["all_runs_ok"] = complete;
  summary["rows"] = rows.size();
  return summary;
}

void write_bench_csv(const std::vector<BenchRow>& rows, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "method,structure,trial,seed,length,coverage,wall_time_s,status\n";
  for (const BenchRow& r : rows) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    out << fmt::format("{},{},{},{},{:.6f},{:.6f},{:.4f},{}\n", r.method, r.structure, r.trial,
                       r.seed, r.length, r.coverage, r.wall_time_s, status);
  }
  if (!out) throw IoError("failed writing " + path.string());
}

int cmd_bench(const BenchSpec& spec, const fs::path& out_dir) {
  try {
    const BenchResult result = run_bench(spec, out_dir);
    write_bench_csv(result.rows, out_dir / "bench.csv");
    write_json_file(result.summary, out_dir / "summary.json");
    spdlog::info("bench summary: {}", result.summary.dump());
    return kExitOk;
  } catch (const ConfigError& e) {
    spdlog::error("bench: {}", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    spdlog::error("bench: {}", e.what());
    return kExitIoError;
  }
}

}  // namespace pcgplan
