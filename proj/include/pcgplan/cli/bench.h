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

#ifndef PCGPLAN_CLI_BENCH_H_
#define PCGPLAN_CLI_BENCH_H_

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pcgplan/cli/config.h"
#include "pcgplan/cli/structures.h"

namespace pcgplan {

struct BenchCase {
  std::string name;
  StructureKind kind = StructureKind::kBox;
  std::vector<double> dims;  // empty = defaults
};

struct BenchSpec {
  PlanConfig config;  // mesh and seed are set per case and trial
  std::vector<BenchCase> cases;
  std::vector<std::string> methods = {"gns", "vpp-tsp", "greedy"};
  int trials = 10;
  uint64_t base_seed = 1;  // trial t uses base_seed + t

  void validate() const;
};

struct BenchRow {
  std::string method;
  std::string structure;
  int trial = 0;
  uint64_t seed = 0;
  double length = 0.0;
  double coverage = 0.0;
  double wall_time_s = 0.0;  // graph construction is shared, not included
  std::string status = "ok";
};

struct BenchResult {
  std::vector<BenchRow> rows;
  nlohmann::json summary;
};

// One graph per (structure, trial), shared by every method. Failures are
// recorded in the row status and the run continues.
BenchResult run_bench(const BenchSpec& spec, const std::filesystem::path& out_dir);

// Means over rows with status "ok", per structure and overall, plus
// GNS length reductions against each baseline.
nlohmann::json summarize_bench(const std::vector<BenchRow>& rows,
                               const std::vector<std::string>& methods);

void write_bench_csv(const std::vector<BenchRow>& rows, const std::filesystem::path& path);

int cmd_bench(const BenchSpec& spec, const std::filesystem::path& out_dir);

}  // namespace pcgplan

#endif  // PCGPLAN_CLI_BENCH_H_
