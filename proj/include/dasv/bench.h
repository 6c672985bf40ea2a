// Copyright 2026 The dasv Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DASV_BENCH_H_
#define DASV_BENCH_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dasv/allocation.h"
#include "dasv/datagen.h"
#include "dasv/engine.h"
#include "dasv/plan.h"
#include "dasv/report.h"

namespace dasv {

struct MethodChoice {
  Method method = Method::kIusv;
  std::size_t samples = 16;  // perm
  std::uint64_t seed = 0;    // perm
  double gamma = 1.0;        // iusv

  std::string Label() const;
};

// Everything a method run needs, already in memory.
struct Workload {
  CoalitionPlan plan;
  std::vector<OwnedTable> tables;
  std::vector<std::string> owner_names;  // indexed by OwnerId
  UtilityModel utility;
  EngineOptions engine;  // owner_universe is set from owner_names
};

struct RunSettings {
  double timeout_seconds = 7200;
  std::size_t trad_owner_cap = 20;
  bool parallel = true;
};

// Runs one method. Timeouts and errors are recorded in the report, not
// thrown. The deadline covers assemblage and the Shapley computation;
// runtime_seconds covers only the latter. When `reference` is given the
// error rate against it is filled in. `allocation_out` receives the exact
// allocation on success.
RunReport RunMethod(const Workload& workload, const MethodChoice& method,
                    const RunSettings& settings,
                    const Allocation* reference = nullptr,
                    Allocation* allocation_out = nullptr);

// Inputs of a single `shapley` run.
struct RunConfig {
  std::vector<std::filesystem::path> datasets;
  std::optional<std::filesystem::path> schema;
  std::filesystem::path plan;
  std::optional<AssignmentScenario> scenario;
  std::optional<std::filesystem::path> assignment;  // manifest from `gen`
  std::optional<std::string> utility_attribute;
  MethodChoice method;
  RunSettings settings;
  std::optional<std::filesystem::path> output;
  std::string format = "json";  // json | csv

  // Throws ConfigError.
  void Validate() const;
};

// Builds the workload from either a manifest or datasets plus a scenario.
Workload LoadWorkload(const RunConfig& config);

// Workload for a generated assignment.
Workload MakeWorkload(CoalitionPlan plan, const OwnerAssignment& assignment,
                      const std::optional<std::string>& utility_attribute);

struct BenchConfig {
  std::vector<std::filesystem::path> datasets;
  std::optional<std::filesystem::path> schema;
  std::filesystem::path plan;
  std::optional<std::string> utility_attribute;
  std::vector<AssignmentScenario> scenarios;
  std::vector<MethodChoice> methods;
  RunSettings settings;
  // Compute an exact IUSV allocation per scenario for error rates.
  bool reference = true;
  // Run cells concurrently; runtimes are then not comparable.
  bool parallel_cells = false;

  void Validate() const;
};

// JSON keys: datasets, schema, plan, utility, scenario (base object),
// sweep (lists over k, alpha, m, beta, seed), scenarios (explicit list),
// methods ([{"method": "perm", "samples": 16, "seed": 0}, ...]),
// timeout, trad_owner_cap, reference, parallel_cells. Relative paths are
// resolved against `base_dir`.
BenchConfig ParseBenchConfig(std::string_view json_text,
                             const std::filesystem::path& base_dir = {});
BenchConfig LoadBenchConfig(const std::filesystem::path& path);

// One report per (scenario, method) cell, scenarios outermost. A failing
// cell does not stop the matrix.
std::vector<RunReport> RunBenchmark(const BenchConfig& config);

}  // namespace dasv

#endif  // DASV_BENCH_H_
