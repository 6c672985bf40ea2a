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

#include "dasv/bench.h"

#include <chrono>
#include <cstdio>
#include <exception>
#include <utility>

#include "json.hpp"

#include "dasv/baselines.h"
#include "dasv/deadline.h"
#include "dasv/errors.h"
#include "dasv/io.h"
#include "dasv/iusv.h"
#include "parallel.h"

namespace dasv {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void AddScenarioParams(const AssignmentScenario& s,
                       std::map<std::string, std::string>& params) {
  params["owner_mode"] = std::string(ToString(s.owner_mode));
  params["assign_mode"] = std::string(ToString(s.assign_mode));
  params["k"] = std::to_string(s.k);
  params["alpha"] = FormatDouble(s.alpha);
  params["m"] = std::to_string(s.max_copies);
  params["beta"] = FormatDouble(s.beta);
  params["scenario_seed"] = std::to_string(s.seed);
}

fs::path Resolve(const fs::path& base, const fs::path& p) {
  return p.is_absolute() || base.empty() ? p : base / p;
}

}  // namespace

std::string MethodChoice::Label() const {
  switch (method) {
    case Method::kTrad:
      return "trad";
    case Method::kPerm:
      return "perm-" + std::to_string(samples) + "-s" + std::to_string(seed);
    case Method::kIusv:
      return "iusv-g" + FormatDouble(gamma);
  }
  return "?";
}

RunReport RunMethod(const Workload& workload, const MethodChoice& method,
                    const RunSettings& settings, const Allocation* reference,
                    Allocation* allocation_out) {
  RunReport report;
  report.cell = method.Label();
  report.method = method.method;
  switch (method.method) {
    case Method::kPerm:
      report.params["samples"] = std::to_string(method.samples);
      report.params["seed"] = std::to_string(method.seed);
      report.params["prng"] = std::string(kPermutationPrng);
      break;
    case Method::kIusv:
      report.params["gamma"] = FormatDouble(method.gamma);
      break;
    case Method::kTrad:
      break;
  }
  const std::size_t universe = workload.owner_names.size();
  report.params["owners"] = std::to_string(universe);

  Clock::time_point start = Clock::now();
  try {
    if (!(settings.timeout_seconds > 0)) {
      throw ConfigError("timeout must be > 0");
    }
    const Deadline deadline =
        Deadline::After(std::chrono::duration<double>(settings.timeout_seconds));
    EngineOptions engine = workload.engine;
    engine.owner_universe = universe;
    engine.deadline = &deadline;
    Allocation allocation;
    if (method.method == Method::kIusv) {
      const CoalitionSet coalition =
          EvaluatePlan(workload.plan, workload.tables, workload.utility, engine);
      report.assemble_seconds = Seconds(start);
      report.tuples = coalition.tuples.size();
      start = Clock::now();
      IusvOptions opts;
      opts.gamma = method.gamma;
      opts.deadline = &deadline;
      IusvResult result = settings.parallel ? IusvAll(coalition, opts)
                                            : IusvAllSerial(coalition, opts);
      allocation = std::move(result.allocation);
      report.cases = result.stats;
    } else {
      UtilityEvaluator evaluator(workload.plan, workload.tables,
                                 workload.utility, engine);
      const OwnerSet all = OwnerSet::Full(universe);
      if (method.method == Method::kTrad) {
        TradOptions opts;
        opts.owner_cap = settings.trad_owner_cap;
        opts.parallel = settings.parallel;
        opts.deadline = &deadline;
        allocation = TradShapley(evaluator, all, opts);
      } else {
        PermOptions opts;
        opts.samples = method.samples;
        opts.seed = method.seed;
        opts.parallel = settings.parallel;
        opts.deadline = &deadline;
        allocation = PermShapley(evaluator, all, opts);
      }
      report.evaluations = evaluator.executions();
    }
    report.runtime_seconds = Seconds(start);
    for (std::size_t i = 0; i < universe; ++i) {
      report.allocation.push_back(
          {workload.owner_names[i],
           allocation[OwnerId(static_cast<std::uint32_t>(i))].rational()});
    }
    if (reference != nullptr) {
      try {
        report.error_rate = ComputeErrorRate(*reference, allocation);
      } catch (const MetricError& e) {
        report.message = e.what();
      }
    }
    if (allocation_out != nullptr) *allocation_out = std::move(allocation);
  } catch (const TimeoutError& e) {
    report.status = RunStatus::kTimeout;
    report.message = e.what();
    report.runtime_seconds = Seconds(start);
  } catch (const std::exception& e) {
    report.status = RunStatus::kError;
    report.message = e.what();
    report.runtime_seconds = Seconds(start);
  }
  return report;
}

void RunConfig::Validate() const {
  if (!(settings.timeout_seconds > 0)) throw ConfigError("timeout must be > 0");
  if (plan.empty()) throw ConfigError("a plan is required");
  if (!assignment && (datasets.empty() || !scenario)) {
    throw ConfigError("need an assignment manifest or datasets plus a scenario");
  }
  if (format != "json" && format != "csv") {
    throw ConfigError("format must be json or csv");
  }
  if (method.method == Method::kPerm && method.samples == 0) {
    throw ConfigError("samples must be >= 1");
  }
  if (method.method == Method::kIusv && !(method.gamma > 0)) {
    throw ConfigError("gamma must be > 0");
  }
}

Workload MakeWorkload(CoalitionPlan plan, const OwnerAssignment& assignment,
                      const std::optional<std::string>& utility_attribute) {
  Workload w;
  w.plan = std::move(plan);
  w.tables = assignment.tables;
  for (const OwnerInfo& o : assignment.owners) w.owner_names.push_back(o.name);
  w.utility = utility_attribute ? UtilityModel::FromAttribute(*utility_attribute)
                                : UtilityModel::Unit();
  w.engine.owner_universe = w.owner_names.size();
  return w;
}

Workload LoadWorkload(const RunConfig& config) {
  config.Validate();
  CoalitionPlan plan = CoalitionPlan::Load(config.plan);
  OwnerAssignment assignment;
  if (config.assignment) {
    OwnerData data = ReadAssignment(*config.assignment);
    assignment.owners = std::move(data.owners);
    assignment.tables = std::move(data.tables);
  } else {
    std::optional<SchemaConfig> schema;
    if (config.schema) schema = LoadSchemaConfig(*config.schema);
    const Dataset dataset =
        IngestCsv(config.datasets, schema ? &*schema : nullptr);
    assignment = GenerateAssignment(dataset, *config.scenario);
  }
  return MakeWorkload(std::move(plan), assignment, config.utility_attribute);
}

void BenchConfig::Validate() const {
  if (!(settings.timeout_seconds > 0)) throw ConfigError("timeout must be > 0");
  if (datasets.empty()) throw ConfigError("bench needs at least one dataset");
  if (plan.empty()) throw ConfigError("bench needs a plan");
  if (scenarios.empty()) throw ConfigError("bench needs at least one scenario");
  if (methods.empty()) throw ConfigError("bench needs at least one method");
  for (const AssignmentScenario& s : scenarios) s.Validate();
}

BenchConfig ParseBenchConfig(std::string_view json_text,
                             const fs::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bench config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("bench config must be an object");
  BenchConfig c;
  try {
    for (const json& p : j.at("datasets")) {
      c.datasets.push_back(Resolve(base_dir, p.get<std::string>()));
    }
    c.plan = Resolve(base_dir, j.at("plan").get<std::string>());
    if (j.contains("schema") && !j["schema"].is_null()) {
      c.schema = Resolve(base_dir, j["schema"].get<std::string>());
    }
    if (j.contains("utility") && !j["utility"].is_null()) {
      c.utility_attribute = j["utility"].get<std::string>();
    }
    const json base = j.value("scenario", json::object());
    if (j.contains("scenarios")) {
      for (const json& s : j["scenarios"]) {
        json merged = base;
        merged.update(s);
        c.scenarios.push_back(ParseScenario(merged.dump()));
      }
    } else {
      std::vector<json> cells{base};
      if (j.contains("sweep")) {
        for (const auto& [key, values] : j["sweep"].items()) {
          std::vector<json> next;
          for (const json& cell : cells) {
            for (const json& v : values) {
              json copy = cell;
              copy[key] = v;
              next.push_back(std::move(copy));
            }
          }
          cells = std::move(next);
        }
      }
      for (const json& cell : cells) {
        c.scenarios.push_back(ParseScenario(cell.dump()));
      }
    }
    for (const json& m : j.at("methods")) {
      MethodChoice choice;
      choice.method = ParseMethod(m.at("method").get<std::string>());
      choice.samples = m.value("samples", choice.samples);
      choice.seed = m.value("seed", choice.seed);
      choice.gamma = m.value("gamma", choice.gamma);
      c.methods.push_back(choice);
    }
    c.settings.timeout_seconds = j.value("timeout", c.settings.timeout_seconds);
    c.settings.trad_owner_cap = j.value("trad_owner_cap", c.settings.trad_owner_cap);
    c.reference = j.value("reference", c.reference);
    c.parallel_cells = j.value("parallel_cells", c.parallel_cells);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bench config: ") + e.what());
  }
  c.Validate();
  return c;
}

BenchConfig LoadBenchConfig(const fs::path& path) {
  return ParseBenchConfig(ReadFile(path), path.parent_path());
}

std::vector<RunReport> RunBenchmark(const BenchConfig& config) {
  config.Validate();
  std::optional<SchemaConfig> schema;
  if (config.schema) schema = LoadSchemaConfig(*config.schema);
  const Dataset dataset =
      IngestCsv(config.datasets, schema ? &*schema : nullptr);
  const CoalitionPlan plan = CoalitionPlan::Load(config.plan);

  std::vector<RunReport> out;
  for (const AssignmentScenario& scenario : config.scenarios) {
    const std::string prefix = scenario.Label() + " k=" +
                               std::to_string(scenario.k) + " seed=" +
                               std::to_string(scenario.seed) + " ";
    std::map<std::string, std::string> scenario_params;
    AddScenarioParams(scenario, scenario_params);
    std::vector<RunReport> cells(config.methods.size());
    try {
      const OwnerAssignment assignment = GenerateAssignment(dataset, scenario);
      const Workload workload =
          MakeWorkload(plan, assignment, config.utility_attribute);
      RunSettings settings = config.settings;
      if (config.parallel_cells) settings.parallel = false;

      std::optional<Allocation> reference;
      if (config.reference) {
        Allocation exact;
        const RunReport r =
            RunMethod(workload, MethodChoice{}, settings, nullptr, &exact);
        if (r.status == RunStatus::kOk) reference = std::move(exact);
      }
      internal::ParallelFor(
          static_cast<std::int64_t>(config.methods.size()),
          config.parallel_cells, [&](std::int64_t i) {
            cells[i] = RunMethod(workload, config.methods[i], settings,
                                 reference ? &*reference : nullptr);
          });
    } catch (const std::exception& e) {
      // Scenario generation failed: every cell of the row reports it.
      for (std::size_t i = 0; i < cells.size(); ++i) {
        cells[i] = RunReport{};
        cells[i].method = config.methods[i].method;
        cells[i].status = RunStatus::kError;
        cells[i].message = e.what();
      }
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      cells[i].cell = prefix + config.methods[i].Label();
      cells[i].params.insert(scenario_params.begin(), scenario_params.end());
      out.push_back(std::move(cells[i]));
    }
  }
  return out;
}

}  // namespace dasv
