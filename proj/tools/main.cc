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

// Command-line front end: gen, assemble, shapley, bench.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dasv/bench.h"
#include "dasv/datagen.h"
#include "dasv/engine.h"
#include "dasv/errors.h"
#include "dasv/io.h"
#include "dasv/plan.h"
#include "dasv/report.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dasv;

// Scenario flags shared by gen, assemble, shapley and bench.
struct ScenarioFlags {
  std::optional<std::string> file;
  std::string owner_mode = "EO";
  std::string assign_mode = "EA";
  std::size_t k = 5;
  double alpha = 4.0;
  std::size_t m = 3;
  double beta = 3.0;
  std::size_t threshold = 100;
  std::uint64_t seed = 0;

  void Register(CLI::App* app) {
    app->add_option("--scenario", file, "scenario JSON (flags below override it)");
    app->add_option("--owner-mode", owner_mode, "EO or UO");
    app->add_option("--assign-mode", assign_mode, "EA or UA");
    app->add_option("--k", k, "owners for the governing table(s)");
    app->add_option("--alpha", alpha, "Zipf exponent of copy counts");
    app->add_option("--m", m, "maximum copies per record");
    app->add_option("--beta", beta, "Zipf exponent of UA owner weights");
    app->add_option("--threshold", threshold, "small-table row threshold");
    app->add_option("--seed", seed, "random seed");
  }

  AssignmentScenario Build(const CLI::App* app) const {
    AssignmentScenario s = file ? LoadScenario(*file) : AssignmentScenario{};
    auto given = [&](const char* name) { return app->count(name) > 0; };
    if (!file || given("--owner-mode")) s.owner_mode = ParseOwnerMode(owner_mode);
    if (!file || given("--assign-mode")) s.assign_mode = ParseAssignMode(assign_mode);
    if (!file || given("--k")) s.k = k;
    if (!file || given("--alpha")) s.alpha = alpha;
    if (!file || given("--m")) s.max_copies = m;
    if (!file || given("--beta")) s.beta = beta;
    if (!file || given("--threshold")) s.small_table_threshold = threshold;
    if (!file || given("--seed")) s.seed = seed;
    s.Validate();
    return s;
  }
};

struct DataFlags {
  std::vector<std::string> data;
  std::optional<std::string> schema;

  void Register(CLI::App* app) {
    app->add_option("--data", data, "CSV files, one table each");
    app->add_option("--schema", schema, "schema config JSON");
  }

  std::vector<fs::path> Paths() const { return {data.begin(), data.end()}; }

  Dataset Load() const {
    if (data.empty()) throw UsageError("--data is required");
    std::optional<SchemaConfig> config;
    if (schema) config = LoadSchemaConfig(*schema);
    return IngestCsv(Paths(), config ? &*config : nullptr);
  }
};

void Emit(const std::optional<std::string>& out, const std::string& text) {
  if (out) {
    WriteFile(*out, text);
  } else {
    std::cout << text;
  }
}

std::string AssembleJson(const CoalitionSet& set,
                         const std::vector<std::string>& names) {
  json tuples = json::array();
  for (const CoalitionTuple& t : set.tuples) {
    json values = json::array();
    for (const Value& v : t.values) values.push_back(v.text());
    json syn = json::array();
    for (const OwnerSet& s : t.syntheses) {
      json members = json::array();
      for (OwnerId o : s.Members()) members.push_back(names.at(o.value));
      syn.push_back(members);
    }
    tuples.push_back({{"values", values},
                      {"utility", t.utility.ToString()},
                      {"syntheses", syn}});
  }
  const json j{{"schema", set.schema},
               {"owners", names},
               {"tuple_count", set.tuples.size()},
               {"total_utility", set.TotalUtility().ToString()},
               {"tuples", tuples}};
  return j.dump(2) + "\n";
}

std::string AssembleCsv(const CoalitionSet& set,
                        const std::vector<std::string>& names) {
  std::vector<std::string> header = set.schema;
  header.push_back("utility");
  header.push_back("syntheses");
  std::string out = CsvLine(header);
  for (const CoalitionTuple& t : set.tuples) {
    std::vector<std::string> row;
    for (const Value& v : t.values) row.push_back(v.text());
    row.push_back(t.utility.ToString());
    std::string syn;
    for (const OwnerSet& s : t.syntheses) {
      if (!syn.empty()) syn += ";";
      syn += "{";
      bool first = true;
      for (OwnerId o : s.Members()) {
        if (!first) syn += " ";
        syn += names.at(o.value);
        first = false;
      }
      syn += "}";
    }
    row.push_back(syn);
    out += CsvLine(row);
  }
  return out;
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int Run(int argc, char** argv) {
  CLI::App app{"Shapley value allocation for data assembled from many owners"};
  app.require_subcommand(1);

  // gen
  CLI::App* gen = app.add_subcommand("gen", "split a dataset among owners");
  DataFlags gen_data;
  ScenarioFlags gen_scenario;
  std::string gen_out;
  gen_data.Register(gen);
  gen_scenario.Register(gen);
  gen->add_option("--out", gen_out, "output directory")->required();

  // assemble
  CLI::App* assemble = app.add_subcommand("assemble", "evaluate a coalition plan");
  DataFlags asm_data;
  ScenarioFlags asm_scenario;
  std::string asm_plan;
  std::optional<std::string> asm_manifest, asm_out, asm_utility;
  std::string asm_format = "json";
  asm_data.Register(assemble);
  asm_scenario.Register(assemble);
  assemble->add_option("--plan", asm_plan, "coalition plan JSON")->required();
  assemble->add_option("--manifest", asm_manifest, "owner manifest from gen");
  assemble->add_option("--utility", asm_utility, "numeric utility attribute");
  assemble->add_option("--format", asm_format)->check(CLI::IsMember({"json", "csv"}));
  assemble->add_option("--out", asm_out, "output file (default stdout)");

  // shapley
  CLI::App* shapley = app.add_subcommand("shapley", "compute a Shapley allocation");
  DataFlags sh_data;
  ScenarioFlags sh_scenario;
  RunConfig sh;
  std::string sh_plan, sh_method = "iusv";
  std::optional<std::string> sh_manifest, sh_out, sh_utility;
  bool sh_reference = false;
  sh_data.Register(shapley);
  sh_scenario.Register(shapley);
  shapley->add_option("--plan", sh_plan, "coalition plan JSON")->required();
  shapley->add_option("--manifest", sh_manifest, "owner manifest from gen");
  shapley->add_option("--utility", sh_utility, "numeric utility attribute");
  shapley->add_option("--method", sh_method)->check(CLI::IsMember({"trad", "perm", "iusv"}));
  shapley->add_option("--samples", sh.method.samples, "permutation samples");
  shapley->add_option("--gamma", sh.method.gamma, "SC/SL dispatch factor");
  shapley->add_option("--timeout", sh.settings.timeout_seconds, "seconds");
  shapley->add_option("--trad-owner-cap", sh.settings.trad_owner_cap);
  shapley->add_flag("--reference", sh_reference, "also report the error rate against exact IUSV");
  shapley->add_option("--format", sh.format)->check(CLI::IsMember({"json", "csv"}));
  shapley->add_option("--out", sh_out, "output file (default stdout)");

  // bench
  CLI::App* bench = app.add_subcommand("bench", "run a scenario x method matrix");
  std::optional<std::string> b_config, b_out, b_utility, b_plan;
  DataFlags b_data;
  ScenarioFlags b_scenario;
  std::string b_ks, b_methods = "iusv,perm,trad", b_gammas = "1";
  std::size_t b_samples = 16;
  double b_timeout = 7200;
  std::string b_format = "csv";
  bool b_parallel_cells = false;
  bench->add_option("--config", b_config, "bench config JSON");
  b_data.Register(bench);
  b_scenario.Register(bench);
  bench->add_option("--plan", b_plan, "coalition plan JSON");
  bench->add_option("--utility", b_utility, "numeric utility attribute");
  bench->add_option("--ks", b_ks, "comma-separated k sweep");
  bench->add_option("--methods", b_methods, "comma-separated methods");
  bench->add_option("--gammas", b_gammas, "comma-separated gamma values for iusv");
  bench->add_option("--samples", b_samples, "permutation samples");
  bench->add_option("--timeout", b_timeout, "seconds per cell");
  bench->add_flag("--parallel-cells", b_parallel_cells);
  bench->add_option("--format", b_format)->check(CLI::IsMember({"json", "csv"}));
  bench->add_option("--out", b_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (gen->parsed()) {
    const Dataset dataset = gen_data.Load();
    const AssignmentScenario scenario = gen_scenario.Build(gen);
    const OwnerAssignment assignment = GenerateAssignment(dataset, scenario);
    WriteAssignment(gen_out, dataset, scenario, assignment);
    std::cout << ReadFile(fs::path(gen_out) / "manifest.json");
    return 0;
  }

  if (assemble->parsed()) {
    RunConfig rc;
    rc.plan = asm_plan;
    if (asm_manifest) {
      rc.assignment = *asm_manifest;
    } else {
      rc.datasets = asm_data.Paths();
      rc.schema = asm_data.schema;
      rc.scenario = asm_scenario.Build(assemble);
    }
    rc.utility_attribute = asm_utility;
    const Workload w = LoadWorkload(rc);
    const CoalitionSet set = EvaluatePlan(w.plan, w.tables, w.utility, w.engine);
    Emit(asm_out, asm_format == "json" ? AssembleJson(set, w.owner_names)
                                       : AssembleCsv(set, w.owner_names));
    return 0;
  }

  if (shapley->parsed()) {
    sh.plan = sh_plan;
    sh.method.method = ParseMethod(sh_method);
    sh.method.seed = sh_scenario.seed;
    if (sh_manifest) {
      sh.assignment = *sh_manifest;
    } else {
      sh.datasets = sh_data.Paths();
      sh.schema = sh_data.schema;
      sh.scenario = sh_scenario.Build(shapley);
    }
    sh.utility_attribute = sh_utility;
    const Workload w = LoadWorkload(sh);
    std::optional<Allocation> reference;
    if (sh_reference) {
      Allocation exact;
      const RunReport r = RunMethod(w, MethodChoice{}, sh.settings, nullptr, &exact);
      if (r.status != RunStatus::kOk) {
        std::cerr << "reference failed: " << r.message << "\n";
      } else {
        reference = std::move(exact);
      }
    }
    const RunReport report =
        RunMethod(w, sh.method, sh.settings, reference ? &*reference : nullptr);
    Emit(sh_out, sh.format == "json" ? ReportsToJson({report})
                                     : ReportsToCsv({report}));
    if (report.status == RunStatus::kTimeout) return 3;
    return report.status == RunStatus::kOk ? 0 : 1;
  }

  // bench
  BenchConfig config;
  if (b_config) {
    config = LoadBenchConfig(*b_config);
  } else {
    if (!b_plan) throw UsageError("bench needs --config or --plan");
    config.datasets = b_data.Paths();
    if (b_data.schema) config.schema = *b_data.schema;
    config.plan = *b_plan;
    config.utility_attribute = b_utility;
    const AssignmentScenario base = b_scenario.Build(bench);
    if (b_ks.empty()) {
      config.scenarios.push_back(base);
    } else {
      for (const std::string& k : SplitList(b_ks)) {
        AssignmentScenario s = base;
        s.k = std::stoul(k);
        config.scenarios.push_back(s);
      }
    }
    for (const std::string& name : SplitList(b_methods)) {
      const Method method = ParseMethod(name);
      if (method == Method::kIusv) {
        for (const std::string& g : SplitList(b_gammas)) {
          config.methods.push_back({method, b_samples, base.seed, std::stod(g)});
        }
      } else {
        config.methods.push_back({method, b_samples, base.seed, 1.0});
      }
    }
    config.settings.timeout_seconds = b_timeout;
    config.parallel_cells = b_parallel_cells;
    config.Validate();
  }
  const std::vector<RunReport> reports = RunBenchmark(config);
  Emit(b_out, b_format == "json" ? ReportsToJson(reports) : ReportsToCsv(reports));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return Run(argc, argv);
  } catch (const dasv::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const dasv::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
