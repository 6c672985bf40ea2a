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

#include <unistd.h>

#include <chrono>
#include <functional>
#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "dasv/bench.h"
#include "dasv/errors.h"
#include "dasv/io.h"
#include "dasv/iusv.h"
#include "dasv/report.h"
#include "support/support.h"

namespace dasv {
namespace {

namespace fs = std::filesystem;
using testing::Q;

const fs::path kWorld = fs::path(DASV_DATA_DIR) / "mini-world";

std::vector<fs::path> WorldFiles() {
  return {kWorld / "country.csv", kWorld / "city.csv", kWorld / "countrylanguage.csv"};
}

fs::path TempDir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() /
                     ("dasv_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string ErrorOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(CsvTest, QuotedFieldsAndLineNumbers) {
  const auto recs = ParseCsv("a,b\r\n\"x,1\",\"say \"\"hi\"\"\"\n\n\"multi\nline\",z\nlast,\n");
  ASSERT_EQ(recs.size(), 4u);
  EXPECT_EQ(recs[1].fields, (std::vector<std::string>{"x,1", "say \"hi\""}));
  EXPECT_EQ(recs[2].line, 4u);
  EXPECT_EQ(recs[2].fields[0], "multi\nline");
  EXPECT_EQ(recs[3].line, 6u);
  EXPECT_EQ(recs[3].fields, (std::vector<std::string>{"last", ""}));
}

TEST(CsvTest, MalformedQuotes) {
  EXPECT_NE(ErrorOf([] { ParseCsv("a\n\"open\n", "f.csv"); }).find("f.csv:2"),
            std::string::npos);
  EXPECT_NE(ErrorOf([] { ParseCsv("a\nb\"c\n", "f.csv"); }).find("f.csv:2"),
            std::string::npos);
  EXPECT_THROW(ParseCsv("\"a\"b\n"), ParseError);
}

TEST(CsvTest, EscapeRoundTrip) {
  const std::vector<std::string> fields = {"plain", "a,b", "q\"uote", "new\nline", ""};
  const auto recs = ParseCsv(CsvLine(fields));
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].fields, fields);
}

TEST(IngestTest, TypedHeader) {
  const Table t = ParseTableCsv("id:integer,name,score:decimal\n 01 , Ann ,2.50\n", "t");
  EXPECT_EQ(t.schema, (std::vector<std::string>{"id", "name", "score"}));
  EXPECT_EQ(t.types, (std::vector<ValueType>{ValueType::kInteger, ValueType::kString,
                                              ValueType::kDecimal}));
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0][0], Value::Number("1"));
  EXPECT_EQ(t.rows[0][1], Value::String("Ann"));
  EXPECT_EQ(t.rows[0][2].text(), "2.5");
}

TEST(IngestTest, HeaderOnlyIsEmptyTable) {
  const Table t = ParseTableCsv("a:integer,b\n", "t");
  EXPECT_EQ(t.arity(), 2u);
  EXPECT_TRUE(t.rows.empty());
  EXPECT_THROW(ParseTableCsv("", "t"), ParseError);
}

TEST(IngestTest, MalformedRowNamesLine) {
  const std::string msg = ErrorOf(
      [] { ParseTableCsv("a,b\n1,2\n3\n4,5\n", "t", nullptr, "bad.csv"); });
  EXPECT_NE(msg.find("bad.csv:3"), std::string::npos) << msg;
  const std::string typed = ErrorOf(
      [] { ParseTableCsv("a:integer\n1\nx\n", "t", nullptr, "bad.csv"); });
  EXPECT_NE(typed.find("bad.csv:3"), std::string::npos) << typed;
}

TEST(IngestTest, SchemaConfigSuppliesTypes) {
  const SchemaConfig config =
      ParseSchemaConfig(R"({"t": [{"name": "a", "type": "integer"}, {"name": "b"}]})");
  const Table t = ParseTableCsv("a,b\n007,x\n", "t", &config);
  EXPECT_EQ(t.rows[0][0], Value::Number("7"));
  EXPECT_THROW(ParseTableCsv("a,c\n1,x\n", "t", &config), ParseError);
  EXPECT_THROW(ParseSchemaConfig(R"({"t": [{"type": "integer"}]})"), ParseError);
  EXPECT_THROW(ParseSchemaConfig(R"({"t": [{"name": "a", "type": "real"}]})"), ParseError);
}

TEST(IngestTest, BundledWorldAndManifest) {
  const Dataset d = IngestCsv(WorldFiles());
  ASSERT_EQ(d.tables.size(), 3u);
  EXPECT_EQ(d.tables[0].name, "country");
  EXPECT_EQ(d.tables[0].rows.size(), 60u);
  EXPECT_EQ(d.tables[1].rows.size(), 200u);
  EXPECT_EQ(d.tables[2].rows.size(), 150u);

  const AssignmentScenario s = LoadScenario(kWorld / "scenario.json");
  const OwnerAssignment a = GenerateAssignment(d, s);
  const fs::path dir = TempDir("manifest");
  WriteAssignment(dir, d, s, a);
  const std::string manifest = ReadFile(dir / "manifest.json");
  EXPECT_NE(manifest.find("\"rows\": 200"), std::string::npos);
  EXPECT_NE(manifest.find("\"rows\": 150"), std::string::npos);
  EXPECT_NE(manifest.find("\"rows\": 60"), std::string::npos);

  const OwnerData back = ReadAssignment(dir / "manifest.json");
  ASSERT_EQ(back.owners.size(), a.owners.size());
  for (std::size_t i = 0; i < a.tables.size(); ++i) {
    EXPECT_EQ(back.owners[i].name, a.owners[i].name);
    EXPECT_EQ(back.tables[i].rows, a.tables[i].rows);
    EXPECT_EQ(back.tables[i].schema, a.tables[i].schema);
  }
  fs::remove_all(dir);
}

TEST(ScenarioIoTest, RoundTripAndUnknownKey) {
  AssignmentScenario s;
  s.owner_mode = OwnerMode::kUnequal;
  s.k = 9;
  s.alpha = 2.5;
  s.seed = 77;
  const AssignmentScenario back = ParseScenario(ScenarioToJson(s));
  EXPECT_EQ(back.owner_mode, s.owner_mode);
  EXPECT_EQ(back.k, 9u);
  EXPECT_EQ(back.alpha, 2.5);
  EXPECT_EQ(back.seed, 77u);
  EXPECT_THROW(ParseScenario(R"({"kk": 3})"), ConfigError);
  EXPECT_THROW(ParseScenario(R"({"k": 0})"), ConfigError);
}

Allocation Alloc(std::vector<const char*> values) {
  Allocation a(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    a.Set(OwnerId(static_cast<std::uint32_t>(i)), Utility::Parse(values[i]));
  }
  return a;
}

TEST(ErrorRateTest, Examples) {
  EXPECT_EQ(ComputeErrorRate(Alloc({"1", "2/3"}), Alloc({"1", "2/3"})), 0);
  EXPECT_EQ(ComputeErrorRate(Alloc({"1", "1"}), Alloc({"0.5", "1.5"})), Q("1/2"));
  EXPECT_THROW(ComputeErrorRate(Alloc({"0", "0"}), Alloc({"1", "0"})), MetricError);
  EXPECT_THROW(ComputeErrorRate(Alloc({"1"}), Alloc({"1", "0"})), MetricError);
}

TEST(CaseRatesTest, Examples) {
  CaseStats singles;
  singles.tuples = 10;
  singles.single_owner_only = 10;
  CaseRates r = ComputeCaseRates(singles);
  EXPECT_EQ(r.umos_rate, 0);
  EXPECT_EQ(r.sc_rate, 0);
  EXPECT_EQ(r.sl_rate, 0);

  CaseStats mixed;
  mixed.tuples = 100;
  mixed.unique_multi = 80;
  mixed.general = 20;
  mixed.sc_calls = 15;
  mixed.sl_calls = 5;
  r = ComputeCaseRates(mixed);
  EXPECT_DOUBLE_EQ(r.umos_rate, 0.8);
  EXPECT_DOUBLE_EQ(r.sc_rate, 0.75);
  EXPECT_DOUBLE_EQ(r.sl_rate, 0.25);

  CaseStats shared = IusvTuple(testing::Syn(3, {{0, 1}, {0, 2}}), Utility(1)).stats;
  r = ComputeCaseRates(shared);
  EXPECT_EQ(r.umos_rate, 0);
  EXPECT_EQ(r.sc_rate, 1);
  EXPECT_EQ(r.sl_rate, 0);
}

Workload WorldWorkload(OwnerMode mode, std::size_t k) {
  AssignmentScenario s;
  s.owner_mode = mode;
  s.k = k;
  s.seed = 1;
  return MakeWorkload(CoalitionPlan::Load((kWorld / "plan.json").string()),
                      GenerateAssignment(IngestCsv(WorldFiles()), s), std::nullopt);
}

TEST(RunMethodTest, IusvAndTradAgreeOnSixOwners) {
  const Workload w = WorldWorkload(OwnerMode::kUnequal, 2);
  ASSERT_EQ(w.owner_names.size(), 6u);
  RunSettings settings;
  settings.timeout_seconds = 120;
  Allocation exact;
  const RunReport iusv = RunMethod(w, {Method::kIusv}, settings, nullptr, &exact);
  const RunReport trad = RunMethod(w, {Method::kTrad}, settings, &exact);
  ASSERT_EQ(iusv.status, RunStatus::kOk) << iusv.message;
  ASSERT_EQ(trad.status, RunStatus::kOk) << trad.message;
  EXPECT_EQ(iusv.allocation, trad.allocation);
  EXPECT_EQ(*trad.error_rate, 0);
  EXPECT_GT(trad.evaluations, 0u);
  EXPECT_TRUE(iusv.cases.has_value());
  EXPECT_GT(iusv.tuples, 0u);
}

TEST(RunMethodTest, TradRefusesTwentyFiveOwners) {
  const Workload w = WorldWorkload(OwnerMode::kUnequal, 21);
  ASSERT_EQ(w.owner_names.size(), 25u);
  const RunReport r = RunMethod(w, {Method::kTrad}, RunSettings{});
  EXPECT_EQ(r.status, RunStatus::kError);
  EXPECT_NE(r.message.find("refuses"), std::string::npos) << r.message;
  EXPECT_TRUE(r.allocation.empty());
}

TEST(RunMethodTest, TimeoutWithinSlack) {
  const Workload w = WorldWorkload(OwnerMode::kUnequal, 16);
  ASSERT_EQ(w.owner_names.size(), 20u);
  RunSettings settings;
  settings.timeout_seconds = 1.0;
  const auto start = std::chrono::steady_clock::now();
  const RunReport r = RunMethod(w, {Method::kTrad}, settings);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_EQ(r.status, RunStatus::kTimeout);
  EXPECT_LE(elapsed, 1.1);
}

TEST(RunMethodTest, PermRecordsGeneratorAndSeed) {
  const Workload w = WorldWorkload(OwnerMode::kEqual, 2);
  MethodChoice perm{Method::kPerm, 8, 42};
  const RunReport a = RunMethod(w, perm, RunSettings{});
  const RunReport b = RunMethod(w, perm, RunSettings{});
  EXPECT_EQ(a.params.at("prng"), "mt19937_64");
  EXPECT_EQ(a.params.at("seed"), "42");
  EXPECT_TRUE(a.SameResult(b));
}

TEST(ReportTest, CsvRoundTrip) {
  const Workload w = WorldWorkload(OwnerMode::kEqual, 3);
  Allocation exact;
  std::vector<RunReport> reports;
  reports.push_back(RunMethod(w, {Method::kIusv, 16, 0, 0.5}, RunSettings{}, nullptr, &exact));
  reports.push_back(RunMethod(w, {Method::kPerm, 4, 3}, RunSettings{}, &exact));
  reports.push_back(RunMethod(w, {Method::kTrad}, RunSettings{}, &exact));
  RunReport odd;
  odd.cell = "odd \"cell\", with\nnewline";
  odd.status = RunStatus::kError;
  odd.message = "boom, \"quoted\"";
  reports.push_back(odd);
  const std::vector<RunReport> back = ParseReportsCsv(ReportsToCsv(reports));
  ASSERT_EQ(back.size(), reports.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_TRUE(back[i].SameResult(reports[i])) << i;
    EXPECT_EQ(back[i].runtime_seconds, reports[i].runtime_seconds);
  }
  EXPECT_THROW(ParseReportsCsv("x,y\n"), ParseError);
}

TEST(ReportTest, JsonIsCanonical) {
  RunReport r;
  r.cell = "c";
  r.allocation = {{"o0", Q("2/3")}};
  r.error_rate = Q("1/4");
  const std::string json = ReportsToJson({r});
  EXPECT_NE(json.find("\"exact\": \"2/3\""), std::string::npos);
  EXPECT_NE(json.find("\"error_rate_exact\": \"1/4\""), std::string::npos);
  EXPECT_LT(json.find("\"allocation\""), json.find("\"cell\""));
  EXPECT_EQ(json, ReportsToJson({r}));
}

std::string WorldBenchJson(const std::string& extra) {
  return R"({"datasets": ["country.csv", "city.csv", "countrylanguage.csv"],
             "plan": "plan.json",
             "scenario": {"seed": 1},)" +
         extra + "}";
}

TEST(BenchConfigTest, SweepExpandsAndValidates) {
  const BenchConfig c = ParseBenchConfig(
      WorldBenchJson(R"("sweep": {"k": [1, 2, 3], "m": [2, 3]},
                        "methods": [{"method": "iusv"}, {"method": "perm", "samples": 4}],
                        "timeout": 30)"),
      kWorld);
  EXPECT_EQ(c.scenarios.size(), 6u);
  EXPECT_EQ(c.methods.size(), 2u);
  EXPECT_EQ(c.methods[1].samples, 4u);
  EXPECT_EQ(c.settings.timeout_seconds, 30);
  EXPECT_EQ(c.datasets[0], kWorld / "country.csv");
  EXPECT_THROW(ParseBenchConfig(WorldBenchJson(R"("methods": [], "timeout": 5)"), kWorld),
               ConfigError);
  EXPECT_THROW(ParseBenchConfig(
                   WorldBenchJson(R"("methods": [{"method": "iusv"}], "timeout": 0)"), kWorld),
               ConfigError);
  EXPECT_THROW(ParseBenchConfig(
                   WorldBenchJson(R"("methods": [{"method": "shap"}])"), kWorld),
               ConfigError);
}

TEST(RunBenchmarkTest, SweepOverOwnerCounts) {
  const BenchConfig c = ParseBenchConfig(
      WorldBenchJson(R"("sweep": {"k": [1, 2, 3, 4, 5, 6, 7, 8]},
                        "methods": [{"method": "iusv"}, {"method": "perm", "samples": 4}],
                        "timeout": 120)"),
      kWorld);
  const std::vector<RunReport> reports = RunBenchmark(c);
  ASSERT_EQ(reports.size(), 16u);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const RunReport& r = reports[i];
    EXPECT_EQ(r.status, RunStatus::kOk) << r.cell << ": " << r.message;
    EXPECT_EQ(r.params.at("k"), std::to_string(i / 2 + 1));
    EXPECT_TRUE(r.error_rate.has_value());
    if (r.method == Method::kIusv) {
      EXPECT_EQ(*r.error_rate, 0);
      const CaseRates rates = r.rates();
      EXPECT_GE(rates.umos_rate, 0);
      EXPECT_LE(rates.umos_rate, 1);
      if (r.cases->sc_calls + r.cases->sl_calls > 0) {
        EXPECT_DOUBLE_EQ(rates.sc_rate + rates.sl_rate, 1.0);
      }
    }
  }
  // Same config, same results apart from timings.
  const std::vector<RunReport> again = RunBenchmark(c);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    EXPECT_TRUE(reports[i].SameResult(again[i])) << reports[i].cell;
  }
}

TEST(RunBenchmarkTest, FailingCellDoesNotStopMatrix) {
  BenchConfig c = ParseBenchConfig(
      WorldBenchJson(R"("scenarios": [{"owner_mode": "UO", "k": 21}, {"k": 2}],
                        "methods": [{"method": "trad"}, {"method": "iusv"}],
                        "timeout": 60, "parallel_cells": true)"),
      kWorld);
  const std::vector<RunReport> reports = RunBenchmark(c);
  ASSERT_EQ(reports.size(), 4u);
  EXPECT_EQ(reports[0].status, RunStatus::kError);
  EXPECT_EQ(reports[1].status, RunStatus::kOk);
  EXPECT_EQ(reports[2].status, RunStatus::kOk);
  EXPECT_EQ(reports[3].status, RunStatus::kOk);
  EXPECT_EQ(reports[2].allocation, reports[3].allocation);
}

TEST(RunConfigTest, LoadWorkloadFromDatasetsOrManifest) {
  RunConfig rc;
  rc.plan = kWorld / "plan.json";
  EXPECT_THROW(rc.Validate(), ConfigError);
  rc.datasets = WorldFiles();
  rc.scenario = LoadScenario(kWorld / "scenario.json");
  const Workload direct = LoadWorkload(rc);

  const fs::path dir = TempDir("workload");
  const Dataset d = IngestCsv(WorldFiles());
  WriteAssignment(dir, d, *rc.scenario, GenerateAssignment(d, *rc.scenario));
  RunConfig from_manifest;
  from_manifest.plan = rc.plan;
  from_manifest.assignment = dir / "manifest.json";
  const Workload loaded = LoadWorkload(from_manifest);
  EXPECT_EQ(loaded.owner_names, direct.owner_names);
  const RunReport a = RunMethod(direct, {Method::kIusv}, RunSettings{});
  const RunReport b = RunMethod(loaded, {Method::kIusv}, RunSettings{});
  EXPECT_EQ(a.allocation, b.allocation);
  rc.settings.timeout_seconds = 0;
  EXPECT_THROW(rc.Validate(), ConfigError);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace dasv
