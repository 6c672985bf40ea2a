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

#ifndef DASV_REPORT_H_
#define DASV_REPORT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dasv/allocation.h"
#include "dasv/iusv.h"
#include "dasv/rational.h"

namespace dasv {

// sum |exact - approx| / sum exact. Throws MetricError when the universes
// differ or sum exact is zero.
Rational ComputeErrorRate(const Allocation& exact, const Allocation& approx);

struct CaseRates {
  double umos_rate = 0;  // unique multi-owner tuples / all tuples
  double sc_rate = 0;    // SC share of general-case kernel calls
  double sl_rate = 0;
};

// Rates with an empty denominator are reported as 0.
CaseRates ComputeCaseRates(const CaseStats& stats);

enum class Method { kTrad, kPerm, kIusv };
std::string_view ToString(Method method);
Method ParseMethod(std::string_view text);  // throws ConfigError

enum class RunStatus { kOk, kTimeout, kError };
std::string_view ToString(RunStatus status);
RunStatus ParseRunStatus(std::string_view text);

struct OwnerValue {
  std::string owner;
  Rational value;
  friend bool operator==(const OwnerValue&, const OwnerValue&) = default;
};

struct RunReport {
  std::string cell;  // free-form label of the benchmark cell
  Method method = Method::kIusv;
  RunStatus status = RunStatus::kOk;
  std::string message;
  std::map<std::string, std::string> params;  // samples, seed, gamma, k, ...
  std::vector<OwnerValue> allocation;         // empty unless ok
  std::uint64_t tuples = 0;
  std::uint64_t evaluations = 0;  // plan executions (trad, perm)
  std::optional<Rational> error_rate;
  std::optional<CaseStats> cases;  // iusv only
  double runtime_seconds = 0;
  double assemble_seconds = 0;

  CaseRates rates() const;
  // Equality excluding the two timing fields.
  bool SameResult(const RunReport& other) const;
};

// Canonical JSON: sorted keys, exact values as "p/q" strings alongside
// their floating renderings.
std::string ReportsToJson(const std::vector<RunReport>& reports);

// Long form with header cell,record,key,value,exact. Doubles are printed
// with 17 significant digits.
std::string ReportsToCsv(const std::vector<RunReport>& reports);
std::vector<RunReport> ParseReportsCsv(std::string_view text);

}  // namespace dasv

#endif  // DASV_REPORT_H_
