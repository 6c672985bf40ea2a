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

#include "dasv/report.h"

#include <cstdio>
#include <cstdlib>
#include <utility>

#include "json.hpp"

#include "dasv/errors.h"
#include "dasv/io.h"

namespace dasv {
using nlohmann::json;

Rational ComputeErrorRate(const Allocation& exact, const Allocation& approx) {
  if (exact.universe() != approx.universe()) {
    throw MetricError("error rate needs allocations over the same owners");
  }
  Rational num = 0;
  Rational den = 0;
  for (std::size_t i = 0; i < exact.universe(); ++i) {
    const Rational& a = exact.per_owner()[i].rational();
    const Rational& b = approx.per_owner()[i].rational();
    num += abs(a - b);
    den += a;
  }
  if (den == 0) throw MetricError("error rate undefined: exact total is zero");
  return Rational(num / den);
}

CaseRates ComputeCaseRates(const CaseStats& stats) {
  CaseRates r;
  if (stats.tuples > 0) {
    r.umos_rate = static_cast<double>(stats.unique_multi) /
                  static_cast<double>(stats.tuples);
  }
  const std::uint64_t calls = stats.sc_calls + stats.sl_calls;
  if (calls > 0) {
    r.sc_rate = static_cast<double>(stats.sc_calls) / static_cast<double>(calls);
    r.sl_rate = static_cast<double>(stats.sl_calls) / static_cast<double>(calls);
  }
  return r;
}

std::string_view ToString(Method method) {
  switch (method) {
    case Method::kTrad:
      return "trad";
    case Method::kPerm:
      return "perm";
    case Method::kIusv:
      return "iusv";
  }
  return "?";
}

Method ParseMethod(std::string_view text) {
  if (text == "trad") return Method::kTrad;
  if (text == "perm") return Method::kPerm;
  if (text == "iusv") return Method::kIusv;
  throw ConfigError("method must be trad, perm or iusv, got '" +
                    std::string(text) + "'");
}

std::string_view ToString(RunStatus status) {
  switch (status) {
    case RunStatus::kOk:
      return "ok";
    case RunStatus::kTimeout:
      return "timeout";
    case RunStatus::kError:
      return "error";
  }
  return "?";
}

RunStatus ParseRunStatus(std::string_view text) {
  if (text == "ok") return RunStatus::kOk;
  if (text == "timeout") return RunStatus::kTimeout;
  if (text == "error") return RunStatus::kError;
  throw ParseError("unknown run status '" + std::string(text) + "'");
}

CaseRates RunReport::rates() const {
  return cases ? ComputeCaseRates(*cases) : CaseRates{};
}

bool RunReport::SameResult(const RunReport& o) const {
  return cell == o.cell && method == o.method && status == o.status &&
         message == o.message && params == o.params &&
         allocation == o.allocation && tuples == o.tuples &&
         evaluations == o.evaluations && error_rate == o.error_rate &&
         cases == o.cases;
}

namespace {

std::string Double17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// CaseStats fields in a fixed order for both writers and the reader.
struct CaseField {
  const char* name;
  std::uint64_t CaseStats::*member;
};
constexpr CaseField kCaseFields[] = {
    {"tuples", &CaseStats::tuples},
    {"single_owner_only", &CaseStats::single_owner_only},
    {"unique_multi", &CaseStats::unique_multi},
    {"general", &CaseStats::general},
    {"sc_calls", &CaseStats::sc_calls},
    {"sl_calls", &CaseStats::sl_calls},
    {"fallbacks", &CaseStats::fallbacks},
};

json ReportJson(const RunReport& r) {
  json j;
  j["cell"] = r.cell;
  j["method"] = ToString(r.method);
  j["status"] = ToString(r.status);
  if (!r.message.empty()) j["message"] = r.message;
  j["params"] = r.params;
  json alloc = json::array();
  for (const OwnerValue& ov : r.allocation) {
    alloc.push_back({{"owner", ov.owner},
                     {"value", ov.value.get_d()},
                     {"exact", RationalToString(ov.value)}});
  }
  j["allocation"] = alloc;
  j["tuples"] = r.tuples;
  j["evaluations"] = r.evaluations;
  j["runtime_seconds"] = r.runtime_seconds;
  j["assemble_seconds"] = r.assemble_seconds;
  json metrics = json::object();
  if (r.error_rate) {
    metrics["error_rate"] = r.error_rate->get_d();
    metrics["error_rate_exact"] = RationalToString(*r.error_rate);
  }
  if (r.cases) {
    const CaseRates rates = r.rates();
    metrics["umos_rate"] = rates.umos_rate;
    metrics["sc_rate"] = rates.sc_rate;
    metrics["sl_rate"] = rates.sl_rate;
    json cases = json::object();
    for (const CaseField& f : kCaseFields) cases[f.name] = (*r.cases).*f.member;
    j["cases"] = cases;
  }
  j["metrics"] = metrics;
  return j;
}

std::uint64_t ParseCount(const std::string& s, std::size_t line) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0') {
    throw ParseError("report csv line " + std::to_string(line) +
                     ": bad count '" + s + "'");
  }
  return v;
}

double ParseDouble(const std::string& s, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') {
    throw ParseError("report csv line " + std::to_string(line) +
                     ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace

std::string ReportsToJson(const std::vector<RunReport>& reports) {
  json arr = json::array();
  for (const RunReport& r : reports) arr.push_back(ReportJson(r));
  return arr.dump(2) + "\n";
}

std::string ReportsToCsv(const std::vector<RunReport>& reports) {
  std::string out = CsvLine({"cell", "record", "key", "value", "exact"});
  for (const RunReport& r : reports) {
    auto row = [&](const char* record, const std::string& key,
                   const std::string& value, const std::string& exact = "") {
      out += CsvLine({r.cell, record, key, value, exact});
    };
    row("meta", "method", std::string(ToString(r.method)));
    row("meta", "status", std::string(ToString(r.status)));
    row("meta", "message", r.message);
    for (const auto& [k, v] : r.params) row("param", k, v);
    row("metric", "runtime_seconds", Double17(r.runtime_seconds));
    row("metric", "assemble_seconds", Double17(r.assemble_seconds));
    row("metric", "tuples", std::to_string(r.tuples));
    row("metric", "evaluations", std::to_string(r.evaluations));
    if (r.error_rate) {
      row("metric", "error_rate", Double17(r.error_rate->get_d()),
          RationalToString(*r.error_rate));
    }
    if (r.cases) {
      const CaseRates rates = r.rates();
      row("metric", "umos_rate", Double17(rates.umos_rate));
      row("metric", "sc_rate", Double17(rates.sc_rate));
      row("metric", "sl_rate", Double17(rates.sl_rate));
      for (const CaseField& f : kCaseFields) {
        row("case", f.name, std::to_string((*r.cases).*f.member));
      }
    }
    for (const OwnerValue& ov : r.allocation) {
      row("owner", ov.owner, Double17(ov.value.get_d()),
          RationalToString(ov.value));
    }
  }
  return out;
}

std::vector<RunReport> ParseReportsCsv(std::string_view text) {
  const std::vector<CsvRecord> records = ParseCsv(text, "report csv");
  if (records.empty() ||
      records.front().fields !=
          std::vector<std::string>{"cell", "record", "key", "value", "exact"}) {
    throw ParseError("report csv: missing header");
  }
  std::vector<RunReport> out;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const CsvRecord& rec = records[i];
    if (rec.fields.size() != 5) {
      throw ParseError("report csv line " + std::to_string(rec.line) +
                       ": expected 5 fields");
    }
    const auto& [cell, record, key, value, exact] =
        std::tie(rec.fields[0], rec.fields[1], rec.fields[2], rec.fields[3],
                 rec.fields[4]);
    // A report starts at its method line.
    if (record == "meta" && key == "method") {
      out.emplace_back();
      out.back().cell = cell;
      out.back().method = ParseMethod(value);
      continue;
    }
    if (out.empty() || out.back().cell != cell) {
      throw ParseError("report csv line " + std::to_string(rec.line) +
                       ": row outside a report");
    }
    RunReport& r = out.back();
    if (record == "meta") {
      if (key == "status") {
        r.status = ParseRunStatus(value);
      } else if (key == "message") {
        r.message = value;
      }
    } else if (record == "param") {
      r.params[key] = value;
    } else if (record == "metric") {
      if (key == "runtime_seconds") {
        r.runtime_seconds = ParseDouble(value, rec.line);
      } else if (key == "assemble_seconds") {
        r.assemble_seconds = ParseDouble(value, rec.line);
      } else if (key == "tuples") {
        r.tuples = ParseCount(value, rec.line);
      } else if (key == "evaluations") {
        r.evaluations = ParseCount(value, rec.line);
      } else if (key == "error_rate") {
        r.error_rate = ParseRational(exact);
      }
      // Case rates are derived from the case rows.
    } else if (record == "case") {
      if (!r.cases) r.cases.emplace();
      bool known = false;
      for (const CaseField& f : kCaseFields) {
        if (key == f.name) {
          (*r.cases).*f.member = ParseCount(value, rec.line);
          known = true;
        }
      }
      if (!known) {
        throw ParseError("report csv line " + std::to_string(rec.line) +
                         ": unknown case field '" + key + "'");
      }
    } else if (record == "owner") {
      r.allocation.push_back({key, ParseRational(exact)});
    } else {
      throw ParseError("report csv line " + std::to_string(rec.line) +
                       ": unknown record '" + record + "'");
    }
  }
  return out;
}

}  // namespace dasv
