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

#include "dasv/datagen.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <utility>

#include "dasv/errors.h"

namespace dasv {
namespace {

std::string Upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::string_view ToString(OwnerMode mode) {
  return mode == OwnerMode::kEqual ? "EO" : "UO";
}

std::string_view ToString(AssignMode mode) {
  return mode == AssignMode::kEqual ? "EA" : "UA";
}

OwnerMode ParseOwnerMode(std::string_view text) {
  const std::string s = Upper(text);
  if (s == "EO") return OwnerMode::kEqual;
  if (s == "UO") return OwnerMode::kUnequal;
  throw ConfigError("owner mode must be EO or UO, got '" + std::string(text) + "'");
}

AssignMode ParseAssignMode(std::string_view text) {
  const std::string s = Upper(text);
  if (s == "EA") return AssignMode::kEqual;
  if (s == "UA") return AssignMode::kUnequal;
  throw ConfigError("assign mode must be EA or UA, got '" + std::string(text) + "'");
}

void AssignmentScenario::Validate() const {
  if (k < 1) throw ConfigError("k must be >= 1");
  if (!(alpha > 0)) throw ConfigError("alpha must be > 0");
  if (!(beta > 0)) throw ConfigError("beta must be > 0");
  if (max_copies < 1) throw ConfigError("max copies m must be >= 1");
}

std::string AssignmentScenario::Label() const {
  return std::string(ToString(owner_mode)) + "-" +
         std::string(ToString(assign_mode));
}

TruncatedZipf::TruncatedZipf(double exponent, std::size_t support) {
  if (support < 1) throw ConfigError("Zipf support must be >= 1");
  cdf_.resize(support);
  double total = 0;
  for (std::size_t c = 1; c <= support; ++c) {
    total += std::pow(static_cast<double>(c), -exponent);
    cdf_[c - 1] = total;
  }
  for (double& v : cdf_) v /= total;
  cdf_.back() = 1.0;
}

std::size_t TruncatedZipf::operator()(std::mt19937_64& rng) const {
  const double u = UnitUniform(rng);
  return static_cast<std::size_t>(
             std::upper_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin()) +
         1;
}

double TruncatedZipf::Probability(std::size_t value) const {
  if (value < 1 || value > cdf_.size()) return 0.0;
  return cdf_[value - 1] - (value >= 2 ? cdf_[value - 2] : 0.0);
}

double UnitUniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t UniformBelow(std::mt19937_64& rng, std::uint64_t bound) {
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

std::vector<std::size_t> AssignOwnerCounts(const Dataset& dataset,
                                           const AssignmentScenario& scenario) {
  scenario.Validate();
  std::vector<std::size_t> counts(dataset.tables.size());
  if (dataset.tables.empty()) return counts;
  if (scenario.owner_mode == OwnerMode::kEqual) {
    for (std::size_t i = 0; i < counts.size(); ++i) {
      counts[i] = dataset.tables[i].rows.size() < scenario.small_table_threshold
                      ? 1
                      : scenario.k;
    }
  } else {
    std::size_t largest = 0;
    for (std::size_t i = 1; i < counts.size(); ++i) {
      if (dataset.tables[i].rows.size() > dataset.tables[largest].rows.size()) {
        largest = i;
      }
    }
    for (std::size_t i = 0; i < counts.size(); ++i) {
      counts[i] = i == largest ? scenario.k : 2;
    }
  }
  return counts;
}

std::size_t SampleCopyCount(double alpha, std::size_t max_copies,
                            std::mt19937_64& rng) {
  if (max_copies == 1) return 1;
  return TruncatedZipf(alpha, max_copies)(rng);
}

std::vector<OwnedTable> AssignRecords(const Table& table, OwnerId first_owner,
                                      std::size_t k,
                                      std::span<const std::size_t> copies,
                                      AssignMode mode, double beta,
                                      std::mt19937_64& rng) {
  if (k < 1) throw ConfigError("a table needs at least one owner");
  if (copies.size() != table.rows.size()) {
    throw UsageError("copies must have one entry per row");
  }
  std::vector<std::vector<Row>> held(k);
  std::vector<double> rank_weight(k);
  for (std::size_t r = 0; r < k; ++r) {
    rank_weight[r] = std::pow(static_cast<double>(r + 1), -beta);
  }
  std::vector<std::size_t> pool(k);
  std::vector<double> weights;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const std::size_t c = std::clamp<std::size_t>(copies[i], 1, k);
    for (std::size_t r = 0; r < k; ++r) pool[r] = r;
    if (mode == AssignMode::kEqual) {
      // Partial Fisher-Yates: the first c entries are a uniform c-subset.
      for (std::size_t j = 0; j < c; ++j) {
        const std::size_t pick = j + UniformBelow(rng, k - j);
        std::swap(pool[j], pool[pick]);
      }
    } else {
      weights.assign(rank_weight.begin(), rank_weight.end());
      for (std::size_t j = 0; j < c; ++j) {
        double total = 0;
        for (std::size_t r = j; r < k; ++r) total += weights[r];
        const double target = UnitUniform(rng) * total;
        std::size_t pick = j;
        double acc = weights[j];
        while (acc <= target && pick + 1 < k) {
          ++pick;
          acc += weights[pick];
        }
        std::swap(pool[j], pool[pick]);
        std::swap(weights[j], weights[pick]);
      }
    }
    for (std::size_t j = 0; j < c; ++j) held[pool[j]].push_back(table.rows[i]);
  }
  std::vector<OwnedTable> out;
  out.reserve(k);
  for (std::size_t r = 0; r < k; ++r) {
    out.push_back(MakeOwnedTable(
        OwnerId(first_owner.value + static_cast<std::uint32_t>(r)), table.name,
        table.schema, std::move(held[r])));
  }
  return out;
}

OwnerAssignment GenerateAssignment(const Dataset& dataset,
                                   const AssignmentScenario& scenario,
                                   std::size_t owner_cap) {
  scenario.Validate();
  const std::vector<std::size_t> counts = AssignOwnerCounts(dataset, scenario);
  std::size_t universe = 0;
  for (std::size_t c : counts) universe += c;
  CheckOwnerUniverse(universe, owner_cap);

  OwnerAssignment out;
  std::uint32_t next = 0;
  for (std::size_t t = 0; t < dataset.tables.size(); ++t) {
    const Table& table = dataset.tables[t];
    std::seed_seq seq{static_cast<std::uint32_t>(scenario.seed),
                      static_cast<std::uint32_t>(scenario.seed >> 32),
                      static_cast<std::uint32_t>(t)};
    std::mt19937_64 rng(seq);
    const TruncatedZipf zipf(scenario.alpha, scenario.max_copies);
    std::vector<std::size_t> copies(table.rows.size());
    for (std::size_t& c : copies) c = zipf(rng);
    std::vector<OwnedTable> owned =
        AssignRecords(table, OwnerId(next), counts[t], copies,
                      scenario.assign_mode, scenario.beta, rng);
    for (std::size_t r = 0; r < owned.size(); ++r) {
      out.owners.push_back({OwnerId(next + static_cast<std::uint32_t>(r)),
                            table.name + ".o" + std::to_string(r), table.name});
    }
    next += static_cast<std::uint32_t>(owned.size());
    for (OwnedTable& o : owned) out.tables.push_back(std::move(o));
  }
  return out;
}

}  // namespace dasv
