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

#ifndef DASV_DATAGEN_H_
#define DASV_DATAGEN_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dasv/owner_set.h"
#include "dasv/table.h"

// Synthetic split of a relational data set among data owners: how many
// owners each table gets (EO/UO), how many copies each record has
// (truncated Zipf), and which owners receive the copies (EA/UA).

namespace dasv {

enum class OwnerMode { kEqual, kUnequal };   // EO, UO
enum class AssignMode { kEqual, kUnequal };  // EA, UA

std::string_view ToString(OwnerMode mode);
std::string_view ToString(AssignMode mode);
// Accept "EO"/"UO" and "EA"/"UA" (case-insensitive); throw ConfigError.
OwnerMode ParseOwnerMode(std::string_view text);
AssignMode ParseAssignMode(std::string_view text);

struct AssignmentScenario {
  OwnerMode owner_mode = OwnerMode::kEqual;
  AssignMode assign_mode = AssignMode::kEqual;
  std::size_t k = 5;
  double alpha = 4.0;
  std::size_t max_copies = 3;
  double beta = 3.0;
  // Under EO, tables with fewer rows get a single owner.
  std::size_t small_table_threshold = 100;
  std::uint64_t seed = 0;

  // Throws ConfigError.
  void Validate() const;
  // e.g. "EO-EA".
  std::string Label() const;
};

// Draws from P(c) proportional to c^-exponent on {1, ..., support}.
class TruncatedZipf {
 public:
  TruncatedZipf(double exponent, std::size_t support);

  std::size_t operator()(std::mt19937_64& rng) const;
  double Probability(std::size_t value) const;
  std::size_t support() const { return cdf_.size(); }

 private:
  std::vector<double> cdf_;
};

// Uniform double in [0, 1) from the top 53 bits of one draw.
double UnitUniform(std::mt19937_64& rng);
// Uniform integer in [0, bound) by rejection; bound > 0.
std::uint64_t UniformBelow(std::mt19937_64& rng, std::uint64_t bound);

// Owner count per table, parallel to dataset.tables.
std::vector<std::size_t> AssignOwnerCounts(const Dataset& dataset,
                                           const AssignmentScenario& scenario);

std::size_t SampleCopyCount(double alpha, std::size_t max_copies,
                            std::mt19937_64& rng);

// Splits `table` among owners first_owner .. first_owner + k - 1. Row i is
// given to min(copies[i], k) distinct owners, chosen uniformly (EA) or by
// weighted sampling without replacement with weight (rank + 1)^-beta (UA,
// rank 0 = first owner). Returns one OwnedTable per owner, possibly empty.
std::vector<OwnedTable> AssignRecords(const Table& table, OwnerId first_owner,
                                      std::size_t k,
                                      std::span<const std::size_t> copies,
                                      AssignMode mode, double beta,
                                      std::mt19937_64& rng);

struct OwnerInfo {
  OwnerId id;
  std::string name;
  std::string table;
};

struct OwnerAssignment {
  std::vector<OwnerInfo> owners;   // indexed by OwnerId
  std::vector<OwnedTable> tables;  // one per owner

  std::size_t owner_universe() const { return owners.size(); }
};

// Deterministic in (dataset, scenario). Each table draws from its own
// generator seeded with (scenario.seed, table index).
OwnerAssignment GenerateAssignment(const Dataset& dataset,
                                   const AssignmentScenario& scenario,
                                   std::size_t owner_cap = kDefaultOwnerCap);

}  // namespace dasv

#endif  // DASV_DATAGEN_H_
