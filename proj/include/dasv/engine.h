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

#ifndef DASV_ENGINE_H_
#define DASV_ENGINE_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dasv/coalition.h"
#include "dasv/deadline.h"
#include "dasv/owner_set.h"
#include "dasv/plan.h"
#include "dasv/table.h"
#include "dasv/utility.h"

namespace dasv {

// Assigns a utility to each coalition tuple: either 1 per tuple, or the
// numeric value of one output attribute.
class UtilityModel {
 public:
  static UtilityModel Unit() { return UtilityModel(); }
  static UtilityModel FromAttribute(std::string attribute);

  bool is_unit() const { return !attribute_.has_value(); }
  const std::optional<std::string>& attribute() const { return attribute_; }

  // Throws PlanError when the attribute is missing from `schema`, and
  // UsageError when its value is not a non-negative number.
  Utility Of(const Row& row, const std::vector<std::string>& schema) const;

 private:
  std::optional<std::string> attribute_;
};

struct EngineOptions {
  // Maximum number of minimal syntheses per tuple; exceeded -> CostError.
  std::size_t synthesis_cap = 64;
  // 0 infers max owner index + 1 from the tables.
  std::size_t owner_universe = 0;
  std::size_t owner_cap = kDefaultOwnerCap;
  const Deadline* deadline = nullptr;
};

// A coalition plan type-checked against a fixed set of owner tables.
// Construction throws PlanError when the plan does not fit the tables.
// Execution is read-only and may run concurrently.
class PlanExecutor {
 public:
  PlanExecutor(const CoalitionPlan& plan, std::vector<OwnedTable> tables,
               EngineOptions options = {});
  ~PlanExecutor();
  PlanExecutor(const PlanExecutor&) = delete;
  PlanExecutor& operator=(const PlanExecutor&) = delete;

  // Full evaluation with provenance: deduplicated tuples, each with its
  // minimal syntheses, sorted by value.
  CoalitionSet Assemble(const UtilityModel& utility = UtilityModel::Unit(),
                        const Deadline* deadline = nullptr) const;

  // Distinct output rows produced using only the tables of `owners` (all
  // owners when null). No provenance is tracked.
  std::vector<Row> Rows(const OwnerSet* owners = nullptr,
                        const Deadline* deadline = nullptr) const;

  const std::vector<std::string>& schema() const;
  std::size_t owner_universe() const { return universe_; }

 private:
  struct Node;
  struct Context;

  std::unique_ptr<Node> Compile(const PlanNode& node) const;

  std::vector<OwnedTable> tables_;
  EngineOptions options_;
  std::size_t universe_ = 0;
  std::unique_ptr<Node> root_;
};

CoalitionSet EvaluatePlan(const CoalitionPlan& plan,
                          std::vector<OwnedTable> tables,
                          const UtilityModel& utility = UtilityModel::Unit(),
                          const EngineOptions& options = {});

}  // namespace dasv

#endif  // DASV_ENGINE_H_
