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

#ifndef DASV_PLAN_H_
#define DASV_PLAN_H_

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dasv {

// Constant-equality predicate applied while scanning a table. `value` is
// compared against the canonical text of the cell.
struct ScanFilter {
  std::string attribute;
  std::string value;
};

struct PlanNode;
using PlanNodePtr = std::shared_ptr<const PlanNode>;

// One node of a positive relational-algebra expression tree.
struct PlanNode {
  enum class Kind { kScan, kProject, kJoin, kUnion };

  Kind kind = Kind::kScan;

  // kScan
  std::string table;
  std::vector<std::pair<std::string, std::string>> rename;  // from -> to
  std::vector<ScanFilter> filters;

  // kProject: (source attribute, output name)
  std::vector<std::pair<std::string, std::string>> columns;

  // kJoin: (left attribute, right attribute). Empty means natural join on
  // the shared attribute names.
  std::vector<std::pair<std::string, std::string>> on;

  // kProject: 1 child; kJoin: 2 (left, right); kUnion: >= 2.
  std::vector<PlanNodePtr> children;
};

// A coalition plan. The JSON form is documented in docs/plan_schema.md.
class CoalitionPlan {
 public:
  CoalitionPlan() = default;
  explicit CoalitionPlan(PlanNodePtr root) : root_(std::move(root)) {}

  // Throws PlanError on malformed JSON or unknown node kinds.
  static CoalitionPlan Parse(std::string_view json_text);
  static CoalitionPlan Load(const std::string& path);

  std::string ToJson(int indent = 2) const;

  const PlanNode& root() const;
  bool valid() const { return root_ != nullptr; }

  // Builders.
  static PlanNodePtr Scan(std::string table,
                          std::vector<std::pair<std::string, std::string>>
                              rename = {},
                          std::vector<ScanFilter> filters = {});
  static PlanNodePtr Project(PlanNodePtr input,
                             std::vector<std::string> attributes);
  static PlanNodePtr ProjectAs(
      PlanNodePtr input,
      std::vector<std::pair<std::string, std::string>> columns);
  static PlanNodePtr NaturalJoin(PlanNodePtr left, PlanNodePtr right);
  static PlanNodePtr EquiJoin(
      PlanNodePtr left, PlanNodePtr right,
      std::vector<std::pair<std::string, std::string>> on);
  static PlanNodePtr Union(std::vector<PlanNodePtr> inputs);

 private:
  PlanNodePtr root_;
};

}  // namespace dasv

#endif  // DASV_PLAN_H_
