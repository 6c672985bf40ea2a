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

#include "dasv/engine.h"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "dasv/errors.h"

namespace dasv {
namespace {

constexpr std::size_t kDeadlinePollRows = 4096;

std::size_t IndexOf(const std::vector<std::string>& schema,
                    const std::string& attribute, const char* context) {
  auto it = std::find(schema.begin(), schema.end(), attribute);
  if (it == schema.end()) {
    std::string known;
    for (const std::string& s : schema) known += (known.empty() ? "" : ", ") + s;
    throw PlanError(std::string(context) + ": attribute '" + attribute +
                    "' not found (have: " + known + ")");
  }
  return static_cast<std::size_t>(it - schema.begin());
}

void RequireUniqueNames(const std::vector<std::string>& schema,
                        const char* context) {
  std::unordered_set<std::string> seen;
  for (const std::string& s : schema) {
    if (!seen.insert(s).second) {
      throw PlanError(std::string(context) + ": duplicate attribute '" + s +
                      "' in output schema; rename at a scan");
    }
  }
}

}  // namespace

UtilityModel UtilityModel::FromAttribute(std::string attribute) {
  UtilityModel m;
  m.attribute_ = std::move(attribute);
  return m;
}

Utility UtilityModel::Of(const Row& row,
                         const std::vector<std::string>& schema) const {
  if (!attribute_) return Utility(1);
  const std::size_t i = IndexOf(schema, *attribute_, "utility");
  const Value& v = row.at(i);
  if (v.kind() != Value::Kind::kNumber) {
    throw UsageError("utility attribute '" + *attribute_ +
                     "' holds a non-numeric value '" + v.text() + "'");
  }
  return Utility::Parse(v.text());
}

struct PlanExecutor::Node {
  PlanNode::Kind kind;
  std::vector<std::string> schema;
  std::vector<const OwnedTable*> sources;                   // scan
  std::vector<std::pair<std::size_t, std::string>> filters;  // scan
  std::vector<std::size_t> columns;                         // project
  std::vector<std::size_t> left_keys, right_keys, right_rest;  // join
  std::vector<std::unique_ptr<Node>> children;
};

struct PlanExecutor::Context {
  bool track = false;
  const OwnerSet* owners = nullptr;
  std::size_t universe = 0;
  std::size_t cap = 0;
  const Deadline* deadline = nullptr;
};

namespace {

struct Relation {
  std::vector<Row> rows;
  // Parallel to rows when provenance is tracked.
  std::vector<std::vector<OwnerSet>> prov;
};

void Minimalize(std::vector<OwnerSet>& syntheses, std::size_t cap,
                const Row& row) {
  if (syntheses.size() > 1) syntheses = MinimalElements(std::move(syntheses));
  if (syntheses.size() > cap) {
    std::string values;
    for (const Value& v : row) values += (values.empty() ? "" : ", ") + v.text();
    throw CostError("tuple (" + values + ") has " +
                    std::to_string(syntheses.size()) +
                    " minimal syntheses, above the cap of " +
                    std::to_string(cap));
  }
}

// Merges rows that became equal, concatenating their syntheses.
class RowMerger {
 public:
  explicit RowMerger(bool track) : track_(track) {}

  void Add(Row row, std::vector<OwnerSet>* syntheses) {
    auto [it, inserted] = index_.try_emplace(row, out_.rows.size());
    if (inserted) {
      out_.rows.push_back(std::move(row));
      if (track_) out_.prov.emplace_back();
    }
    if (track_) {
      auto& dst = out_.prov[it->second];
      if (dst.empty()) {
        dst = std::move(*syntheses);
      } else {
        dst.insert(dst.end(), std::make_move_iterator(syntheses->begin()),
                   std::make_move_iterator(syntheses->end()));
        merged_.insert(it->second);
      }
    }
  }

  Relation Finish(std::size_t cap) {
    if (track_) {
      for (std::size_t i : merged_) Minimalize(out_.prov[i], cap, out_.rows[i]);
    }
    return std::move(out_);
  }

 private:
  bool track_;
  Relation out_;
  std::unordered_map<Row, std::size_t, RowHash> index_;
  std::unordered_set<std::size_t> merged_;
};

}  // namespace

PlanExecutor::PlanExecutor(const CoalitionPlan& plan,
                           std::vector<OwnedTable> tables,
                           EngineOptions options)
    : tables_(std::move(tables)), options_(options) {
  universe_ = options_.owner_universe != 0 ? options_.owner_universe
                                           : InferOwnerUniverse(tables_);
  CheckOwnerUniverse(universe_, options_.owner_cap);
  for (const OwnedTable& t : tables_) {
    if (t.owner.value >= universe_) {
      throw ConfigError("table '" + t.table + "' owned by owner " +
                        std::to_string(t.owner.value) +
                        " outside the owner universe of " +
                        std::to_string(universe_));
    }
  }
  root_ = Compile(plan.root());
}

PlanExecutor::~PlanExecutor() = default;

const std::vector<std::string>& PlanExecutor::schema() const {
  return root_->schema;
}

std::unique_ptr<PlanExecutor::Node> PlanExecutor::Compile(
    const PlanNode& node) const {
  auto out = std::make_unique<Node>();
  out->kind = node.kind;
  switch (node.kind) {
    case PlanNode::Kind::kScan: {
      const std::vector<std::string>* base = nullptr;
      for (const OwnedTable& t : tables_) {
        if (t.table != node.table) continue;
        if (base != nullptr && *base != t.schema) {
          throw PlanError("owners of table '" + node.table +
                          "' disagree on its schema");
        }
        base = &t.schema;
        out->sources.push_back(&t);
      }
      if (base == nullptr) {
        throw PlanError("unknown table '" + node.table + "'");
      }
      out->schema = *base;
      for (const auto& [from, to] : node.rename) {
        out->schema[IndexOf(*base, from, "scan rename")] = to;
      }
      RequireUniqueNames(out->schema, "scan");
      for (const ScanFilter& f : node.filters) {
        out->filters.emplace_back(IndexOf(out->schema, f.attribute, "filter"),
                                  f.value);
      }
      break;
    }
    case PlanNode::Kind::kProject: {
      if (node.children.size() != 1) throw PlanError("project needs one input");
      out->children.push_back(Compile(*node.children[0]));
      const auto& in = out->children[0]->schema;
      for (const auto& [from, as] : node.columns) {
        out->columns.push_back(IndexOf(in, from, "project"));
        out->schema.push_back(as);
      }
      if (out->columns.empty()) throw PlanError("project needs columns");
      RequireUniqueNames(out->schema, "project");
      break;
    }
    case PlanNode::Kind::kJoin: {
      if (node.children.size() != 2) throw PlanError("join needs two inputs");
      out->children.push_back(Compile(*node.children[0]));
      out->children.push_back(Compile(*node.children[1]));
      const auto& left = out->children[0]->schema;
      const auto& right = out->children[1]->schema;
      if (node.on.empty()) {
        for (std::size_t r = 0; r < right.size(); ++r) {
          auto it = std::find(left.begin(), left.end(), right[r]);
          if (it != left.end()) {
            out->left_keys.push_back(static_cast<std::size_t>(it - left.begin()));
            out->right_keys.push_back(r);
          }
        }
      } else {
        for (const auto& [l, r] : node.on) {
          out->left_keys.push_back(IndexOf(left, l, "join"));
          out->right_keys.push_back(IndexOf(right, r, "join"));
        }
      }
      out->schema = left;
      for (std::size_t r = 0; r < right.size(); ++r) {
        if (std::find(out->right_keys.begin(), out->right_keys.end(), r) ==
            out->right_keys.end()) {
          out->right_rest.push_back(r);
          out->schema.push_back(right[r]);
        }
      }
      RequireUniqueNames(out->schema, "join");
      break;
    }
    case PlanNode::Kind::kUnion: {
      if (node.children.size() < 2) throw PlanError("union needs two inputs");
      for (const auto& c : node.children) {
        out->children.push_back(Compile(*c));
        if (out->children.back()->schema != out->children.front()->schema) {
          throw PlanError("union inputs must share a schema");
        }
      }
      out->schema = out->children.front()->schema;
      break;
    }
  }
  return out;
}

namespace {

Relation Execute(const auto& node, const auto& ctx);

template <typename Node, typename Ctx>
Relation ExecuteScan(const Node& node, const Ctx& ctx) {
  RowMerger merger(ctx.track);
  std::size_t seen = 0;
  for (const OwnedTable* src : node.sources) {
    if (ctx.owners != nullptr && !ctx.owners->Contains(src->owner)) continue;
    for (const Row& row : src->rows) {
      if (++seen % kDeadlinePollRows == 0) CheckDeadline(ctx.deadline);
      bool keep = true;
      for (const auto& [col, value] : node.filters) {
        if (row[col].text() != value) {
          keep = false;
          break;
        }
      }
      if (!keep) continue;
      std::vector<OwnerSet> witness;
      if (ctx.track) witness.push_back(OwnerSet::Singleton(ctx.universe, src->owner));
      merger.Add(row, &witness);
    }
  }
  return merger.Finish(ctx.cap);
}

template <typename Node, typename Ctx>
Relation ExecuteProject(const Node& node, const Ctx& ctx) {
  Relation in = Execute(*node.children[0], ctx);
  RowMerger merger(ctx.track);
  for (std::size_t i = 0; i < in.rows.size(); ++i) {
    if ((i + 1) % kDeadlinePollRows == 0) CheckDeadline(ctx.deadline);
    Row projected;
    projected.reserve(node.columns.size());
    for (std::size_t c : node.columns) projected.push_back(in.rows[i][c]);
    merger.Add(std::move(projected), ctx.track ? &in.prov[i] : nullptr);
  }
  return merger.Finish(ctx.cap);
}

template <typename Node, typename Ctx>
Relation ExecuteJoin(const Node& node, const Ctx& ctx) {
  Relation left = Execute(*node.children[0], ctx);
  Relation right = Execute(*node.children[1], ctx);
  std::unordered_map<Row, std::vector<std::size_t>, RowHash> build;
  build.reserve(right.rows.size());
  for (std::size_t r = 0; r < right.rows.size(); ++r) {
    Row key;
    key.reserve(node.right_keys.size());
    for (std::size_t c : node.right_keys) key.push_back(right.rows[r][c]);
    build[std::move(key)].push_back(r);
  }
  // Distinct inputs give distinct outputs: an output row determines both
  // the left row and the right row that produced it.
  Relation out;
  Row key;
  for (std::size_t l = 0; l < left.rows.size(); ++l) {
    if ((l + 1) % kDeadlinePollRows == 0) CheckDeadline(ctx.deadline);
    key.clear();
    for (std::size_t c : node.left_keys) key.push_back(left.rows[l][c]);
    auto it = build.find(key);
    if (it == build.end()) continue;
    for (std::size_t r : it->second) {
      Row joined = left.rows[l];
      joined.reserve(node.schema.size());
      for (std::size_t c : node.right_rest) joined.push_back(right.rows[r][c]);
      if (ctx.track) {
        std::vector<OwnerSet> syntheses;
        syntheses.reserve(left.prov[l].size() * right.prov[r].size());
        for (const OwnerSet& a : left.prov[l]) {
          for (const OwnerSet& b : right.prov[r]) syntheses.push_back(a | b);
        }
        Minimalize(syntheses, ctx.cap, joined);
        out.prov.push_back(std::move(syntheses));
      }
      out.rows.push_back(std::move(joined));
    }
  }
  return out;
}

template <typename Node, typename Ctx>
Relation ExecuteUnion(const Node& node, const Ctx& ctx) {
  RowMerger merger(ctx.track);
  for (const auto& child : node.children) {
    Relation in = Execute(*child, ctx);
    for (std::size_t i = 0; i < in.rows.size(); ++i) {
      merger.Add(std::move(in.rows[i]), ctx.track ? &in.prov[i] : nullptr);
    }
  }
  return merger.Finish(ctx.cap);
}

Relation Execute(const auto& node, const auto& ctx) {
  CheckDeadline(ctx.deadline);
  switch (node.kind) {
    case PlanNode::Kind::kScan:
      return ExecuteScan(node, ctx);
    case PlanNode::Kind::kProject:
      return ExecuteProject(node, ctx);
    case PlanNode::Kind::kJoin:
      return ExecuteJoin(node, ctx);
    case PlanNode::Kind::kUnion:
      return ExecuteUnion(node, ctx);
  }
  return {};
}

}  // namespace

CoalitionSet PlanExecutor::Assemble(const UtilityModel& utility,
                                    const Deadline* deadline) const {
  Context ctx{true, nullptr, universe_, options_.synthesis_cap,
              deadline != nullptr ? deadline : options_.deadline};
  Relation rel = Execute(*root_, ctx);

  std::vector<std::size_t> order(rel.rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return rel.rows[a] < rel.rows[b]; });

  CoalitionSet out;
  out.schema = root_->schema;
  out.owner_universe = universe_;
  out.tuples.reserve(order.size());
  for (std::size_t i : order) {
    Utility u = utility.Of(rel.rows[i], root_->schema);
    out.tuples.push_back({std::move(rel.rows[i]), std::move(u),
                          SynthesisSet::Minimalize(std::move(rel.prov[i]))});
  }
  return out;
}

std::vector<Row> PlanExecutor::Rows(const OwnerSet* owners,
                                    const Deadline* deadline) const {
  if (owners != nullptr && owners->universe() != universe_) {
    throw UsageError("owner filter universe does not match the executor");
  }
  Context ctx{false, owners, universe_, options_.synthesis_cap,
              deadline != nullptr ? deadline : options_.deadline};
  return Execute(*root_, ctx).rows;
}

CoalitionSet EvaluatePlan(const CoalitionPlan& plan,
                          std::vector<OwnedTable> tables,
                          const UtilityModel& utility,
                          const EngineOptions& options) {
  PlanExecutor executor(plan, std::move(tables), options);
  return executor.Assemble(utility);
}

}  // namespace dasv
