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

#include "dasv/plan.h"

#include <fstream>
#include <sstream>

#include "dasv/errors.h"
#include "dasv/value.h"
#include "json.hpp"

namespace dasv {
namespace {

using nlohmann::json;

std::string ScalarText(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned()) {
    return CanonicalNumber(v.dump());
  }
  if (v.is_number_float()) {
    try {
      return CanonicalNumber(v.dump());
    } catch (const ParseError&) {
      throw PlanError(where + ": write non-plain numbers as strings");
    }
  }
  throw PlanError(where + ": expected a string or number constant");
}

const json& Require(const json& node, const char* key, const char* kind) {
  auto it = node.find(key);
  if (it == node.end()) {
    throw PlanError(std::string(kind) + " node requires '" + key + "'");
  }
  return *it;
}

PlanNodePtr FromJson(const json& node) {
  if (!node.is_object()) throw PlanError("plan node must be a JSON object");
  const std::string kind = Require(node, "kind", "plan").get<std::string>();
  auto out = std::make_shared<PlanNode>();
  if (kind == "scan") {
    out->kind = PlanNode::Kind::kScan;
    out->table = Require(node, "table", "scan").get<std::string>();
    if (auto it = node.find("rename"); it != node.end()) {
      if (!it->is_object()) throw PlanError("scan 'rename' must be an object");
      for (const auto& [from, to] : it->items()) {
        out->rename.emplace_back(from, to.get<std::string>());
      }
    }
    if (auto it = node.find("filter"); it != node.end()) {
      for (const json& f : *it) {
        out->filters.push_back(
            {Require(f, "attribute", "filter").get<std::string>(),
             ScalarText(Require(f, "equals", "filter"), "filter")});
      }
    }
  } else if (kind == "project") {
    out->kind = PlanNode::Kind::kProject;
    for (const json& c : Require(node, "columns", "project")) {
      if (c.is_string()) {
        out->columns.emplace_back(c.get<std::string>(), c.get<std::string>());
      } else {
        out->columns.emplace_back(
            Require(c, "from", "project column").get<std::string>(),
            c.value("as", c.at("from").get<std::string>()));
      }
    }
    out->children.push_back(FromJson(Require(node, "input", "project")));
  } else if (kind == "join") {
    out->kind = PlanNode::Kind::kJoin;
    if (auto it = node.find("on"); it != node.end()) {
      for (const json& p : *it) {
        if (!p.is_array() || p.size() != 2) {
          throw PlanError("join 'on' entries must be [left, right] pairs");
        }
        out->on.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
      }
    }
    out->children.push_back(FromJson(Require(node, "left", "join")));
    out->children.push_back(FromJson(Require(node, "right", "join")));
  } else if (kind == "union") {
    out->kind = PlanNode::Kind::kUnion;
    for (const json& c : Require(node, "inputs", "union")) {
      out->children.push_back(FromJson(c));
    }
    if (out->children.size() < 2) {
      throw PlanError("union node needs at least two inputs");
    }
  } else {
    throw PlanError("unknown plan node kind '" + kind + "'");
  }
  return out;
}

json ToJsonNode(const PlanNode& node) {
  json out;
  switch (node.kind) {
    case PlanNode::Kind::kScan: {
      out["kind"] = "scan";
      out["table"] = node.table;
      if (!node.rename.empty()) {
        json r = json::object();
        for (const auto& [from, to] : node.rename) r[from] = to;
        out["rename"] = r;
      }
      if (!node.filters.empty()) {
        json f = json::array();
        for (const ScanFilter& s : node.filters) {
          f.push_back({{"attribute", s.attribute}, {"equals", s.value}});
        }
        out["filter"] = f;
      }
      break;
    }
    case PlanNode::Kind::kProject: {
      out["kind"] = "project";
      json cols = json::array();
      for (const auto& [from, as] : node.columns) {
        if (from == as) {
          cols.push_back(from);
        } else {
          cols.push_back({{"from", from}, {"as", as}});
        }
      }
      out["columns"] = cols;
      out["input"] = ToJsonNode(*node.children.at(0));
      break;
    }
    case PlanNode::Kind::kJoin: {
      out["kind"] = "join";
      if (!node.on.empty()) {
        json on = json::array();
        for (const auto& [l, r] : node.on) on.push_back({l, r});
        out["on"] = on;
      }
      out["left"] = ToJsonNode(*node.children.at(0));
      out["right"] = ToJsonNode(*node.children.at(1));
      break;
    }
    case PlanNode::Kind::kUnion: {
      out["kind"] = "union";
      json inputs = json::array();
      for (const auto& c : node.children) inputs.push_back(ToJsonNode(*c));
      out["inputs"] = inputs;
      break;
    }
  }
  return out;
}

}  // namespace

CoalitionPlan CoalitionPlan::Parse(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw PlanError(std::string("plan is not valid JSON: ") + e.what());
  }
  try {
    return CoalitionPlan(FromJson(doc));
  } catch (const json::exception& e) {
    throw PlanError(std::string("malformed plan: ") + e.what());
  }
}

CoalitionPlan CoalitionPlan::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PlanError("cannot open plan file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str());
}

std::string CoalitionPlan::ToJson(int indent) const {
  return ToJsonNode(root()).dump(indent);
}

const PlanNode& CoalitionPlan::root() const {
  if (root_ == nullptr) throw PlanError("empty coalition plan");
  return *root_;
}

PlanNodePtr CoalitionPlan::Scan(
    std::string table, std::vector<std::pair<std::string, std::string>> rename,
    std::vector<ScanFilter> filters) {
  auto n = std::make_shared<PlanNode>();
  n->kind = PlanNode::Kind::kScan;
  n->table = std::move(table);
  n->rename = std::move(rename);
  n->filters = std::move(filters);
  return n;
}

PlanNodePtr CoalitionPlan::Project(PlanNodePtr input,
                                   std::vector<std::string> attributes) {
  std::vector<std::pair<std::string, std::string>> cols;
  cols.reserve(attributes.size());
  for (std::string& a : attributes) cols.emplace_back(a, a);
  return ProjectAs(std::move(input), std::move(cols));
}

PlanNodePtr CoalitionPlan::ProjectAs(
    PlanNodePtr input,
    std::vector<std::pair<std::string, std::string>> columns) {
  auto n = std::make_shared<PlanNode>();
  n->kind = PlanNode::Kind::kProject;
  n->columns = std::move(columns);
  n->children.push_back(std::move(input));
  return n;
}

PlanNodePtr CoalitionPlan::NaturalJoin(PlanNodePtr left, PlanNodePtr right) {
  return EquiJoin(std::move(left), std::move(right), {});
}

PlanNodePtr CoalitionPlan::EquiJoin(
    PlanNodePtr left, PlanNodePtr right,
    std::vector<std::pair<std::string, std::string>> on) {
  auto n = std::make_shared<PlanNode>();
  n->kind = PlanNode::Kind::kJoin;
  n->on = std::move(on);
  n->children.push_back(std::move(left));
  n->children.push_back(std::move(right));
  return n;
}

PlanNodePtr CoalitionPlan::Union(std::vector<PlanNodePtr> inputs) {
  if (inputs.size() < 2) throw PlanError("union needs at least two inputs");
  auto n = std::make_shared<PlanNode>();
  n->kind = PlanNode::Kind::kUnion;
  n->children = std::move(inputs);
  return n;
}

}  // namespace dasv
