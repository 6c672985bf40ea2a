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

#include "dasv/table.h"

#include <algorithm>
#include <unordered_set>
#include <utility>

#include "dasv/errors.h"

namespace dasv {

const Table* Dataset::Find(const std::string& name) const {
  for (const Table& t : tables) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

OwnedTable MakeOwnedTable(OwnerId owner, std::string table,
                          std::vector<std::string> schema,
                          std::vector<Row> rows) {
  OwnedTable out{owner, std::move(table), std::move(schema), {}};
  std::unordered_set<Row, RowHash> seen;
  out.rows.reserve(rows.size());
  for (Row& r : rows) {
    if (r.size() != out.schema.size()) {
      throw UsageError("row arity " + std::to_string(r.size()) +
                       " does not match schema arity " +
                       std::to_string(out.schema.size()) + " of table '" +
                       out.table + "'");
    }
    if (seen.insert(r).second) out.rows.push_back(std::move(r));
  }
  return out;
}

std::size_t InferOwnerUniverse(const std::vector<OwnedTable>& tables) {
  std::size_t n = 0;
  for (const OwnedTable& t : tables) {
    n = std::max<std::size_t>(n, t.owner.value + 1);
  }
  return n;
}

}  // namespace dasv
