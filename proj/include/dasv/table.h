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

#ifndef DASV_TABLE_H_
#define DASV_TABLE_H_

#include <cstddef>
#include <string>
#include <vector>

#include "dasv/owner_set.h"
#include "dasv/value.h"

namespace dasv {

// A logical relation before it is split among owners.
struct Table {
  std::string name;
  std::vector<std::string> schema;
  std::vector<ValueType> types;  // parallel to schema
  std::vector<Row> rows;

  std::size_t arity() const { return schema.size(); }
};

// A relational data set made of named tables.
struct Dataset {
  std::vector<Table> tables;

  const Table* Find(const std::string& name) const;
};

// The copy of logical table `table` held by one owner. Rows are distinct.
struct OwnedTable {
  OwnerId owner;
  std::string table;
  std::vector<std::string> schema;
  std::vector<Row> rows;
};

// Checks arity of every row and collapses duplicate rows, keeping the first
// occurrence. Throws UsageError on an arity mismatch.
OwnedTable MakeOwnedTable(OwnerId owner, std::string table,
                          std::vector<std::string> schema,
                          std::vector<Row> rows);

// Number of owners implied by the tables: max owner index + 1.
std::size_t InferOwnerUniverse(const std::vector<OwnedTable>& tables);

}  // namespace dasv

#endif  // DASV_TABLE_H_
