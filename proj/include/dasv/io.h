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

#ifndef DASV_IO_H_
#define DASV_IO_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dasv/datagen.h"
#include "dasv/table.h"
#include "dasv/value.h"

namespace dasv {

struct CsvRecord {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

// RFC 4180 style: comma separated, double-quoted fields may hold commas,
// newlines and doubled quotes. Blank lines are skipped. Throws ParseError
// naming `source` and the line number.
std::vector<CsvRecord> ParseCsv(std::string_view text,
                                std::string_view source = "<csv>");

std::string CsvEscape(std::string_view field);
std::string CsvLine(const std::vector<std::string>& fields);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view text);

struct ColumnDef {
  std::string name;
  ValueType type = ValueType::kString;
};

// Table name -> columns. JSON form:
//   {"city": [{"name": "ID", "type": "integer"}, ...], ...}
using SchemaConfig = std::map<std::string, std::vector<ColumnDef>>;

SchemaConfig ParseSchemaConfig(std::string_view json_text);
SchemaConfig LoadSchemaConfig(const std::filesystem::path& path);

// Header cells are "name" or "name:type". A matching entry in `config`
// supplies the types and must agree with the header names. Columns with no
// type are strings.
Table ParseTableCsv(std::string_view text, std::string table_name,
                    const SchemaConfig* config = nullptr,
                    std::string_view source = "<csv>");

// One table per file, named after the file stem.
Dataset IngestCsv(const std::vector<std::filesystem::path>& paths,
                  const SchemaConfig* config = nullptr);

// Header row with "name:type" cells.
std::string TableToCsv(const std::vector<std::string>& schema,
                       const std::vector<ValueType>& types,
                       const std::vector<Row>& rows);

std::string ScenarioToJson(const AssignmentScenario& scenario);
AssignmentScenario ParseScenario(std::string_view json_text);
AssignmentScenario LoadScenario(const std::filesystem::path& path);

// Owner data together with the owner directory.
struct OwnerData {
  std::vector<OwnerInfo> owners;   // indexed by OwnerId
  std::vector<OwnedTable> tables;  // one per owner
};

// Writes <dir>/owners/<owner name>.csv and <dir>/manifest.json.
void WriteAssignment(const std::filesystem::path& dir, const Dataset& dataset,
                     const AssignmentScenario& scenario,
                     const OwnerAssignment& assignment);

// Reads a manifest written by WriteAssignment.
OwnerData ReadAssignment(const std::filesystem::path& manifest);

}  // namespace dasv

#endif  // DASV_IO_H_
