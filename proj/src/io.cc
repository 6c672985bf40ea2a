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

#include "dasv/io.h"

#include <fstream>
#include <optional>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "dasv/errors.h"

namespace dasv {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void CsvFail(std::string_view source, std::size_t line,
                          const std::string& what) {
  throw ParseError(std::string(source) + ":" + std::to_string(line) + ": " +
                   what);
}

std::pair<std::string, std::optional<ValueType>> SplitHeaderCell(
    const std::string& cell) {
  const std::size_t colon = cell.rfind(':');
  if (colon != std::string::npos) {
    try {
      return {cell.substr(0, colon), ParseValueType(cell.substr(colon + 1))};
    } catch (const ParseError&) {
      // Not a type suffix; the colon belongs to the name.
    }
  }
  return {cell, std::nullopt};
}

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

json ParseJson(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::vector<CsvRecord> ParseCsv(std::string_view text,
                                std::string_view source) {
  std::vector<CsvRecord> out;
  std::size_t line = 1;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (text[i] == '\n' || (text[i] == '\r' && i + 1 < n && text[i + 1] == '\n')) {
      i += text[i] == '\r' ? 2 : 1;
      ++line;
      continue;
    }
    CsvRecord rec;
    rec.line = line;
    std::string field;
    bool done = false;
    while (!done) {
      field.clear();
      if (i < n && text[i] == '"') {
        const std::size_t open_line = line;
        ++i;
        while (true) {
          if (i >= n) CsvFail(source, open_line, "unterminated quoted field");
          if (text[i] == '"') {
            if (i + 1 < n && text[i + 1] == '"') {
              field.push_back('"');
              i += 2;
              continue;
            }
            ++i;
            break;
          }
          if (text[i] == '\n') ++line;
          field.push_back(text[i++]);
        }
        if (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          CsvFail(source, line, "unexpected character after closing quote");
        }
      } else {
        while (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          if (text[i] == '"') CsvFail(source, line, "stray quote in field");
          field.push_back(text[i++]);
        }
      }
      rec.fields.push_back(field);
      if (i >= n) {
        done = true;
      } else if (text[i] == ',') {
        ++i;
      } else {
        if (text[i] == '\r') ++i;
        if (i < n && text[i] == '\n') ++i;
        ++line;
        done = true;
      }
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::string CsvEscape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string CsvLine(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += CsvEscape(fields[i]);
  }
  out.push_back('\n');
  return out;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

SchemaConfig ParseSchemaConfig(std::string_view json_text) {
  const json j = ParseJson(json_text, "schema config");
  if (!j.is_object()) throw ParseError("schema config must be an object");
  SchemaConfig out;
  for (const auto& [table, cols] : j.items()) {
    if (!cols.is_array()) {
      throw ParseError("schema config for '" + table + "' must be an array");
    }
    std::vector<ColumnDef> defs;
    for (const json& c : cols) {
      if (!c.is_object() || !c.contains("name")) {
        throw ParseError("schema column for '" + table + "' needs a name");
      }
      ColumnDef def;
      def.name = c.at("name").get<std::string>();
      if (c.contains("type")) {
        def.type = ParseValueType(c.at("type").get<std::string>());
      }
      defs.push_back(std::move(def));
    }
    out.emplace(table, std::move(defs));
  }
  return out;
}

SchemaConfig LoadSchemaConfig(const fs::path& path) {
  return ParseSchemaConfig(ReadFile(path));
}

Table ParseTableCsv(std::string_view text, std::string table_name,
                    const SchemaConfig* config, std::string_view source) {
  std::vector<CsvRecord> records = ParseCsv(text, source);
  if (records.empty()) CsvFail(source, 1, "missing header row");
  Table table;
  table.name = std::move(table_name);
  for (const std::string& cell : records.front().fields) {
    auto [name, type] = SplitHeaderCell(Trim(cell));
    if (name.empty()) CsvFail(source, records.front().line, "empty column name");
    table.schema.push_back(std::move(name));
    table.types.push_back(type.value_or(ValueType::kString));
  }
  if (config != nullptr) {
    if (auto it = config->find(table.name); it != config->end()) {
      const auto& cols = it->second;
      if (cols.size() != table.schema.size()) {
        CsvFail(source, records.front().line,
                "header has " + std::to_string(table.schema.size()) +
                    " columns, schema config has " +
                    std::to_string(cols.size()));
      }
      for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].name != table.schema[c]) {
          CsvFail(source, records.front().line,
                  "column " + std::to_string(c + 1) + " is '" +
                      table.schema[c] + "', schema config says '" +
                      cols[c].name + "'");
        }
        table.types[c] = cols[c].type;
      }
    }
  }
  for (std::size_t r = 1; r < records.size(); ++r) {
    const CsvRecord& rec = records[r];
    if (rec.fields.size() != table.schema.size()) {
      CsvFail(source, rec.line,
              "expected " + std::to_string(table.schema.size()) +
                  " fields, got " + std::to_string(rec.fields.size()));
    }
    Row row;
    row.reserve(rec.fields.size());
    for (std::size_t c = 0; c < rec.fields.size(); ++c) {
      try {
        row.push_back(Value::Typed(rec.fields[c], table.types[c]));
      } catch (const ParseError& e) {
        CsvFail(source, rec.line,
                "column '" + table.schema[c] + "': " + e.what());
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

Dataset IngestCsv(const std::vector<fs::path>& paths,
                  const SchemaConfig* config) {
  Dataset out;
  for (const fs::path& p : paths) {
    std::string name = p.stem().string();
    if (out.Find(name) != nullptr) {
      throw ConfigError("duplicate table name '" + name + "'");
    }
    out.tables.push_back(
        ParseTableCsv(ReadFile(p), std::move(name), config, p.string()));
  }
  return out;
}

std::string TableToCsv(const std::vector<std::string>& schema,
                       const std::vector<ValueType>& types,
                       const std::vector<Row>& rows) {
  std::vector<std::string> header;
  for (std::size_t c = 0; c < schema.size(); ++c) {
    header.push_back(schema[c] + ":" + std::string(ValueTypeName(types[c])));
  }
  std::string out = CsvLine(header);
  std::vector<std::string> fields;
  for (const Row& row : rows) {
    fields.clear();
    for (const Value& v : row) fields.push_back(v.text());
    out += CsvLine(fields);
  }
  return out;
}

namespace {

json ScenarioJson(const AssignmentScenario& s) {
  return json{{"owner_mode", ToString(s.owner_mode)},
              {"assign_mode", ToString(s.assign_mode)},
              {"k", s.k},
              {"alpha", s.alpha},
              {"m", s.max_copies},
              {"beta", s.beta},
              {"small_table_threshold", s.small_table_threshold},
              {"seed", s.seed}};
}

AssignmentScenario ScenarioFromJson(const json& j) {
  if (!j.is_object()) throw ConfigError("scenario must be a JSON object");
  AssignmentScenario s;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "owner_mode") {
        s.owner_mode = ParseOwnerMode(v.get<std::string>());
      } else if (key == "assign_mode") {
        s.assign_mode = ParseAssignMode(v.get<std::string>());
      } else if (key == "k") {
        s.k = v.get<std::size_t>();
      } else if (key == "alpha") {
        s.alpha = v.get<double>();
      } else if (key == "m") {
        s.max_copies = v.get<std::size_t>();
      } else if (key == "beta") {
        s.beta = v.get<double>();
      } else if (key == "small_table_threshold") {
        s.small_table_threshold = v.get<std::size_t>();
      } else if (key == "seed") {
        s.seed = v.get<std::uint64_t>();
      } else {
        throw ConfigError("unknown scenario key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  s.Validate();
  return s;
}

}  // namespace

std::string ScenarioToJson(const AssignmentScenario& scenario) {
  return ScenarioJson(scenario).dump(2) + "\n";
}

AssignmentScenario ParseScenario(std::string_view json_text) {
  return ScenarioFromJson(ParseJson(json_text, "scenario"));
}

AssignmentScenario LoadScenario(const fs::path& path) {
  return ParseScenario(ReadFile(path));
}

void WriteAssignment(const fs::path& dir, const Dataset& dataset,
                     const AssignmentScenario& scenario,
                     const OwnerAssignment& assignment) {
  json tables = json::array();
  for (const Table& t : dataset.tables) {
    json cols = json::array();
    for (std::size_t c = 0; c < t.schema.size(); ++c) {
      cols.push_back({{"name", t.schema[c]}, {"type", ValueTypeName(t.types[c])}});
    }
    std::size_t owners = 0;
    for (const OwnerInfo& o : assignment.owners) owners += o.table == t.name;
    tables.push_back(
        {{"name", t.name}, {"rows", t.rows.size()}, {"owners", owners}, {"columns", cols}});
  }
  json owners = json::array();
  for (std::size_t i = 0; i < assignment.owners.size(); ++i) {
    const OwnerInfo& o = assignment.owners[i];
    const OwnedTable& ot = assignment.tables[i];
    const Table* t = dataset.Find(o.table);
    if (t == nullptr) throw UsageError("owner of unknown table " + o.table);
    const std::string file = "owners/" + o.name + ".csv";
    WriteFile(dir / file, TableToCsv(t->schema, t->types, ot.rows));
    owners.push_back({{"id", o.id.value},
                      {"name", o.name},
                      {"table", o.table},
                      {"file", file},
                      {"rows", ot.rows.size()}});
  }
  const json manifest{{"scenario", ScenarioJson(scenario)},
                      {"owner_universe", assignment.owner_universe()},
                      {"tables", tables},
                      {"owners", owners}};
  WriteFile(dir / "manifest.json", manifest.dump(2) + "\n");
}

OwnerData ReadAssignment(const fs::path& manifest) {
  const json j = ParseJson(ReadFile(manifest), manifest.string());
  const fs::path base = manifest.parent_path();
  OwnerData out;
  try {
    SchemaConfig types;
    for (const json& t : j.at("tables")) {
      std::vector<ColumnDef> cols;
      for (const json& c : t.at("columns")) {
        cols.push_back({c.at("name").get<std::string>(),
                        ParseValueType(c.at("type").get<std::string>())});
      }
      types.emplace(t.at("name").get<std::string>(), std::move(cols));
    }
    for (const json& o : j.at("owners")) {
      OwnerInfo info{OwnerId(o.at("id").get<std::uint32_t>()),
                     o.at("name").get<std::string>(),
                     o.at("table").get<std::string>()};
      if (info.id.value != out.owners.size()) {
        throw ParseError("manifest owner ids must be 0, 1, 2, ... in order");
      }
      const fs::path file = base / o.at("file").get<std::string>();
      Table t = ParseTableCsv(ReadFile(file), info.table, &types, file.string());
      out.tables.push_back(
          MakeOwnedTable(info.id, info.table, std::move(t.schema), std::move(t.rows)));
      out.owners.push_back(std::move(info));
    }
  } catch (const json::exception& e) {
    throw ParseError(manifest.string() + ": " + e.what());
  }
  return out;
}

}  // namespace dasv
