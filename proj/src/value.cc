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

#include "dasv/value.h"

#include <cctype>
#include <functional>
#include <string>

#include "dasv/errors.h"

namespace dasv {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

bool IsDigits(std::string_view s) {
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

std::string_view ValueTypeName(ValueType type) {
  switch (type) {
    case ValueType::kString:
      return "string";
    case ValueType::kInteger:
      return "integer";
    case ValueType::kDecimal:
      return "decimal";
  }
  return "string";
}

ValueType ParseValueType(std::string_view name) {
  if (name == "string") return ValueType::kString;
  if (name == "integer") return ValueType::kInteger;
  if (name == "decimal") return ValueType::kDecimal;
  throw ParseError("unknown attribute type '" + std::string(name) + "'");
}

std::string CanonicalNumber(std::string_view text, bool allow_fraction) {
  std::string_view s = Trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  const auto dot = s.find('.');
  std::string_view whole = s.substr(0, dot);
  std::string_view frac =
      dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  const bool has_dot = dot != std::string_view::npos;
  if ((whole.empty() && frac.empty()) || !IsDigits(whole) ||
      !IsDigits(frac) || (has_dot && !allow_fraction)) {
    throw ParseError("not a " +
                     std::string(allow_fraction ? "decimal" : "integer") +
                     " number: '" + std::string(text) + "'");
  }
  while (whole.size() > 1 && whole.front() == '0') whole.remove_prefix(1);
  while (!frac.empty() && frac.back() == '0') frac.remove_suffix(1);
  std::string out(whole.empty() ? "0" : whole);
  if (!frac.empty()) {
    out += '.';
    out += frac;
  }
  if (negative && out != "0") out.insert(out.begin(), '-');
  return out;
}

Value Value::String(std::string text) {
  return Value(Kind::kString, std::move(text));
}

Value Value::Number(std::string_view text) {
  return Value(Kind::kNumber, CanonicalNumber(text));
}

Value Value::Typed(std::string_view raw, ValueType type) {
  const std::string_view trimmed = Trim(raw);
  switch (type) {
    case ValueType::kString:
      return String(std::string(trimmed));
    case ValueType::kInteger:
      return Value(Kind::kNumber, CanonicalNumber(trimmed, false));
    case ValueType::kDecimal:
      return Value(Kind::kNumber, CanonicalNumber(trimmed, true));
  }
  return String(std::string(trimmed));
}

std::size_t ValueHash::operator()(const Value& v) const noexcept {
  return std::hash<std::string>{}(v.text()) * 31 +
         static_cast<std::size_t>(v.kind());
}

std::size_t RowHash::operator()(const Row& row) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const Value& v : row) {
    h ^= ValueHash{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace dasv
