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

#ifndef DASV_VALUE_H_
#define DASV_VALUE_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dasv {

// Declared attribute type of an input column.
enum class ValueType : std::uint8_t { kString, kInteger, kDecimal };

std::string_view ValueTypeName(ValueType type);
// Accepts "string", "integer", "decimal"; throws ParseError otherwise.
ValueType ParseValueType(std::string_view name);

// A scalar cell after typing. Integers and decimals share the kNumber kind
// and compare equal when numerically equal, since both carry a canonical
// decimal rendering ("007" -> "7", "1.50" -> "1.5", "-0.0" -> "0").
class Value {
 public:
  enum class Kind : std::uint8_t { kString, kNumber };

  Value() = default;

  static Value String(std::string text);
  // Throws ParseError when `text` is not a plain decimal number.
  static Value Number(std::string_view text);
  // Trims surrounding whitespace and canonicalizes per `type`.
  static Value Typed(std::string_view raw, ValueType type);

  Kind kind() const { return kind_; }
  const std::string& text() const { return text_; }

  friend bool operator==(const Value&, const Value&) = default;
  friend auto operator<=>(const Value&, const Value&) = default;

 private:
  Value(Kind kind, std::string text) : kind_(kind), text_(std::move(text)) {}

  Kind kind_ = Kind::kString;
  std::string text_;
};

// Canonical decimal rendering of a plain number; throws ParseError.
std::string CanonicalNumber(std::string_view text, bool allow_fraction = true);

using Row = std::vector<Value>;

struct ValueHash {
  std::size_t operator()(const Value& v) const noexcept;
};

struct RowHash {
  std::size_t operator()(const Row& row) const noexcept;
};

}  // namespace dasv

#endif  // DASV_VALUE_H_
