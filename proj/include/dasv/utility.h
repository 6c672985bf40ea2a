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

#ifndef DASV_UTILITY_H_
#define DASV_UTILITY_H_

#include <compare>
#include <string>
#include <string_view>

#include "dasv/rational.h"

namespace dasv {

// Non-negative exact rational utility. Subtraction that would go below zero
// throws UsageError; use Rational for signed intermediates.
class Utility {
 public:
  Utility() = default;
  Utility(long n);  // NOLINT(google-explicit-constructor)
  explicit Utility(Rational value);

  static Utility Parse(std::string_view text);

  const Rational& rational() const { return value_; }
  double ToDouble() const { return value_.get_d(); }
  std::string ToString() const { return RationalToString(value_); }
  bool is_zero() const { return sgn(value_) == 0; }

  Utility& operator+=(const Utility& o);
  Utility& operator-=(const Utility& o);
  Utility& operator*=(const Utility& o);
  Utility& operator/=(const Utility& o);

  friend Utility operator+(Utility a, const Utility& b) { return a += b; }
  friend Utility operator-(Utility a, const Utility& b) { return a -= b; }
  friend Utility operator*(Utility a, const Utility& b) { return a *= b; }
  friend Utility operator/(Utility a, const Utility& b) { return a /= b; }

  friend bool operator==(const Utility& a, const Utility& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Utility& a,
                                          const Utility& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

 private:
  Rational value_{0};
};

}  // namespace dasv

#endif  // DASV_UTILITY_H_
