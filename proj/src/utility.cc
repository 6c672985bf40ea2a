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

#include "dasv/utility.h"

#include <utility>

#include "dasv/errors.h"

namespace dasv {

Utility::Utility(long n) : value_(n) {
  if (n < 0) throw UsageError("utility must be non-negative");
}

Utility::Utility(Rational value) : value_(std::move(value)) {
  value_.canonicalize();
  if (sgn(value_) < 0) {
    throw UsageError("utility must be non-negative, got " +
                     RationalToString(value_));
  }
}

Utility Utility::Parse(std::string_view text) {
  return Utility(ParseRational(text));
}

Utility& Utility::operator+=(const Utility& o) {
  value_ += o.value_;
  return *this;
}

Utility& Utility::operator-=(const Utility& o) {
  if (cmp(value_, o.value_) < 0) {
    throw UsageError("utility subtraction would be negative");
  }
  value_ -= o.value_;
  return *this;
}

Utility& Utility::operator*=(const Utility& o) {
  value_ *= o.value_;
  return *this;
}

Utility& Utility::operator/=(const Utility& o) {
  if (sgn(o.value_) == 0) throw UsageError("division by zero utility");
  value_ /= o.value_;
  return *this;
}

}  // namespace dasv
