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

#ifndef DASV_DEADLINE_H_
#define DASV_DEADLINE_H_

#include <chrono>
#include <optional>

#include "dasv/errors.h"

namespace dasv {

// Cooperative cancellation point. Long-running kernels poll `expired()` at
// bounded intervals and unwind with TimeoutError.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  // Never expires.
  Deadline() = default;

  static Deadline After(std::chrono::duration<double> budget) {
    Deadline d;
    d.at_ = Clock::now() +
            std::chrono::duration_cast<Clock::duration>(budget);
    return d;
  }

  bool expired() const { return at_.has_value() && Clock::now() >= *at_; }

  void Check() const {
    if (expired()) throw TimeoutError("deadline exceeded");
  }

 private:
  std::optional<Clock::time_point> at_;
};

inline void CheckDeadline(const Deadline* deadline) {
  if (deadline != nullptr) deadline->Check();
}

inline bool Expired(const Deadline* deadline) {
  return deadline != nullptr && deadline->expired();
}

}  // namespace dasv

#endif  // DASV_DEADLINE_H_
