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

#ifndef DASV_ALLOCATION_H_
#define DASV_ALLOCATION_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "dasv/owner_set.h"
#include "dasv/utility.h"

namespace dasv {

struct OwnerShare {
  OwnerId owner;
  Utility value;

  friend bool operator==(const OwnerShare&, const OwnerShare&) = default;
};

// Shares of one coalition tuple, sorted by owner; owners not listed get 0.
using TupleAllocation = std::vector<OwnerShare>;

// Per-owner Shapley values over a dense owner universe.
class Allocation {
 public:
  Allocation() = default;
  explicit Allocation(std::size_t universe);

  std::size_t universe() const { return per_owner_.size(); }

  const Utility& operator[](OwnerId owner) const;
  void Add(OwnerId owner, const Utility& value);
  void Add(const TupleAllocation& shares);
  void Set(OwnerId owner, Utility value);

  Utility Total() const;
  std::vector<double> ToDoubles() const;

  const std::vector<Utility>& per_owner() const { return per_owner_; }

  // Filled only when per-tuple breakdown was requested.
  std::optional<std::vector<TupleAllocation>> per_tuple;

  // Compares per-owner values only.
  friend bool operator==(const Allocation& a, const Allocation& b) {
    return a.per_owner_ == b.per_owner_;
  }

 private:
  std::vector<Utility> per_owner_;
};

}  // namespace dasv

#endif  // DASV_ALLOCATION_H_
