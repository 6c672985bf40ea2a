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

#include "dasv/allocation.h"

#include <string>
#include <utility>

#include "dasv/errors.h"

namespace dasv {

Allocation::Allocation(std::size_t universe) : per_owner_(universe) {}

const Utility& Allocation::operator[](OwnerId owner) const {
  if (owner.value >= per_owner_.size()) {
    throw UsageError("owner " + std::to_string(owner.value) +
                     " outside allocation universe");
  }
  return per_owner_[owner.value];
}

void Allocation::Add(OwnerId owner, const Utility& value) {
  if (owner.value >= per_owner_.size()) {
    throw UsageError("owner " + std::to_string(owner.value) +
                     " outside allocation universe");
  }
  per_owner_[owner.value] += value;
}

void Allocation::Add(const TupleAllocation& shares) {
  for (const OwnerShare& s : shares) Add(s.owner, s.value);
}

void Allocation::Set(OwnerId owner, Utility value) {
  if (owner.value >= per_owner_.size()) {
    throw UsageError("owner " + std::to_string(owner.value) +
                     " outside allocation universe");
  }
  per_owner_[owner.value] = std::move(value);
}

Utility Allocation::Total() const {
  Utility total;
  for (const Utility& u : per_owner_) total += u;
  return total;
}

std::vector<double> Allocation::ToDoubles() const {
  std::vector<double> out;
  out.reserve(per_owner_.size());
  for (const Utility& u : per_owner_) out.push_back(u.ToDouble());
  return out;
}

}  // namespace dasv
