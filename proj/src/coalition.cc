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

#include "dasv/coalition.h"

#include <algorithm>
#include <utility>

#include "dasv/errors.h"

namespace dasv {

std::vector<OwnerSet> MinimalElements(std::vector<OwnerSet> syntheses) {
  if (syntheses.empty()) throw UsageError("cannot minimalize an empty list");
  for (const OwnerSet& s : syntheses) {
    if (s.empty()) throw UsageError("a synthesis must not be empty");
  }
  std::sort(syntheses.begin(), syntheses.end(), CanonicalLess);
  syntheses.erase(std::unique(syntheses.begin(), syntheses.end()),
                  syntheses.end());
  // Candidates arrive by non-decreasing cardinality, so any subset of a
  // candidate is already in `kept`.
  std::vector<OwnerSet> kept;
  kept.reserve(syntheses.size());
  for (OwnerSet& candidate : syntheses) {
    const bool dominated =
        std::any_of(kept.begin(), kept.end(), [&](const OwnerSet& k) {
          return k.IsSubsetOf(candidate);
        });
    if (!dominated) kept.push_back(std::move(candidate));
  }
  return kept;
}

SynthesisSet SynthesisSet::Minimalize(std::vector<OwnerSet> syntheses) {
  SynthesisSet out;
  out.syntheses_ = MinimalElements(std::move(syntheses));
  return out;
}

std::size_t SynthesisSet::universe() const {
  return syntheses_.empty() ? 0 : syntheses_.front().universe();
}

OwnerSet SynthesisSet::Owners() const {
  OwnerSet out(universe());
  for (const OwnerSet& s : syntheses_) out |= s;
  return out;
}

Utility CoalitionSet::TotalUtility() const {
  Utility total;
  for (const CoalitionTuple& t : tuples) total += t.utility;
  return total;
}

}  // namespace dasv
