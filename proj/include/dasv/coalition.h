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

#ifndef DASV_COALITION_H_
#define DASV_COALITION_H_

#include <cstddef>
#include <string>
#include <vector>

#include "dasv/owner_set.h"
#include "dasv/utility.h"
#include "dasv/value.h"

namespace dasv {

// The minimal elements of `syntheses` under set inclusion, deduplicated and
// in canonical order (see CanonicalLess). Throws UsageError on an empty
// input or an empty member.
std::vector<OwnerSet> MinimalElements(std::vector<OwnerSet> syntheses);

// Minimal syntheses of one coalition tuple: a non-empty antichain of
// non-empty owner sets, canonically ordered.
class SynthesisSet {
 public:
  SynthesisSet() = default;

  static SynthesisSet Minimalize(std::vector<OwnerSet> syntheses);

  const std::vector<OwnerSet>& syntheses() const { return syntheses_; }
  std::size_t size() const { return syntheses_.size(); }
  std::size_t universe() const;
  auto begin() const { return syntheses_.begin(); }
  auto end() const { return syntheses_.end(); }
  const OwnerSet& operator[](std::size_t i) const { return syntheses_[i]; }

  // Union of all minimal syntheses: the only owners with a non-zero share.
  OwnerSet Owners() const;

  friend bool operator==(const SynthesisSet&, const SynthesisSet&) = default;

 private:
  std::vector<OwnerSet> syntheses_;
};

struct CoalitionTuple {
  Row values;
  Utility utility;
  SynthesisSet syntheses;
};

// Deduplicated output of a coalition plan with per-tuple provenance.
struct CoalitionSet {
  std::vector<std::string> schema;
  std::size_t owner_universe = 0;
  std::vector<CoalitionTuple> tuples;

  Utility TotalUtility() const;
};

}  // namespace dasv

#endif  // DASV_COALITION_H_
