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

#ifndef DASV_SHAPLEY_H_
#define DASV_SHAPLEY_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dasv/allocation.h"
#include "dasv/coalition.h"
#include "dasv/deadline.h"
#include "dasv/owner_set.h"
#include "dasv/utility.h"

// Per-tuple exact Shapley kernels under independent utility. Every kernel
// takes the minimal syntheses of one coalition tuple and that tuple's
// utility; owners outside the union of the syntheses always receive zero.

namespace dasv {

enum class CaseKind { kSingleOwnerOnly, kUniqueMultiOwner, kGeneral };

struct TupleCase {
  CaseKind kind = CaseKind::kGeneral;
  // kSingleOwnerOnly: number of single-owner syntheses.
  // kUniqueMultiOwner: size of the multi-owner synthesis.
  std::size_t m = 0;
  // kUniqueMultiOwner: number of single-owner syntheses.
  std::size_t k = 0;

  friend bool operator==(const TupleCase&, const TupleCase&) = default;
};

TupleCase ClassifyTuple(const SynthesisSet& syntheses);

// Every single-synthesis owner gets utility / m. Throws UsageError unless
// the tuple is single-owner-only.
TupleAllocation PsiSingleOwnerOnly(const SynthesisSet& syntheses,
                                   const Utility& utility);

// Closed form for one multi-owner synthesis of size m plus k single-owner
// syntheses. Throws UsageError unless the tuple is in that case.
TupleAllocation PsiUniqueMulti(const SynthesisSet& syntheses,
                               const Utility& utility);

// Minimal syntheses split by whether they contain `owner`.
struct SynthesisSplit {
  OwnerId owner;
  std::vector<OwnerSet> with_owner;
  std::vector<OwnerSet> without_owner;

  std::size_t m_with() const { return with_owner.size(); }
  std::size_t m_without() const { return without_owner.size(); }
};

SynthesisSplit SplitSyntheses(const SynthesisSet& syntheses, OwnerId owner);

struct KernelLimits {
  // Largest inclusion-exclusion width (number of subsets) SC may enumerate.
  std::uint64_t sc_term_cap = std::uint64_t{1} << 24;
  // Largest |owners of the tuple| SL may enumerate subsets of.
  std::size_t sl_owner_cap = 30;
};

// Synthesis combination: inclusion-exclusion over the syntheses containing
// the owner and over their pairwise unions with the syntheses that do not.
// Returns 0 when no synthesis contains the owner. Throws CostError when the
// enumeration width exceeds `limits.sc_term_cap`.
Utility PsiSc(const SynthesisSplit& split, const Utility& utility,
              const KernelLimits& limits = {},
              const Deadline* deadline = nullptr);

// Synthesis look-up: enumerates subsets of the tuple's owners except
// `owner` and tests marginal contribution against the materialized
// syntheses. Returns 0 for owners outside the syntheses. Throws CostError
// when the tuple has more than `limits.sl_owner_cap` owners.
Utility PsiSl(OwnerId owner, const SynthesisSet& syntheses,
              const Utility& utility, const KernelLimits& limits = {},
              const Deadline* deadline = nullptr);

}  // namespace dasv

#endif  // DASV_SHAPLEY_H_
