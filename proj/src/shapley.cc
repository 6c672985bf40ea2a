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

#include "dasv/shapley.h"

#include <algorithm>
#include <bit>
#include <span>
#include <string>
#include <utility>

#include "dasv/errors.h"

namespace dasv {
namespace {

constexpr std::uint64_t kPollInterval = std::uint64_t{1} << 16;

bool WidthWithinCap(std::size_t width, std::uint64_t cap) {
  if (width >= 64) return false;
  return (std::uint64_t{1} << width) - 1 <= cap;
}

// Owners of `sets` remapped to 0..n-1 in increasing order.
class LocalIndex {
 public:
  explicit LocalIndex(const OwnerSet& owners) : members_(owners.Members()) {}

  std::size_t size() const { return members_.size(); }

  std::uint64_t Narrow(const OwnerSet& s) const {
    std::uint64_t out = 0;
    s.ForEach([&](OwnerId id) { out |= std::uint64_t{1} << Find(id); });
    return out;
  }

  OwnerSet Remap(const OwnerSet& s) const {
    OwnerSet out(members_.size());
    s.ForEach([&](OwnerId id) {
      out.Insert(OwnerId(static_cast<std::uint32_t>(Find(id))));
    });
    return out;
  }

 private:
  std::size_t Find(OwnerId id) const {
    return static_cast<std::size_t>(
        std::lower_bound(members_.begin(), members_.end(), id) -
        members_.begin());
  }

  std::vector<OwnerId> members_;
};

std::size_t PopCount(std::uint64_t m) {
  return static_cast<std::size_t>(std::popcount(m));
}
std::size_t PopCount(const OwnerSet& m) { return m.cardinality(); }

// Signed term counts of sum_{X nonempty} (-1)^{|X|+1} / |union X|, bucketed
// by union cardinality. Depth-first over subsets so each union costs one
// OR with the cached union of its prefix.
template <typename Mask>
class UnionCardinalityCounter {
 public:
  UnionCardinalityCounter(std::span<const Mask> sets, Mask empty,
                          std::size_t max_card, const Deadline* deadline)
      : sets_(sets), empty_(std::move(empty)), counts_(max_card + 1, 0),
        deadline_(deadline) {}

  std::vector<std::int64_t> Run() {
    Visit(0, empty_, false);
    return std::move(counts_);
  }

 private:
  void Visit(std::size_t start, const Mask& acc, bool odd) {
    for (std::size_t i = start; i < sets_.size(); ++i) {
      if (++visited_ % kPollInterval == 0) CheckDeadline(deadline_);
      Mask next = acc | sets_[i];
      // Including set i flips the parity of |X|.
      counts_[PopCount(next)] += odd ? -1 : 1;
      Visit(i + 1, next, !odd);
    }
  }

  std::span<const Mask> sets_;
  Mask empty_;
  std::vector<std::int64_t> counts_;
  const Deadline* deadline_;
  std::uint64_t visited_ = 0;
};

Rational WeightedSum(const std::vector<std::int64_t>& counts) {
  Rational sum(0);
  for (std::size_t c = 1; c < counts.size(); ++c) {
    if (counts[c] != 0) {
      sum += MakeRational(BigInt(static_cast<long>(counts[c])),
                          BigInt(static_cast<unsigned long>(c)));
    }
  }
  return sum;
}

template <typename Mask>
Rational InclusionExclusion(std::span<const Mask> sets, const Mask& empty,
                            std::size_t max_card, const Deadline* deadline) {
  if (sets.empty()) return Rational(0);
  return WeightedSum(
      UnionCardinalityCounter<Mask>(sets, empty, max_card, deadline).Run());
}

// Drops duplicates and strict supersets. The union of the "all of A
// precede u" events is unchanged, since a superset's event is contained in
// its subset's event.
template <typename Mask>
std::vector<Mask> MinimalMasks(std::vector<Mask> sets, auto subset_of) {
  std::sort(sets.begin(), sets.end(), [](const Mask& a, const Mask& b) {
    return PopCount(a) < PopCount(b);
  });
  std::vector<Mask> kept;
  for (Mask& s : sets) {
    if (std::none_of(kept.begin(), kept.end(),
                     [&](const Mask& k) { return subset_of(k, s); })) {
      kept.push_back(std::move(s));
    }
  }
  return kept;
}

template <typename Mask>
Rational ScDifference(const std::vector<Mask>& with_owner,
                      const std::vector<Mask>& without_owner,
                      const Mask& empty, std::size_t n,
                      const KernelLimits& limits, const Deadline* deadline,
                      auto subset_of) {
  std::vector<Mask> pairs;
  pairs.reserve(with_owner.size() * without_owner.size());
  for (const Mask& a : with_owner) {
    for (const Mask& b : without_owner) pairs.push_back(a | b);
  }
  pairs = MinimalMasks(std::move(pairs), subset_of);
  if (!WidthWithinCap(pairs.size(), limits.sc_term_cap)) {
    throw CostError("SC enumeration over " + std::to_string(pairs.size()) +
                    " synthesis pairs exceeds the term cap");
  }
  const Rational nu = InclusionExclusion<Mask>(with_owner, empty, n, deadline);
  const Rational tau = InclusionExclusion<Mask>(pairs, empty, n, deadline);
  return nu - tau;
}

TupleAllocation SortedShares(TupleAllocation shares) {
  std::sort(shares.begin(), shares.end(),
            [](const OwnerShare& a, const OwnerShare& b) {
              return a.owner < b.owner;
            });
  return shares;
}

}  // namespace

TupleCase ClassifyTuple(const SynthesisSet& syntheses) {
  std::size_t singles = 0;
  std::size_t multis = 0;
  std::size_t multi_size = 0;
  for (const OwnerSet& s : syntheses) {
    const std::size_t c = s.cardinality();
    if (c == 1) {
      ++singles;
    } else {
      ++multis;
      multi_size = c;
    }
  }
  if (multis == 0) return {CaseKind::kSingleOwnerOnly, singles, 0};
  if (multis == 1) return {CaseKind::kUniqueMultiOwner, multi_size, singles};
  return {CaseKind::kGeneral, 0, 0};
}

TupleAllocation PsiSingleOwnerOnly(const SynthesisSet& syntheses,
                                   const Utility& utility) {
  const TupleCase c = ClassifyTuple(syntheses);
  if (c.kind != CaseKind::kSingleOwnerOnly || c.m == 0) {
    throw UsageError("PsiSingleOwnerOnly needs only single-owner syntheses");
  }
  const Utility share = utility / Utility(static_cast<long>(c.m));
  TupleAllocation out;
  for (const OwnerSet& s : syntheses) {
    out.push_back({s.Members().front(), share});
  }
  return SortedShares(std::move(out));
}

TupleAllocation PsiUniqueMulti(const SynthesisSet& syntheses,
                               const Utility& utility) {
  const TupleCase c = ClassifyTuple(syntheses);
  if (c.kind != CaseKind::kUniqueMultiOwner || c.m < 2) {
    throw UsageError("PsiUniqueMulti needs exactly one multi-owner synthesis");
  }
  const unsigned long m = c.m;
  const unsigned long k = c.k;
  // Each multi-synthesis owner is pivotal only when the rest of its
  // synthesis precedes it and no single owner does.
  const Rational denom(BigInt(m + k) * Binomial(m + k - 1, m - 1));
  const Utility multi_share = utility / Utility(denom);
  TupleAllocation out;
  for (const OwnerSet& s : syntheses) {
    if (s.cardinality() >= 2) {
      s.ForEach([&](OwnerId id) { out.push_back({id, multi_share}); });
    }
  }
  if (k > 0) {
    const Utility single_share =
        (utility / Utility(static_cast<long>(k))) *
        Utility(Rational(1) - Rational(m) / denom);
    for (const OwnerSet& s : syntheses) {
      if (s.cardinality() == 1) out.push_back({s.Members().front(), single_share});
    }
  }
  return SortedShares(std::move(out));
}

SynthesisSplit SplitSyntheses(const SynthesisSet& syntheses, OwnerId owner) {
  SynthesisSplit split;
  split.owner = owner;
  for (const OwnerSet& s : syntheses) {
    (s.Contains(owner) ? split.with_owner : split.without_owner).push_back(s);
  }
  return split;
}

Utility PsiSc(const SynthesisSplit& split, const Utility& utility,
              const KernelLimits& limits, const Deadline* deadline) {
  if (split.with_owner.empty()) return Utility(0);
  for (const OwnerSet& s : split.with_owner) {
    if (!s.Contains(split.owner)) {
      throw UsageError("SynthesisSplit: a with-owner synthesis lacks the owner");
    }
  }
  for (const OwnerSet& s : split.without_owner) {
    if (s.Contains(split.owner)) {
      throw UsageError("SynthesisSplit: a without-owner synthesis has the owner");
    }
  }
  if (!WidthWithinCap(split.m_with(), limits.sc_term_cap)) {
    throw CostError("SC enumeration over " + std::to_string(split.m_with()) +
                    " syntheses exceeds the term cap");
  }
  OwnerSet owners(split.with_owner.front().universe());
  for (const OwnerSet& s : split.with_owner) owners |= s;
  for (const OwnerSet& s : split.without_owner) owners |= s;
  const LocalIndex local(owners);
  const std::size_t n = local.size();

  Rational diff;
  if (n <= 64) {
    std::vector<std::uint64_t> with, without;
    for (const OwnerSet& s : split.with_owner) with.push_back(local.Narrow(s));
    for (const OwnerSet& s : split.without_owner) {
      without.push_back(local.Narrow(s));
    }
    diff = ScDifference<std::uint64_t>(
        with, without, 0, n, limits, deadline,
        [](std::uint64_t a, std::uint64_t b) { return (a & ~b) == 0; });
  } else {
    std::vector<OwnerSet> with, without;
    for (const OwnerSet& s : split.with_owner) with.push_back(local.Remap(s));
    for (const OwnerSet& s : split.without_owner) {
      without.push_back(local.Remap(s));
    }
    diff = ScDifference<OwnerSet>(
        with, without, OwnerSet(n), n, limits, deadline,
        [](const OwnerSet& a, const OwnerSet& b) { return a.IsSubsetOf(b); });
  }
  return Utility(utility.rational() * diff);
}

Utility PsiSl(OwnerId owner, const SynthesisSet& syntheses,
              const Utility& utility, const KernelLimits& limits,
              const Deadline* deadline) {
  const OwnerSet owners = syntheses.Owners();
  if (!owners.Contains(owner)) return Utility(0);
  const std::size_t n = owners.cardinality();
  if (n > limits.sl_owner_cap || n > 62) {
    throw CostError("SL enumeration over " + std::to_string(n) +
                    " owners exceeds the cap of " +
                    std::to_string(std::min<std::size_t>(limits.sl_owner_cap, 62)));
  }
  // Bit positions over the other owners of the tuple.
  OwnerSet others = owners;
  others.Erase(owner);
  const LocalIndex local(others);
  std::vector<std::uint64_t> completes;  // W_u minus the owner
  std::vector<std::uint64_t> blockers;   // W_not_u
  for (const OwnerSet& s : syntheses) {
    if (s.Contains(owner)) {
      OwnerSet rest = s;
      rest.Erase(owner);
      completes.push_back(local.Narrow(rest));
    } else {
      blockers.push_back(local.Narrow(s));
    }
  }

  const std::size_t width = n - 1;
  const std::uint64_t subsets = std::uint64_t{1} << width;
  std::vector<std::uint64_t> counts(width + 1, 0);
  for (std::uint64_t s = 0; s < subsets; ++s) {
    if ((s + 1) % kPollInterval == 0) CheckDeadline(deadline);
    bool completed = false;
    for (std::uint64_t c : completes) {
      if ((c & ~s) == 0) {
        completed = true;
        break;
      }
    }
    if (!completed) continue;
    bool blocked = false;
    for (std::uint64_t b : blockers) {
      if ((b & ~s) == 0) {
        blocked = true;
        break;
      }
    }
    if (!blocked) ++counts[PopCount(s)];
  }

  Rational sum(0);
  for (std::size_t size = 0; size <= width; ++size) {
    if (counts[size] == 0) continue;
    sum += MakeRational(BigInt(static_cast<unsigned long>(counts[size])),
                        Binomial(width, size));
  }
  sum /= Rational(static_cast<unsigned long>(n));
  return Utility(utility.rational() * sum);
}

}  // namespace dasv
