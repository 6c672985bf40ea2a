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

#ifndef DASV_TESTS_SUPPORT_H_
#define DASV_TESTS_SUPPORT_H_

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "dasv/allocation.h"
#include "dasv/coalition.h"
#include "dasv/engine.h"
#include "dasv/owner_set.h"
#include "dasv/plan.h"
#include "dasv/rational.h"
#include "dasv/table.h"
#include "dasv/utility.h"
#include "dasv/value.h"

namespace dasv {

inline void PrintTo(const Utility& u, std::ostream* os) { *os << u.ToString(); }
inline void PrintTo(const OwnerSet& s, std::ostream* os) { *os << s.ToString(); }

namespace testing {

inline OwnerSet Set(std::size_t universe, std::initializer_list<std::uint32_t> members) {
  OwnerSet s(universe);
  for (std::uint32_t m : members) s.Insert(OwnerId(m));
  return s;
}

inline SynthesisSet Syn(std::size_t universe,
                        std::vector<std::vector<std::uint32_t>> sets) {
  std::vector<OwnerSet> out;
  for (const auto& members : sets) {
    OwnerSet s(universe);
    for (std::uint32_t m : members) s.Insert(OwnerId(m));
    out.push_back(s);
  }
  return SynthesisSet::Minimalize(std::move(out));
}

inline Rational Q(const char* text) { return ParseRational(text); }
inline Utility U(const char* text) { return Utility::Parse(text); }

inline Rational ShareOf(const TupleAllocation& shares, std::uint32_t owner) {
  for (const OwnerShare& s : shares) {
    if (s.owner.value == owner) return s.value.rational();
  }
  return Rational(0);
}

// Mean marginal contribution over every ordering of the tuple's owners.
// Utility_t(S) is w when S contains some synthesis and 0 otherwise. Owners
// outside the syntheses never change that utility, so ordering only the
// synthesis owners gives the full-universe value. Returns one value per
// owner of the universe.
inline std::vector<Rational> PermutationOracle(const SynthesisSet& syntheses,
                                               const Rational& w) {
  const std::size_t universe = syntheses.universe();
  std::vector<std::uint32_t> players;
  for (OwnerId o : syntheses.Owners().Members()) players.push_back(o.value);
  const std::size_t n = players.size();
  std::vector<std::uint32_t> masks;
  for (const OwnerSet& s : syntheses) {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (s.Contains(OwnerId(players[i]))) m |= 1u << i;
    }
    masks.push_back(m);
  }
  auto covered = [&](std::uint32_t prefix) {
    return std::any_of(masks.begin(), masks.end(),
                       [&](std::uint32_t m) { return (m & prefix) == m; });
  };
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::uint64_t> pivotal(n, 0);
  std::uint64_t perms = 0;
  do {
    ++perms;
    std::uint32_t prefix = 0;
    for (std::size_t idx : order) {
      prefix |= 1u << idx;
      if (covered(prefix)) {
        ++pivotal[idx];
        break;
      }
    }
  } while (std::next_permutation(order.begin(), order.end()));
  std::vector<Rational> out(universe, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    out[players[i]] = MakeRational(BigInt(static_cast<unsigned long>(pivotal[i])),
                                   BigInt(static_cast<unsigned long>(perms))) * w;
    out[players[i]].canonicalize();
  }
  return out;
}

inline std::size_t Uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Rational RandomRational(std::mt19937_64& rng) {
  return MakeRational(BigInt(static_cast<unsigned long>(Uniform(rng, 0, 30))),
                      BigInt(static_cast<unsigned long>(Uniform(rng, 1, 12))));
}

inline OwnerSet RandomOwnerSet(std::mt19937_64& rng, std::size_t universe,
                               double p = 0.5) {
  OwnerSet s(universe);
  std::bernoulli_distribution in(p);
  for (std::size_t i = 0; i < universe; ++i) {
    if (in(rng)) s.Insert(OwnerId(static_cast<std::uint32_t>(i)));
  }
  return s;
}

// A random antichain over a universe of 1..max_owners owners with at most
// max_syntheses members. Small syntheses are favoured.
inline SynthesisSet RandomSynthesisSet(std::mt19937_64& rng,
                                       std::size_t max_owners,
                                       std::size_t max_syntheses) {
  const std::size_t universe = Uniform(rng, 1, max_owners);
  const std::size_t count = Uniform(rng, 1, max_syntheses);
  std::vector<OwnerSet> sets;
  for (std::size_t i = 0; i < count; ++i) {
    OwnerSet s(universe);
    const std::size_t size = Uniform(rng, 1, std::min<std::size_t>(universe, 4));
    while (s.cardinality() < size) {
      s.Insert(OwnerId(static_cast<std::uint32_t>(Uniform(rng, 0, universe - 1))));
    }
    sets.push_back(s);
  }
  return SynthesisSet::Minimalize(std::move(sets));
}

inline OwnerSet SwapOwners(const OwnerSet& s, std::uint32_t a, std::uint32_t b) {
  OwnerSet out(s.universe());
  for (OwnerId o : s.Members()) {
    out.Insert(OwnerId(o.value == a ? b : o.value == b ? a : o.value));
  }
  return out;
}

inline Row IntRow(std::initializer_list<int> values) {
  Row row;
  for (int v : values) row.push_back(Value::Number(std::to_string(v)));
  return row;
}

// Small relational instance: logical tables R(A,B), S(B,C), T(A,C) with
// integer values in 0..3, split among at most 8 owners, and a plan drawn
// from a fixed menu of positive relational shapes.
struct MiniInstance {
  CoalitionPlan plan;
  std::vector<OwnedTable> tables;
  std::size_t owners = 0;
  UtilityModel utility;
  int shape = 0;
};

inline constexpr int kMiniShapes = 7;

inline CoalitionPlan MiniPlan(int shape) {
  using P = CoalitionPlan;
  auto r = [] { return P::Scan("R"); };
  auto s = [] { return P::Scan("S"); };
  auto t = [] { return P::Scan("T"); };
  switch (shape) {
    case 0:
      return P(r());
    case 1:
      return P(P::Project(r(), {"A"}));
    case 2:
      return P(P::NaturalJoin(r(), s()));
    case 3:
      return P(P::Project(P::NaturalJoin(r(), s()), {"A", "C"}));
    case 4:
      return P(P::Union({P::Project(P::NaturalJoin(r(), s()), {"A", "C"}), t()}));
    case 5:
      return P(P::Project(P::NaturalJoin(P::NaturalJoin(r(), s()), t()), {"A"}));
    default:
      return P(P::Union({P::Project(r(), {"A"}), P::Project(t(), {"A"})}));
  }
}

inline MiniInstance RandomMiniInstance(std::mt19937_64& rng,
                                       std::size_t max_owners = 8) {
  MiniInstance inst;
  inst.shape = static_cast<int>(Uniform(rng, 0, kMiniShapes - 1));
  inst.plan = MiniPlan(inst.shape);
  struct Logical {
    const char* name;
    std::vector<std::string> schema;
  };
  const Logical logical[] = {
      {"R", {"A", "B"}}, {"S", {"B", "C"}}, {"T", {"A", "C"}}};
  // Every logical table gets at least one owner; the rest are spread.
  std::vector<std::size_t> per_table(3, 1);
  const std::size_t total = Uniform(rng, 3, max_owners);
  for (std::size_t i = 3; i < total; ++i) ++per_table[Uniform(rng, 0, 2)];
  std::bernoulli_distribution keep(0.3);
  std::uint32_t next = 0;
  for (std::size_t t = 0; t < 3; ++t) {
    for (std::size_t o = 0; o < per_table[t]; ++o) {
      std::vector<Row> rows;
      for (int x = 0; x < 4; ++x) {
        for (int y = 0; y < 4; ++y) {
          if (keep(rng)) rows.push_back(IntRow({x, y}));
        }
      }
      inst.tables.push_back(MakeOwnedTable(OwnerId(next++), logical[t].name,
                                           logical[t].schema, std::move(rows)));
    }
  }
  inst.owners = next;
  inst.utility = Uniform(rng, 0, 1) == 0 ? UtilityModel::Unit()
                                         : UtilityModel::FromAttribute("A");
  return inst;
}

inline EngineOptions MiniEngineOptions(const MiniInstance& inst) {
  EngineOptions o;
  o.owner_universe = inst.owners;
  return o;
}

}  // namespace testing
}  // namespace dasv

#endif  // DASV_TESTS_SUPPORT_H_
