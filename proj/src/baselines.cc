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

#include "dasv/baselines.h"

#include <algorithm>
#include <bit>
#include <random>
#include <string>
#include <utility>

#include "dasv/errors.h"
#include "parallel.h"

namespace dasv {

UtilityEvaluator::UtilityEvaluator(const CoalitionPlan& plan,
                                   std::vector<OwnedTable> tables,
                                   UtilityModel utility, EngineOptions engine)
    : executor_(plan, std::move(tables), engine), utility_(std::move(utility)) {}

Utility UtilityEvaluator::EvaluateUncached(const OwnerSet& owners,
                                           const Deadline* deadline) const {
  if (owners.empty()) return Utility(0);
  ++executions_;
  const std::vector<Row> rows = executor_.Rows(&owners, deadline);
  if (utility_.is_unit()) return Utility(static_cast<long>(rows.size()));
  Utility total;
  for (const Row& r : rows) total += utility_.Of(r, executor_.schema());
  return total;
}

Utility UtilityEvaluator::Evaluate(const OwnerSet& owners,
                                   const Deadline* deadline) {
  {
    std::lock_guard<std::mutex> lock(memo_mu_);
    if (auto it = memo_.find(owners); it != memo_.end()) return it->second;
  }
  Utility value = EvaluateUncached(owners, deadline);
  std::lock_guard<std::mutex> lock(memo_mu_);
  memo_.emplace(owners, value);
  return value;
}

namespace {

std::vector<OwnerId> Players(const UtilityEvaluator& evaluator,
                             const OwnerSet& owners) {
  if (owners.universe() != evaluator.owner_universe()) {
    throw UsageError("player set universe does not match the evaluator");
  }
  return owners.Members();
}

OwnerSet CoalitionOf(const std::vector<OwnerId>& players, std::uint64_t mask,
                     std::size_t universe) {
  OwnerSet s(universe);
  for (std::size_t i = 0; i < players.size(); ++i) {
    if ((mask >> i) & 1U) s.Insert(players[i]);
  }
  return s;
}

}  // namespace

Allocation TradShapley(UtilityEvaluator& evaluator, const OwnerSet& owners,
                       const TradOptions& options) {
  const std::vector<OwnerId> players = Players(evaluator, owners);
  const std::size_t n = players.size();
  if (n > options.owner_cap || n > 62) {
    throw CostError("traditional Shapley refuses " + std::to_string(n) +
                    " owners (cap " + std::to_string(options.owner_cap) + ")");
  }
  Allocation out(evaluator.owner_universe());
  if (n == 0) return out;

  const std::uint64_t coalitions = std::uint64_t{1} << n;
  std::vector<Utility> value(coalitions);
  internal::ParallelFor(
      static_cast<std::int64_t>(coalitions), options.parallel,
      [&](std::int64_t mask) {
        CheckDeadline(options.deadline);
        value[static_cast<std::size_t>(mask)] = evaluator.EvaluateUncached(
            CoalitionOf(players, static_cast<std::uint64_t>(mask),
                        evaluator.owner_universe()),
            options.deadline);
      });

  std::vector<Rational> weight(n);
  for (std::size_t s = 0; s < n; ++s) {
    weight[s] = MakeRational(BigInt(1), BigInt(static_cast<unsigned long>(n)) *
                                            Binomial(n - 1, s));
  }
  std::vector<Rational> psi(n);
  internal::ParallelFor(
      static_cast<std::int64_t>(n), options.parallel, [&](std::int64_t i) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        // Group marginals by coalition size before weighting.
        std::vector<Rational> by_size(n);
        for (std::uint64_t mask = 0; mask < coalitions; ++mask) {
          if ((mask & 0xFFF) == 0) CheckDeadline(options.deadline);
          if (mask & bit) continue;
          by_size[static_cast<std::size_t>(std::popcount(mask))] +=
              value[mask | bit].rational() - value[mask].rational();
        }
        Rational sum(0);
        for (std::size_t s = 0; s < n; ++s) sum += by_size[s] * weight[s];
        psi[static_cast<std::size_t>(i)] = sum;
      });
  for (std::size_t i = 0; i < n; ++i) out.Set(players[i], Utility(psi[i]));
  return out;
}

Allocation PermShapley(UtilityEvaluator& evaluator, const OwnerSet& owners,
                       const PermOptions& options) {
  if (options.samples == 0) throw UsageError("perm sampling needs samples >= 1");
  const std::vector<OwnerId> players = Players(evaluator, owners);
  const std::size_t n = players.size();
  const std::size_t universe = evaluator.owner_universe();
  Allocation out(universe);
  if (n == 0) return out;

  // marginal[sample][player]
  std::vector<std::vector<Utility>> marginal(options.samples,
                                             std::vector<Utility>(n));
  internal::ParallelFor(
      static_cast<std::int64_t>(options.samples), options.parallel,
      [&](std::int64_t sample) {
        const auto s = static_cast<std::uint64_t>(sample);
        std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                          static_cast<std::uint32_t>(options.seed >> 32),
                          static_cast<std::uint32_t>(s),
                          static_cast<std::uint32_t>(s >> 32)};
        std::mt19937_64 rng(seq);
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);

        OwnerSet prefix(universe);
        Utility previous(0);
        for (std::size_t idx : order) {
          CheckDeadline(options.deadline);
          prefix.Insert(players[idx]);
          Utility current = evaluator.Evaluate(prefix, options.deadline);
          marginal[static_cast<std::size_t>(sample)][idx] = current - previous;
          previous = std::move(current);
        }
      });

  const Utility count(static_cast<long>(options.samples));
  for (std::size_t i = 0; i < n; ++i) {
    Utility sum;
    for (const auto& m : marginal) sum += m[i];
    out.Set(players[i], sum / count);
  }
  return out;
}

Allocation PermShapleyExhaustive(UtilityEvaluator& evaluator,
                                 const OwnerSet& owners,
                                 const Deadline* deadline) {
  const std::vector<OwnerId> players = Players(evaluator, owners);
  const std::size_t n = players.size();
  if (n > 10) throw CostError("exhaustive permutation walk is limited to 10 owners");
  const std::size_t universe = evaluator.owner_universe();
  Allocation out(universe);
  if (n == 0) return out;

  std::vector<Utility> sum(n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::uint64_t permutations = 0;
  do {
    OwnerSet prefix(universe);
    Utility previous(0);
    for (std::size_t idx : order) {
      CheckDeadline(deadline);
      prefix.Insert(players[idx]);
      Utility current = evaluator.Evaluate(prefix, deadline);
      sum[idx] += current - previous;
      previous = std::move(current);
    }
    ++permutations;
  } while (std::next_permutation(order.begin(), order.end()));

  const Utility count(static_cast<long>(permutations));
  for (std::size_t i = 0; i < n; ++i) out.Set(players[i], sum[i] / count);
  return out;
}

TupleAllocation BruteForceTupleOracle(const SynthesisSet& syntheses,
                                      const Utility& utility,
                                      std::size_t owner_cap) {
  const std::vector<OwnerId> owners = syntheses.Owners().Members();
  const std::size_t n = owners.size();
  if (n > owner_cap || n > 62) {
    throw CostError("brute-force oracle refuses " + std::to_string(n) +
                    " owners (cap " + std::to_string(owner_cap) + ")");
  }
  std::vector<std::uint64_t> masks;
  for (const OwnerSet& s : syntheses) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (s.Contains(owners[i])) m |= std::uint64_t{1} << i;
    }
    masks.push_back(m);
  }
  const std::uint64_t coalitions = std::uint64_t{1} << n;
  auto produces = [&](std::uint64_t coalition) {
    return std::any_of(masks.begin(), masks.end(), [&](std::uint64_t m) {
      return (m & ~coalition) == 0;
    });
  };
  // |S|! (n - |S| - 1)! / n!
  const BigInt n_fact = Factorial(n);
  std::vector<Rational> weight(n);
  for (std::size_t s = 0; s < n; ++s) {
    weight[s] = MakeRational(Factorial(s) * Factorial(n - s - 1), n_fact);
  }
  TupleAllocation out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    Rational psi(0);
    for (std::uint64_t c = 0; c < coalitions; ++c) {
      if (c & bit) continue;
      const int gain = (produces(c | bit) ? 1 : 0) - (produces(c) ? 1 : 0);
      if (gain != 0) {
        psi += weight[static_cast<std::size_t>(std::popcount(c))] * gain;
      }
    }
    out.push_back({owners[i], Utility(utility.rational() * psi)});
  }
  return out;
}

}  // namespace dasv
