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

#ifndef DASV_BASELINES_H_
#define DASV_BASELINES_H_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dasv/allocation.h"
#include "dasv/coalition.h"
#include "dasv/deadline.h"
#include "dasv/engine.h"
#include "dasv/owner_set.h"
#include "dasv/plan.h"
#include "dasv/table.h"
#include "dasv/utility.h"

namespace dasv {

// Utility of the coalition formed by a subset of owners: the plan is
// re-executed over only their tables and the utilities of the resulting
// distinct tuples are summed. Evaluate() memoizes and is thread-safe.
class UtilityEvaluator {
 public:
  UtilityEvaluator(const CoalitionPlan& plan, std::vector<OwnedTable> tables,
                   UtilityModel utility = UtilityModel::Unit(),
                   EngineOptions engine = {});

  std::size_t owner_universe() const { return executor_.owner_universe(); }

  Utility Evaluate(const OwnerSet& owners, const Deadline* deadline = nullptr);
  Utility EvaluateUncached(const OwnerSet& owners,
                           const Deadline* deadline = nullptr) const;

  // Number of plan executions performed so far.
  std::uint64_t executions() const { return executions_.load(); }

 private:
  PlanExecutor executor_;
  UtilityModel utility_;
  mutable std::atomic<std::uint64_t> executions_{0};
  std::mutex memo_mu_;
  std::unordered_map<OwnerSet, Utility, OwnerSetHash> memo_;
};

struct TradOptions {
  // Refuse (CostError) above this many players.
  std::size_t owner_cap = 20;
  bool parallel = true;
  const Deadline* deadline = nullptr;
};

// Exact Shapley values of the players in `owners` by enumerating every
// coalition of them and weighting marginal contributions by
// 1 / (n * C(n-1, |S|)). Owners outside `owners` get 0.
Allocation TradShapley(UtilityEvaluator& evaluator, const OwnerSet& owners,
                       const TradOptions& options = {});

// Name of the generator behind PermShapley, for run metadata.
inline constexpr std::string_view kPermutationPrng = "mt19937_64";

struct PermOptions {
  std::size_t samples = 16;
  std::uint64_t seed = 0;
  bool parallel = true;
  const Deadline* deadline = nullptr;
};

// Monte-Carlo estimate over uniformly random permutations. Sample i draws
// its permutation from a generator seeded with (seed, i), so the estimate
// is the same for any thread count.
Allocation PermShapley(UtilityEvaluator& evaluator, const OwnerSet& owners,
                       const PermOptions& options);

// Averages over all n! permutations instead of sampling.
Allocation PermShapleyExhaustive(UtilityEvaluator& evaluator,
                                 const OwnerSet& owners,
                                 const Deadline* deadline = nullptr);

// Exact per-tuple Shapley values by enumerating coalitions of the tuple's
// owners; a coalition is worth `utility` iff it contains a synthesis.
// Throws CostError above `owner_cap` owners.
TupleAllocation BruteForceTupleOracle(const SynthesisSet& syntheses,
                                      const Utility& utility,
                                      std::size_t owner_cap = 20);

}  // namespace dasv

#endif  // DASV_BASELINES_H_
