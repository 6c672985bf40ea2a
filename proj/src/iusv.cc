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

#include "dasv/iusv.h"

#include <algorithm>
#include <exception>
#include <mutex>
#include <utility>

#include <omp.h>

#include "dasv/errors.h"

namespace dasv {

CaseStats& CaseStats::operator+=(const CaseStats& o) {
  tuples += o.tuples;
  single_owner_only += o.single_owner_only;
  unique_multi += o.unique_multi;
  general += o.general;
  sc_calls += o.sc_calls;
  sl_calls += o.sl_calls;
  fallbacks += o.fallbacks;
  return *this;
}

namespace {

enum class Route { kSc, kSl };

Route Preferred(std::size_t tuple_owners, const SynthesisSplit& split,
                double gamma) {
  const double m_u = static_cast<double>(split.m_with());
  const double score = std::max(m_u, m_u * static_cast<double>(split.m_without()));
  return static_cast<double>(tuple_owners) > gamma * score ? Route::kSc
                                                           : Route::kSl;
}

Utility RunRoute(Route route, const SynthesisSplit& split,
                 const SynthesisSet& syntheses, const Utility& utility,
                 const IusvOptions& options) {
  return route == Route::kSc
             ? PsiSc(split, utility, options.limits, options.deadline)
             : PsiSl(split.owner, syntheses, utility, options.limits,
                     options.deadline);
}

}  // namespace

TupleResult IusvTuple(const SynthesisSet& syntheses, const Utility& utility,
                      const IusvOptions& options) {
  if (!(options.gamma > 0)) throw ConfigError("gamma must be positive");
  TupleResult result;
  result.stats.tuples = 1;
  const TupleCase c = ClassifyTuple(syntheses);
  switch (c.kind) {
    case CaseKind::kSingleOwnerOnly:
      result.stats.single_owner_only = 1;
      result.shares = PsiSingleOwnerOnly(syntheses, utility);
      return result;
    case CaseKind::kUniqueMultiOwner:
      result.stats.unique_multi = 1;
      result.shares = PsiUniqueMulti(syntheses, utility);
      return result;
    case CaseKind::kGeneral:
      break;
  }
  result.stats.general = 1;
  const OwnerSet owners = syntheses.Owners();
  const std::size_t n = owners.cardinality();
  for (OwnerId u : owners.Members()) {
    const SynthesisSplit split = SplitSyntheses(syntheses, u);
    Route route = Preferred(n, split, options.gamma);
    Utility value;
    try {
      value = RunRoute(route, split, syntheses, utility, options);
    } catch (const CostError& first) {
      route = route == Route::kSc ? Route::kSl : Route::kSc;
      try {
        value = RunRoute(route, split, syntheses, utility, options);
      } catch (const CostError& second) {
        throw CostError("owner " + std::to_string(u.value) +
                        ": both SC and SL are over their caps (" +
                        first.what() + "; " + second.what() + ")");
      }
      ++result.stats.fallbacks;
    }
    ++(route == Route::kSc ? result.stats.sc_calls : result.stats.sl_calls);
    result.shares.push_back({u, std::move(value)});
  }
  return result;
}

IusvResult IusvAllSerial(const CoalitionSet& coalition,
                         const IusvOptions& options) {
  IusvResult out{Allocation(coalition.owner_universe), {}};
  if (options.keep_per_tuple) {
    out.allocation.per_tuple.emplace(coalition.tuples.size());
  }
  for (std::size_t i = 0; i < coalition.tuples.size(); ++i) {
    CheckDeadline(options.deadline);
    const CoalitionTuple& t = coalition.tuples[i];
    TupleResult r = IusvTuple(t.syntheses, t.utility, options);
    out.allocation.Add(r.shares);
    out.stats += r.stats;
    if (options.keep_per_tuple) (*out.allocation.per_tuple)[i] = std::move(r.shares);
  }
  return out;
}

IusvResult IusvAll(const CoalitionSet& coalition, const IusvOptions& options) {
  IusvResult out{Allocation(coalition.owner_universe), {}};
  if (options.keep_per_tuple) {
    out.allocation.per_tuple.emplace(coalition.tuples.size());
  }
  const auto count = static_cast<std::int64_t>(coalition.tuples.size());
  std::exception_ptr failure;
  std::mutex failure_mu;
  bool failed = false;

#pragma omp parallel
  {
    Allocation local(coalition.owner_universe);
    CaseStats local_stats;
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < count; ++i) {
      bool skip;
#pragma omp atomic read
      skip = failed;
      if (skip) continue;
      try {
        CheckDeadline(options.deadline);
        const CoalitionTuple& t = coalition.tuples[static_cast<std::size_t>(i)];
        TupleResult r = IusvTuple(t.syntheses, t.utility, options);
        local.Add(r.shares);
        local_stats += r.stats;
        if (options.keep_per_tuple) {
          (*out.allocation.per_tuple)[static_cast<std::size_t>(i)] =
              std::move(r.shares);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
#pragma omp atomic write
        failed = true;
      }
    }
    // Exact addition is associative and commutative, so the merge order
    // across threads does not matter.
#pragma omp critical(dasv_iusv_merge)
    {
      for (std::size_t o = 0; o < local.universe(); ++o) {
        const OwnerId id(static_cast<std::uint32_t>(o));
        if (!local[id].is_zero()) out.allocation.Add(id, local[id]);
      }
      out.stats += local_stats;
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace dasv
