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

#ifndef DASV_IUSV_H_
#define DASV_IUSV_H_

#include <cstddef>
#include <cstdint>

#include "dasv/allocation.h"
#include "dasv/coalition.h"
#include "dasv/deadline.h"
#include "dasv/shapley.h"

namespace dasv {

// How tuples were routed by the driver.
struct CaseStats {
  std::uint64_t tuples = 0;
  std::uint64_t single_owner_only = 0;
  std::uint64_t unique_multi = 0;
  std::uint64_t general = 0;
  // Per-owner computations in general tuples, by the algorithm that
  // produced the value.
  std::uint64_t sc_calls = 0;
  std::uint64_t sl_calls = 0;
  // Calls that went to the other algorithm because the preferred one was
  // over its cap.
  std::uint64_t fallbacks = 0;

  CaseStats& operator+=(const CaseStats& o);
  friend bool operator==(const CaseStats&, const CaseStats&) = default;
};

struct IusvOptions {
  // Routing threshold: SC when |owners of t| > gamma * max(m_u, m_u * m_not_u).
  double gamma = 1.0;
  KernelLimits limits;
  bool keep_per_tuple = false;
  const Deadline* deadline = nullptr;
};

struct TupleResult {
  TupleAllocation shares;
  CaseStats stats;
};

// Shapley values of the owners for one tuple. Throws CostError only when
// both SC and SL are over their caps for some owner.
TupleResult IusvTuple(const SynthesisSet& syntheses, const Utility& utility,
                      const IusvOptions& options = {});

struct IusvResult {
  Allocation allocation;
  CaseStats stats;
};

// Sums per-tuple values over the coalition set, fanning tuples out over
// OpenMP threads. Results do not depend on scheduling.
IusvResult IusvAll(const CoalitionSet& coalition,
                   const IusvOptions& options = {});

// Single-threaded reference for IusvAll.
IusvResult IusvAllSerial(const CoalitionSet& coalition,
                         const IusvOptions& options = {});

}  // namespace dasv

#endif  // DASV_IUSV_H_
