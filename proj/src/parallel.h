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

#ifndef DASV_SRC_PARALLEL_H_
#define DASV_SRC_PARALLEL_H_

#include <cstdint>
#include <exception>
#include <mutex>

#include <omp.h>

namespace dasv::internal {

// Runs fn(i) for i in [0, n), optionally across OpenMP threads. The first
// exception thrown by any iteration stops the remaining iterations and is
// rethrown on the calling thread.
template <typename Fn>
void ParallelFor(std::int64_t n, bool parallel, Fn&& fn) {
  std::exception_ptr failure;
  std::mutex mu;
  bool failed = false;
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    bool skip;
#pragma omp atomic read
    skip = failed;
    if (skip) continue;
    try {
      fn(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!failure) failure = std::current_exception();
#pragma omp atomic write
      failed = true;
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace dasv::internal

#endif  // DASV_SRC_PARALLEL_H_
