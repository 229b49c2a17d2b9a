// Copyright 2026 The roadpred Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ROADPRED_PARALLEL_HPP_
#define ROADPRED_PARALLEL_HPP_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace roadpred
{

/// Runs fn(begin, end) over contiguous chunks of [0, n) on up to
/// max_threads threads (hardware concurrency when 0). Callers keep results
/// deterministic by writing to preallocated per-index slots. The first
/// exception thrown by any chunk is rethrown on the calling thread.
template <typename Fn>
void parallel_for_chunks(std::size_t n, Fn && fn, unsigned max_threads = 0)
{
  if (n == 0) {
    return;
  }
  unsigned threads = max_threads != 0 ? max_threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));

  if (threads == 1) {
    fn(std::size_t{0}, n);
    return;
  }

  const std::size_t chunk = (n + threads - 1) / threads;
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = std::min(n, static_cast<std::size_t>(t) * chunk);
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) {
      break;
    }
    workers.emplace_back([&fn, &errors, t, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto & worker : workers) {
    worker.join();
  }
  for (const auto & error : errors) {
    if (error) {
      std::rethrow_exception(error);
    }
  }
}

}  // namespace roadpred

#endif  // ROADPRED_PARALLEL_HPP_
