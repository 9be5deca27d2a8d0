// Copyright 2026 The dpanova Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace dpanova {

// threads <= 0 means "ask the hardware".
inline int resolve_thread_count(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Splits [0, count) into contiguous chunks and runs body(begin, end) on
// each, using up to `threads` workers.  Bodies must not throw and must
// write to disjoint state (callers here fill distinct slots of a
// preallocated buffer).  Because every work item derives its own random
// substream from its index, the partition has no effect on results.
template <typename Body>
void parallel_for(std::int64_t count, int threads, Body&& body) {
  if (count <= 0) return;
  const int workers =
      static_cast<int>(std::min<std::int64_t>(resolve_thread_count(threads), count));
  if (workers <= 1) {
    body(std::int64_t{0}, count);
    return;
  }
  const std::int64_t chunk = count / workers;
  const std::int64_t extra = count % workers;
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  std::int64_t begin = 0;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t end = begin + chunk + (w < extra ? 1 : 0);
    if (w + 1 == workers) {
      body(begin, end);  // last chunk on the calling thread
    } else {
      pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
    begin = end;
  }
  for (auto& t : pool) t.join();
}

}  // namespace dpanova
