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

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace dpanova {

// Exact floating-point accumulator (Shewchuk's algorithm, same scheme as
// Python's math.fsum).  The running total is kept as a list of
// non-overlapping partials whose mathematical sum is exact, so value()
// returns the correctly rounded sum of everything fed in.
//
// Correct rounding buys more than accuracy: the result is identical no
// matter the order terms arrive in, which keeps sums of squares bitwise
// reproducible under row permutations and group reorderings.
class ExactSum {
 public:
  ExactSum() { partials_.reserve(16); }

  void add(double x) {
    std::size_t used = 0;
    for (double y : partials_) {
      if (std::fabs(x) < std::fabs(y)) {
        const double t = x;
        x = y;
        y = t;
      }
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0.0) partials_[used++] = lo;
      x = hi;
    }
    partials_.resize(used);
    partials_.push_back(x);
  }

  // Correctly rounded total of all terms added so far.
  double value() const {
    if (partials_.empty()) return 0.0;
    std::size_t i = partials_.size();
    double hi = partials_[--i];
    double lo = 0.0;
    while (i > 0) {
      const double x = hi;
      const double y = partials_[--i];
      hi = x + y;
      lo = y - (hi - x);
      if (lo != 0.0) break;
    }
    // Half-way case: if the truncated tail has the same sign as the
    // rounding residual, the total must round one ulp further.
    if (i > 0 && ((lo < 0.0 && partials_[i - 1] < 0.0) ||
                  (lo > 0.0 && partials_[i - 1] > 0.0))) {
      const double y = lo * 2.0;
      const double x = hi + y;
      if (y == x - hi) hi = x;
    }
    return hi;
  }

  void reset() { partials_.clear(); }

 private:
  std::vector<double> partials_;
};

inline double exact_sum(std::span<const double> xs) {
  ExactSum acc;
  for (const double x : xs) acc.add(x);
  return acc.value();
}

}  // namespace dpanova
