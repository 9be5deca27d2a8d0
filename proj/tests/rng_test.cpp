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

#include <cmath>
#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "dpanova/rng.hpp"

namespace {

using dpanova::derive_seed;
using dpanova::sample_standard_normal;
using dpanova::substream;
using dpanova::uniform_open01;
using dpanova::Xoshiro256pp;

TEST(Engine, SameSeedSameSequence) {
  Xoshiro256pp a(42);
  Xoshiro256pp b(42);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(a.next(), b.next());
  }
}

TEST(Engine, DifferentSeedsDiverge) {
  Xoshiro256pp a(42);
  Xoshiro256pp b(43);
  int equal = 0;
  for (int i = 0; i < 64; ++i) {
    if (a.next() == b.next()) ++equal;
  }
  EXPECT_EQ(equal, 0);
}

TEST(DeriveSeed, ContextWordsMatter) {
  EXPECT_NE(derive_seed(1, {1}), derive_seed(1, {2}));
  EXPECT_NE(derive_seed(1, {1, 2}), derive_seed(1, {2, 1}));
  EXPECT_NE(derive_seed(1, {1}), derive_seed(2, {1}));
  EXPECT_EQ(derive_seed(9, {3, 4}), derive_seed(9, {3, 4}));
}

TEST(DeriveSeed, SubstreamsDiverge) {
  auto a = substream(5, {100});
  auto b = substream(5, {101});
  int equal = 0;
  for (int i = 0; i < 64; ++i) {
    if (a.next() == b.next()) ++equal;
  }
  EXPECT_EQ(equal, 0);
}

TEST(UniformOpen01, StaysStrictlyInside) {
  auto rng = substream(11, {0});
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < 1000000; ++i) {
    const double u = uniform_open01(rng);
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  // With a million draws the extremes should approach the boundary.
  EXPECT_LT(lo, 1e-4);
  EXPECT_GT(hi, 1.0 - 1e-4);
}

TEST(UniformOpen01, MeanAndVariance) {
  auto rng = substream(12, {0});
  const int n = 1000000;
  double sum = 0.0;
  double sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = uniform_open01(rng);
    sum += u;
    sumsq += u * u;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  EXPECT_NEAR(mean, 0.5, 0.001);        // SE ~ 0.00029
  EXPECT_NEAR(var, 1.0 / 12.0, 0.001);  // ~ 0.0833
}

TEST(StandardNormal, MomentsAndTails) {
  auto rng = substream(13, {0});
  const int n = 1000000;
  double sum = 0.0;
  double sumsq = 0.0;
  int below_zero = 0;
  int below_1645 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = sample_standard_normal(rng);
    sum += z;
    sumsq += z * z;
    if (z < 0.0) ++below_zero;
    if (z < 1.6449) ++below_1645;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  EXPECT_NEAR(mean, 0.0, 0.004);  // SE = 0.001
  EXPECT_NEAR(var, 1.0, 0.01);
  EXPECT_NEAR(static_cast<double>(below_zero) / n, 0.5, 0.002);
  EXPECT_NEAR(static_cast<double>(below_1645) / n, 0.95, 0.002);
}

TEST(StandardNormal, Deterministic) {
  auto a = substream(14, {0});
  auto b = substream(14, {0});
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(sample_standard_normal(a), sample_standard_normal(b));
  }
}

TEST(DoubleBits, DistinguishesValues) {
  EXPECT_NE(dpanova::double_bits(1.0), dpanova::double_bits(0.1));
  EXPECT_NE(dpanova::double_bits(0.0), dpanova::double_bits(-0.0));
  EXPECT_EQ(dpanova::double_bits(0.3), dpanova::double_bits(0.3));
}

}  // namespace
