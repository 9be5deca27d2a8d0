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

#include <cstdint>
#include <optional>
#include <vector>

#include "dpanova/dataset.hpp"
#include "dpanova/summation.hpp"

namespace dpanova {

struct GroupStats {
  std::vector<double> group_means;
  double grand_mean = 0.0;
  std::vector<std::int64_t> group_sizes;
};

struct ExactAnova {
  double ssa = 0.0;
  double sse = 0.0;
  std::optional<double> f;  // empty when sse == 0
  int df_between = 0;
  std::int64_t df_within = 0;
};

inline GroupStats group_stats(const Dataset& d) {
  GroupStats s;
  s.group_means.reserve(d.groups().size());
  s.group_sizes.reserve(d.groups().size());
  ExactSum grand;
  for (const auto& g : d.groups()) {
    ExactSum acc;
    for (const double v : g.values) {
      acc.add(v);
      grand.add(v);
    }
    const auto ni = static_cast<std::int64_t>(g.values.size());
    s.group_means.push_back(acc.value() / static_cast<double>(ni));
    s.group_sizes.push_back(ni);
  }
  s.grand_mean = grand.value() / static_cast<double>(d.n());
  return s;
}

// Between-group sum of squares, sum over groups of n_i * (mean_i - grand)^2.
inline double compute_ssa(const Dataset&, const GroupStats& s) {
  ExactSum acc;
  for (std::size_t i = 0; i < s.group_means.size(); ++i) {
    const double dev = s.group_means[i] - s.grand_mean;
    acc.add(static_cast<double>(s.group_sizes[i]) * dev * dev);
  }
  return acc.value();
}

// Within-group sum of squares, sum over rows of (y - group mean)^2.
inline double compute_sse(const Dataset& d, const GroupStats& s) {
  ExactSum acc;
  for (std::size_t i = 0; i < d.groups().size(); ++i) {
    const double mean = s.group_means[i];
    for (const double v : d.groups()[i].values) {
      const double dev = v - mean;
      acc.add(dev * dev);
    }
  }
  return acc.value();
}

// The F ratio as a pure function of its four inputs.  Shared by the exact
// and noisy pipelines so that recomputing F from released components
// reproduces it bit for bit.
inline double f_ratio(double ssa, double sse, std::int64_t n, int k) {
  return (ssa / static_cast<double>(k - 1)) /
         (sse / static_cast<double>(n - k));
}

// Exact-pipeline F.  With sse exactly zero the statistic is undefined and
// the caller gets an empty optional instead of an infinity.
inline std::optional<double> compute_f(double ssa, double sse, std::int64_t n,
                                       int k) {
  if (sse == 0.0) return std::nullopt;
  return f_ratio(ssa, sse, n, k);
}

inline ExactAnova exact_anova(const Dataset& d) {
  const GroupStats s = group_stats(d);
  ExactAnova out;
  out.ssa = compute_ssa(d, s);
  out.sse = compute_sse(d, s);
  out.f = compute_f(out.ssa, out.sse, d.n(), d.k());
  out.df_between = d.k() - 1;
  out.df_within = d.n() - d.k();
  return out;
}

}  // namespace dpanova
