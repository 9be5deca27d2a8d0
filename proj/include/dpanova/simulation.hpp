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
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "dpanova/dataset.hpp"
#include "dpanova/errors.hpp"
#include "dpanova/mechanism.hpp"
#include "dpanova/null_dist.hpp"
#include "dpanova/parallel.hpp"
#include "dpanova/rng.hpp"

namespace dpanova {

// Synthetic-data description: one mean per group plus a shared standard
// deviation.  Values are drawn normal and clamped into [0,1].
struct EffectSpec {
  std::vector<double> group_means;
  double group_sd = 0.0;

  int k() const { return static_cast<int>(group_means.size()); }
};

inline void validate_effect(const EffectSpec& e) {
  if (e.group_means.size() < 2) {
    throw TooFewGroups("effect needs at least 2 group means");
  }
  for (const double m : e.group_means) {
    if (!(m >= 0.0 && m <= 1.0)) {
      throw ValueOutOfRange("group mean " + std::to_string(m) +
                            " is outside [0, 1]");
    }
  }
  if (!(e.group_sd > 0.0) || std::isinf(e.group_sd)) {
    throw ValidationError("group sd must be positive and finite");
  }
}

// The two built-in benchmark settings: a three-group design with
// well-separated means, and a six-group design with a smaller spread
// that needs more data for the same power.
inline EffectSpec three_group_preset() {
  return EffectSpec{{0.35, 0.5, 0.65}, 0.15};
}

inline EffectSpec six_group_preset() {
  return EffectSpec{{0.4, 0.45, 0.5, 0.5, 0.5, 0.6}, 0.2};
}

// Normal(mean, sd) clamped into [0,1].  Truncation by projection keeps
// the generated row count exact; the clamp mode is visible to consumers
// through documentation rather than resampling semantics.
template <typename Rng>
double sample_truncated_normal(Rng& rng, double mean, double sd) {
  return std::clamp(mean + sd * sample_standard_normal(rng), 0.0, 1.0);
}

// n rows split across the effect's groups as evenly as possible; when k
// does not divide n the first (n mod k) groups take one extra row.
// Labels are g1..gk in group order.
template <typename Rng>
Dataset generate_dataset(const EffectSpec& effect, std::int64_t n, Rng& rng) {
  validate_effect(effect);
  const int k = effect.k();
  if (n <= k) {
    throw DegenerateSize("need n > k, got n=" + std::to_string(n) +
                         " with k=" + std::to_string(k));
  }
  const std::int64_t base = n / k;
  const std::int64_t extra = n % k;
  std::vector<Group> groups;
  groups.reserve(k);
  for (int i = 0; i < k; ++i) {
    const std::int64_t size = base + (i < extra ? 1 : 0);
    Group g;
    g.label = "g" + std::to_string(i + 1);
    g.values.reserve(static_cast<std::size_t>(size));
    for (std::int64_t j = 0; j < size; ++j) {
      g.values.push_back(
          sample_truncated_normal(rng, effect.group_means[i], effect.group_sd));
    }
    groups.push_back(std::move(g));
  }
  return validate_dataset(std::move(groups));
}

// How the null-simulation variance is chosen per replicate: estimated
// from the released SSE-hat (the deployable pipeline) or fixed to a known
// true value (an experimental upper bound on achievable power).
struct VarianceMode {
  bool use_known = false;
  double known_sigma2 = 0.0;

  static VarianceMode estimated() { return {}; }

  static VarianceMode known(double sigma2) {
    if (!(sigma2 > 0.0) || std::isinf(sigma2)) {
      throw ValidationError("known variance must be positive and finite");
    }
    return {true, sigma2};
  }
};

// One end-to-end replicate: generate data, run the private release, and
// convert F-hat to a p-value.  Consumes the generator in a fixed order
// (null-simulation seed, then data, then mechanism noise), so a given
// generator state determines the p-value exactly.
template <typename Rng>
double run_replicate(const EffectSpec& effect, std::int64_t n, double epsilon,
                     const VarianceMode& mode, std::int64_t null_sims,
                     Rng& rng) {
  const std::uint64_t null_seed = rng.next();
  const Dataset d = generate_dataset(effect, n, rng);
  const PrivateAnovaResult res = private_anova(d, PrivacyParams(epsilon), rng);
  if (mode.use_known) {
    return p_value_with_sigma2(res, mode.known_sigma2, null_sims, null_seed,
                               /*threads=*/1)
        .p;
  }
  return p_value_for_result(res, null_sims, null_seed, /*threads=*/1).p;
}

struct PowerConfig {
  EffectSpec effect;
  std::vector<std::int64_t> n_grid;
  std::vector<double> epsilons;
  std::int64_t reps = 1000;
  double alpha = 0.05;
  std::int64_t null_sims = 100000;
  VarianceMode variance_mode;
  std::uint64_t seed = 0;
};

struct PowerCurvePoint {
  std::int64_t n = 0;
  double epsilon = 0.0;
  double power = 0.0;
  std::int64_t reps = 0;
};

inline void validate_power_config(const PowerConfig& cfg) {
  validate_effect(cfg.effect);
  if (cfg.n_grid.empty()) throw ValidationError("n grid is empty");
  for (const std::int64_t n : cfg.n_grid) {
    if (n <= cfg.effect.k()) {
      throw DegenerateSize("grid point n=" + std::to_string(n) +
                           " does not exceed k=" + std::to_string(cfg.effect.k()));
    }
  }
  if (cfg.epsilons.empty()) throw ValidationError("epsilon list is empty");
  for (const double e : cfg.epsilons) {
    if (std::isnan(e) || e <= 0.0) {
      throw ValidationError("epsilon must be positive");
    }
  }
  if (cfg.reps < 1) throw ValidationError("reps must be at least 1");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw ValidationError("alpha must lie in (0, 1)");
  }
  if (cfg.null_sims < 1) throw ValidationError("null sims must be at least 1");
  if (cfg.variance_mode.use_known) {
    VarianceMode::known(cfg.variance_mode.known_sigma2);
  }
}

inline constexpr std::uint64_t kStreamReplicate = 0x706f776572726570ULL;  // "powerrep"

// Power at one (n, epsilon) grid point: the fraction of reps replicates
// with p < alpha.  Replicate r runs on the substream derived from
// (seed, n, epsilon, r), which makes the estimate independent of how
// replicates are scheduled across threads.
inline PowerCurvePoint power_point(const PowerConfig& cfg, std::int64_t n,
                                   double epsilon, int threads = 0) {
  validate_power_config(cfg);
  std::vector<double> pvals(static_cast<std::size_t>(cfg.reps));
  parallel_for(cfg.reps, threads, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t r = begin; r < end; ++r) {
      auto rng = substream(cfg.seed,
                           {kStreamReplicate, static_cast<std::uint64_t>(n),
                            double_bits(epsilon), static_cast<std::uint64_t>(r)});
      pvals[static_cast<std::size_t>(r)] = run_replicate(
          cfg.effect, n, epsilon, cfg.variance_mode, cfg.null_sims, rng);
    }
  });
  std::int64_t significant = 0;
  for (const double p : pvals) {
    if (p < cfg.alpha) ++significant;
  }
  PowerCurvePoint out;
  out.n = n;
  out.epsilon = epsilon;
  out.power = static_cast<double>(significant) / static_cast<double>(cfg.reps);
  out.reps = cfg.reps;
  return out;
}

// One point per (n, epsilon) pair, n-major in grid order.
inline std::vector<PowerCurvePoint> power_curve(const PowerConfig& cfg,
                                                int threads = 0) {
  validate_power_config(cfg);
  std::vector<PowerCurvePoint> points;
  points.reserve(cfg.n_grid.size() * cfg.epsilons.size());
  for (const std::int64_t n : cfg.n_grid) {
    for (const double eps : cfg.epsilons) {
      points.push_back(power_point(cfg, n, eps, threads));
    }
  }
  return points;
}

// Logarithmic default grid from 10 to max_n, each base value rounded down
// to a multiple of k (never below 2k) so groups stay balanced.
inline std::vector<std::int64_t> default_n_grid(int k,
                                               std::int64_t max_n = 1000000) {
  static constexpr std::int64_t kBases[] = {10,    30,     100,    300,
                                            1000,  3000,   10000,  30000,
                                            100000, 300000, 1000000};
  std::vector<std::int64_t> grid;
  for (const std::int64_t base : kBases) {
    if (base > max_n) break;
    const std::int64_t rounded =
        std::max<std::int64_t>(base / k, 2) * static_cast<std::int64_t>(k);
    if (grid.empty() || rounded != grid.back()) grid.push_back(rounded);
  }
  return grid;
}

struct NullComparison {
  double epsilon = 0.0;
  std::vector<double> draws;
};

inline constexpr std::uint64_t kStreamNullExport = 0x6e756c6c65787074ULL;  // "nullexpt"

// Null samples of F-hat for each requested epsilon at a common
// (n, k, sigma2), for external plotting of how privacy noise spreads the
// distribution relative to the classical one.  Each epsilon gets its own
// derived seed so the per-epsilon samples are independent.
inline std::vector<NullComparison> export_null_comparison(
    std::int64_t n, int k, double sigma2, std::span<const double> epsilons,
    std::int64_t sims, std::uint64_t seed, int threads = 0) {
  if (epsilons.empty()) throw ValidationError("epsilon list is empty");
  std::vector<NullComparison> out;
  out.reserve(epsilons.size());
  for (const double eps : epsilons) {
    NullConfig c;
    c.n = n;
    c.k = k;
    c.epsilon = eps;
    c.sigma2 = sigma2;
    c.sims = sims;
    const std::uint64_t eps_seed =
        derive_seed(seed, {kStreamNullExport, double_bits(eps)});
    out.push_back(NullComparison{eps, null_distribution(c, eps_seed, threads)});
  }
  return out;
}

}  // namespace dpanova
