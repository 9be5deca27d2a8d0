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
#include <cstdint>
#include <span>
#include <vector>

#include "dpanova/anova.hpp"
#include "dpanova/errors.hpp"
#include "dpanova/mechanism.hpp"
#include "dpanova/parallel.hpp"
#include "dpanova/rng.hpp"

namespace dpanova {

// Null model for the noisy F statistic: under a common group mean and
// normal errors with variance sigma2, SSA ~ sigma2 * chisq(k-1) and
// SSE ~ sigma2 * chisq(n-k); the released statistic adds the mechanism's
// Laplace noise to each before taking the ratio.  Simulating this model
// and locating the observed F-hat in it yields a p-value that accounts
// for the privacy noise instead of pretending the classical F tables
// still apply.

struct NullConfig {
  std::int64_t n = 0;
  int k = 0;
  double epsilon = 0.0;
  double sigma2 = 0.0;
  std::int64_t sims = 100000;
};

inline void validate_null_config(const NullConfig& c) {
  if (c.k < 2) throw TooFewGroups("need k >= 2, got " + std::to_string(c.k));
  if (c.n <= c.k) {
    throw DegenerateSize("need n > k, got n=" + std::to_string(c.n) +
                         " with k=" + std::to_string(c.k));
  }
  if (std::isnan(c.epsilon) || c.epsilon <= 0.0) {
    throw ValidationError("epsilon must be positive");
  }
  if (!(c.sigma2 > 0.0) || std::isinf(c.sigma2)) {
    throw ValidationError("sigma2 must be positive and finite");
  }
  if (c.sims < 1) {
    throw ValidationError("sims must be at least 1, got " +
                          std::to_string(c.sims));
  }
}

struct PValueResult {
  double p = 0.0;
  double sigma2_used = 0.0;
  std::int64_t sims = 0;
  double f_observed = 0.0;
};

// Variance floor applied when the noisy SSE estimate of sigma^2 is
// nonpositive or tiny.  Data bounded in [0,1] can never have variance
// above 0.25, so 1e-6 is far below anything real while keeping the null
// model simulable.
inline constexpr double kSigma2Floor = 1e-6;

namespace detail {

// Marsaglia-Tsang rejection sampler for gamma(shape, 1), all shapes > 0.
// Shapes below 1 use the boost gamma(shape+1) * U^(1/shape).
template <typename Rng>
double sample_standard_gamma(Rng& rng, double shape) {
  if (shape < 1.0) {
    const double g = sample_standard_gamma(rng, shape + 1.0);
    const double u = uniform_open01(rng);
    return g * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = sample_standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open01(rng);
    const double xx = x * x;
    if (u < 1.0 - 0.0331 * xx * xx) return d * v;
    if (std::log(u) < 0.5 * xx + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace detail

template <typename Rng>
double sample_chi_squared(Rng& rng, std::int64_t df) {
  if (df < 1) throw ValidationError("df must be at least 1");
  return 2.0 * detail::sample_standard_gamma(rng, static_cast<double>(df) / 2.0);
}

// One draw from the null distribution of F-hat.  Draw order is fixed:
// SSA chi-squared, SSA noise, SSE chi-squared, SSE noise; the SSE pair is
// redrawn in the measure-zero event that it sums to exactly 0.  Negative
// sums are kept, so the ratio can be negative, matching the mechanism's
// unconditional release.
template <typename Rng>
double simulate_null_f_hat(const NullConfig& c, Rng& rng) {
  const double b_ssa = ssa_noise_scale(c.n, c.epsilon);
  const double b_sse = sse_noise_scale(c.epsilon);
  const double ssa_sim = c.sigma2 * sample_chi_squared(rng, c.k - 1) +
                         sample_laplace(rng, b_ssa);
  double sse_sim;
  do {
    sse_sim = c.sigma2 * sample_chi_squared(rng, c.n - c.k) +
              sample_laplace(rng, b_sse);
  } while (sse_sim == 0.0);
  return f_ratio(ssa_sim, sse_sim, c.n, c.k);
}

inline constexpr std::uint64_t kStreamNullDraw = 0x6e756c6c64726177ULL;  // "nulldraw"

// sims independent draws.  Every draw runs on its own substream keyed by
// (seed, index), so the returned list is identical no matter how many
// worker threads execute it; threads <= 0 picks the hardware default.
inline std::vector<double> null_distribution(const NullConfig& c,
                                             std::uint64_t seed,
                                             int threads = 0) {
  validate_null_config(c);
  std::vector<double> draws(static_cast<std::size_t>(c.sims));
  parallel_for(c.sims, threads, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t i = begin; i < end; ++i) {
      auto rng = substream(seed, {kStreamNullDraw, static_cast<std::uint64_t>(i)});
      draws[static_cast<std::size_t>(i)] = simulate_null_f_hat(c, rng);
    }
  });
  return draws;
}

// Fraction of the null sample weakly above the observed value.  "Above"
// counts ties, which is the conservative choice and immaterial for
// continuous draws.  smooth switches to (count+1)/(sims+1), off by
// default.
inline double p_value(double f_observed, std::span<const double> null_samples,
                      bool smooth = false) {
  if (null_samples.empty()) {
    throw EmptyNullSample("null sample list is empty");
  }
  std::int64_t count = 0;
  for (const double s : null_samples) {
    if (s >= f_observed) ++count;
  }
  const auto n = static_cast<std::int64_t>(null_samples.size());
  if (smooth) {
    return static_cast<double>(count + 1) / static_cast<double>(n + 1);
  }
  return static_cast<double>(count) / static_cast<double>(n);
}

// p-value for a released result with an explicitly supplied null variance
// (the known-variance experimental mode).  Touches only released fields,
// never the underlying data, so it is pure post-processing.
inline PValueResult p_value_with_sigma2(const PrivateAnovaResult& r,
                                        double sigma2, std::int64_t sims,
                                        std::uint64_t seed, int threads = 0,
                                        bool smooth = false) {
  NullConfig c;
  c.n = r.n;
  c.k = r.k;
  c.epsilon = r.epsilon;
  c.sigma2 = sigma2;
  c.sims = sims;
  const std::vector<double> draws = null_distribution(c, seed, threads);
  PValueResult out;
  out.p = p_value(r.f_hat, draws, smooth);
  out.sigma2_used = sigma2;
  out.sims = sims;
  out.f_observed = r.f_hat;
  return out;
}

// Standard mode: estimate the null variance from the released SSE-hat as
// sse_hat/(n-k), floored at kSigma2Floor since noise can push the
// estimate to zero or below.
inline PValueResult p_value_for_result(const PrivateAnovaResult& r,
                                       std::int64_t sims, std::uint64_t seed,
                                       int threads = 0, bool smooth = false) {
  const double estimate = r.sse_hat / static_cast<double>(r.n - r.k);
  const double sigma2 = std::fmax(estimate, kSigma2Floor);
  return p_value_with_sigma2(r, sigma2, sims, seed, threads, smooth);
}

}  // namespace dpanova
