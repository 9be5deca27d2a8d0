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
#include <limits>

#include "dpanova/anova.hpp"
#include "dpanova/dataset.hpp"
#include "dpanova/errors.hpp"
#include "dpanova/rng.hpp"

namespace dpanova {

// Privacy budget for one release.  epsilon = +infinity is the supported
// non-private mode (zero noise); anything else must be strictly positive.
class PrivacyParams {
 public:
  explicit PrivacyParams(double epsilon) : epsilon_(epsilon) {
    if (std::isnan(epsilon) || epsilon <= 0.0) {
      throw ValidationError("epsilon must be positive");
    }
  }

  static PrivacyParams nonprivate() {
    return PrivacyParams(std::numeric_limits<double>::infinity());
  }

  double epsilon() const { return epsilon_; }
  bool is_nonprivate() const { return std::isinf(epsilon_); }

 private:
  double epsilon_;
};

// The within-group sum of squares changes by at most 7 when one row of a
// [0,1]-bounded dataset is replaced.
inline double sse_sensitivity() { return 7.0; }

// Bound on the change of the between-group sum of squares under a one-row
// replacement: 9 + 5/n.
inline double ssa_sensitivity(std::int64_t n) {
  if (n <= 0) throw NonPositiveN("n must be positive, got " + std::to_string(n));
  return 9.0 + 5.0 / static_cast<double>(n);
}

// The total budget is split evenly between the two released sums, so each
// half mechanism runs at epsilon/2.  epsilon = inf collapses both scales
// to exactly 0.
inline double ssa_noise_scale(std::int64_t n, double epsilon) {
  return ssa_sensitivity(n) / (epsilon / 2.0);
}

inline double sse_noise_scale(double epsilon) {
  return sse_sensitivity() / (epsilon / 2.0);
}

// Inverse CDF of the zero-centered Laplace distribution with scale b,
// evaluated at u in (0,1).  Written with log1p so draws near u = 0.5 keep
// full precision.
inline double laplace_inverse_cdf(double u, double b) {
  if (!(u > 0.0 && u < 1.0)) {
    throw UOutOfRange("u must lie strictly inside (0,1)");
  }
  if (b == 0.0) return 0.0;
  const double c = u - 0.5;
  const double mag = -b * std::log1p(-2.0 * std::fabs(c));
  return c < 0.0 ? -mag : (c > 0.0 ? mag : 0.0);
}

// One Laplace(b) variate by inversion.  b = 0 returns exactly 0 without
// consuming any randomness, so the non-private path stays bitwise equal to
// the exact pipeline.
template <typename Rng>
double sample_laplace(Rng& rng, double b) {
  if (b == 0.0) return 0.0;
  return laplace_inverse_cdf(uniform_open01(rng), b);
}

struct PrivateAnovaResult {
  double ssa_hat = 0.0;
  double sse_hat = 0.0;
  double f_hat = 0.0;
  double epsilon = 0.0;
  std::int64_t n = 0;
  int k = 0;
};

// The epsilon-differentially-private ANOVA release: perturb SSA and SSE
// with Laplace noise calibrated to their sensitivities at epsilon/2 each,
// then assemble F-hat from the noisy sums.  The SSA noise draw is consumed
// before the SSE draw, so a (seed, input) pair fully determines the output.
// F-hat is derived from the released hats alone; being post-processing, it
// costs no extra budget.
template <typename Rng>
PrivateAnovaResult private_anova(const Dataset& d, const PrivacyParams& p,
                                 Rng& rng) {
  const GroupStats s = group_stats(d);
  const double ssa = compute_ssa(d, s);
  const double sse = compute_sse(d, s);

  PrivateAnovaResult out;
  out.ssa_hat = ssa + sample_laplace(rng, ssa_noise_scale(d.n(), p.epsilon()));
  out.sse_hat = sse + sample_laplace(rng, sse_noise_scale(p.epsilon()));
  out.f_hat = f_ratio(out.ssa_hat, out.sse_hat, d.n(), d.k());
  out.epsilon = p.epsilon();
  out.n = d.n();
  out.k = d.k();
  return out;
}

}  // namespace dpanova
