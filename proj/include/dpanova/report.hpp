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
#include <string>

#include <json.hpp>

#include "dpanova/mechanism.hpp"
#include "dpanova/null_dist.hpp"
#include "dpanova/version.hpp"

namespace dpanova {

// Everything one analysis run releases, in the shape it is serialized.
struct AnalysisReport {
  double ssa_hat = 0.0;
  double sse_hat = 0.0;
  double f_hat = 0.0;
  double p_value = 0.0;
  double sigma2_used = 0.0;
  double epsilon = 0.0;
  std::int64_t n = 0;
  int k = 0;
  std::int64_t null_sims = 0;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
};

inline AnalysisReport make_report(const PrivateAnovaResult& r,
                                  const PValueResult& pv, std::uint64_t seed) {
  AnalysisReport rep;
  rep.ssa_hat = r.ssa_hat;
  rep.sse_hat = r.sse_hat;
  rep.f_hat = r.f_hat;
  rep.p_value = pv.p;
  rep.sigma2_used = pv.sigma2_used;
  rep.epsilon = r.epsilon;
  rep.n = r.n;
  rep.k = r.k;
  rep.null_sims = pv.sims;
  rep.seed = seed;
  return rep;
}

namespace detail {

// JSON has no literal for non-finite numbers; encode them as strings so
// the report round-trips losslessly even in degenerate cases.
inline nlohmann::ordered_json json_real(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0.0 ? "inf" : "-inf";
}

inline double real_from_json(const nlohmann::ordered_json& j) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw ValidationError("unrecognized numeric string '" + s + "'");
  }
  return j.get<double>();
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const AnalysisReport& r) {
  nlohmann::ordered_json j;
  j["ssa_hat"] = detail::json_real(r.ssa_hat);
  j["sse_hat"] = detail::json_real(r.sse_hat);
  j["f_hat"] = detail::json_real(r.f_hat);
  j["p_value"] = r.p_value;
  j["sigma2_used"] = r.sigma2_used;
  j["epsilon"] = detail::json_real(r.epsilon);
  j["n"] = r.n;
  j["k"] = r.k;
  j["null_sims"] = r.null_sims;
  j["seed"] = r.seed;
  j["tool_version"] = r.tool_version;
  return j;
}

inline AnalysisReport report_from_json(const nlohmann::ordered_json& j) {
  AnalysisReport r;
  r.ssa_hat = detail::real_from_json(j.at("ssa_hat"));
  r.sse_hat = detail::real_from_json(j.at("sse_hat"));
  r.f_hat = detail::real_from_json(j.at("f_hat"));
  r.p_value = j.at("p_value").get<double>();
  r.sigma2_used = j.at("sigma2_used").get<double>();
  r.epsilon = detail::real_from_json(j.at("epsilon"));
  r.n = j.at("n").get<std::int64_t>();
  r.k = j.at("k").get<int>();
  r.null_sims = j.at("null_sims").get<std::int64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.tool_version = j.at("tool_version").get<std::string>();
  return r;
}

}  // namespace dpanova
