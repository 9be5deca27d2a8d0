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
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "dpanova/csv.hpp"
#include "dpanova/report.hpp"
#include "dpanova/rng.hpp"
#include "support/random_datasets.hpp"

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using dpanova::format_double;
using dpanova::parse_csv;

dpanova::Dataset parse(const std::string& text) {
  std::istringstream in(text);
  return parse_csv(in);
}

TEST(ParseCsv, BasicFile) {
  const auto d = parse("group,value\nA,0.2\nA,0.4\nB,0.6\nB,0.8\n");
  EXPECT_EQ(d.k(), 2);
  EXPECT_EQ(d.n(), 4);
  EXPECT_EQ(d.groups()[0].label, "A");
  EXPECT_EQ(d.groups()[0].values, (std::vector<double>{0.2, 0.4}));
}

TEST(ParseCsv, NoTrailingNewlineAndCrLf) {
  const auto d = parse("group,value\r\nA,0.2\r\nA,0.4\r\nB,0.6");
  EXPECT_EQ(d.n(), 3);
}

TEST(ParseCsv, GroupOrderIsFirstAppearance) {
  const auto d = parse("group,value\nz,0.1\na,0.2\nz,0.3\n");
  EXPECT_EQ(d.groups()[0].label, "z");
  EXPECT_EQ(d.groups()[1].label, "a");
}

TEST(ParseCsv, RejectsBadHeader) {
  EXPECT_THROW(parse("value,group\nA,0.2\n"), dpanova::MalformedHeader);
  EXPECT_THROW(parse(""), dpanova::MalformedHeader);
  EXPECT_THROW(parse("group;value\n"), dpanova::MalformedHeader);
}

TEST(ParseCsv, RejectsBadRowsWithLineNumbers) {
  try {
    parse("group,value\nA,abc\n");
    FAIL() << "expected MalformedRow";
  } catch (const dpanova::MalformedRow& e) {
    EXPECT_EQ(e.line(), 2);
  }
  try {
    parse("group,value\nA,0.2\nB\n");
    FAIL() << "expected MalformedRow";
  } catch (const dpanova::MalformedRow& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(parse("group,value\nA,0.2,0.3\n"), dpanova::MalformedRow);
  EXPECT_THROW(parse("group,value\n,0.2\n"), dpanova::MalformedRow);
  EXPECT_THROW(parse("group,value\nA,0.2\n\nB,0.3\n"), dpanova::MalformedRow);
  EXPECT_THROW(parse("group,value\nA,0.2e\n"), dpanova::MalformedRow);
}

TEST(ParseCsv, PropagatesValidationErrors) {
  EXPECT_THROW(parse("group,value\nA,1.5\nB,0.5\n"), dpanova::ValueOutOfRange);
  EXPECT_THROW(parse("group,value\nA,0.1\nA,0.2\n"), dpanova::TooFewGroups);
}

TEST(DatasetCsv, RoundTripIsLossless) {
  auto rng = dpanova::substream(71, {0});
  for (int i = 0; i < 50; ++i) {
    const auto d = testing_support::to_dataset(
        testing_support::random_rows(rng, 2, 5, 40));
    std::ostringstream out;
    dpanova::write_dataset_csv(out, d);
    const auto back = parse(out.str());
    ASSERT_EQ(back.k(), d.k());
    ASSERT_EQ(back.n(), d.n());
    for (std::size_t g = 0; g < d.groups().size(); ++g) {
      EXPECT_EQ(back.groups()[g].label, d.groups()[g].label);
      ASSERT_EQ(back.groups()[g].values.size(), d.groups()[g].values.size());
      for (std::size_t j = 0; j < d.groups()[g].values.size(); ++j) {
        EXPECT_EQ(back.groups()[g].values[j], d.groups()[g].values[j]);
      }
    }
  }
}

TEST(NumberFormatting, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(0.05), "0.05");
  for (const double v : {0.1, 1.0 / 3.0, 1e-7, 123456.789, 2.5e-12}) {
    const std::string s = format_double(v);
    EXPECT_EQ(dpanova::parse_double_strict(s, "value"), v);
  }
}

TEST(NumberFormatting, Epsilon) {
  EXPECT_EQ(dpanova::format_epsilon(kInf), "inf");
  EXPECT_EQ(dpanova::format_epsilon(1.0), "1");
  EXPECT_EQ(dpanova::format_epsilon(0.1), "0.1");
}

TEST(NumberFormatting, ParseEpsilon) {
  EXPECT_TRUE(std::isinf(dpanova::parse_epsilon("inf")));
  EXPECT_EQ(dpanova::parse_epsilon("0.5"), 0.5);
  EXPECT_THROW(dpanova::parse_epsilon("0"), dpanova::ValidationError);
  EXPECT_THROW(dpanova::parse_epsilon("-1"), dpanova::ValidationError);
  EXPECT_THROW(dpanova::parse_epsilon("banana"), dpanova::ValidationError);
}

TEST(PowerCsv, HeaderAndRows) {
  std::vector<dpanova::PowerCurvePoint> pts;
  pts.push_back({99, kInf, 1.0, 200});
  pts.push_back({99, 1.0, 0.135, 200});
  std::ostringstream out;
  dpanova::write_power_csv(out, pts);
  EXPECT_EQ(out.str(),
            "n,epsilon,reps,power\n"
            "99,inf,200,1\n"
            "99,1,200,0.135\n");
}

TEST(NulldistCsv, HeaderAndRows) {
  std::vector<dpanova::NullComparison> tables;
  tables.push_back({kInf, {1.5, 0.25}});
  tables.push_back({0.1, {-3.0}});
  std::ostringstream out;
  dpanova::write_nulldist_csv(out, tables);
  EXPECT_EQ(out.str(),
            "epsilon,f_hat\n"
            "inf,1.5\n"
            "inf,0.25\n"
            "0.1,-3\n");
}

dpanova::AnalysisReport sample_report() {
  dpanova::AnalysisReport r;
  r.ssa_hat = 0.7331;
  r.sse_hat = -2.25;
  r.f_hat = dpanova::f_ratio(r.ssa_hat, r.sse_hat, 100, 3);
  r.p_value = 0.42;
  r.sigma2_used = 1e-6;
  r.epsilon = 1.0;
  r.n = 100;
  r.k = 3;
  r.null_sims = 1000;
  r.seed = 7;
  return r;
}

TEST(Report, KeyOrderIsStable) {
  const auto j = dpanova::to_json(sample_report());
  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  const std::vector<std::string> want = {
      "ssa_hat", "sse_hat",   "f_hat", "p_value",   "sigma2_used", "epsilon",
      "n",       "k",         "null_sims", "seed",  "tool_version"};
  EXPECT_EQ(keys, want);
}

TEST(Report, EpsilonSerializesAsInfString) {
  auto r = sample_report();
  r.epsilon = kInf;
  const auto j = dpanova::to_json(r);
  EXPECT_TRUE(j.at("epsilon").is_string());
  EXPECT_EQ(j.at("epsilon").get<std::string>(), "inf");
  const auto back = dpanova::report_from_json(j);
  EXPECT_TRUE(std::isinf(back.epsilon));
}

TEST(Report, RoundTripPreservesEveryField) {
  auto rng = dpanova::substream(72, {0});
  for (int i = 0; i < 100; ++i) {
    dpanova::AnalysisReport r;
    r.ssa_hat = dpanova::uniform_open01(rng) * 20.0 - 10.0;
    r.sse_hat = dpanova::uniform_open01(rng) * 20.0 - 10.0;
    r.n = 50 + i;
    r.k = 3;
    r.f_hat = dpanova::f_ratio(r.ssa_hat, r.sse_hat, r.n, r.k);
    r.p_value = dpanova::uniform_open01(rng);
    r.sigma2_used = dpanova::uniform_open01(rng);
    r.epsilon = (i % 2 == 0) ? kInf : dpanova::uniform_open01(rng);
    r.null_sims = 1000;
    r.seed = rng.next();

    const std::string text = dpanova::to_json(r).dump();
    const auto back =
        dpanova::report_from_json(nlohmann::ordered_json::parse(text));
    EXPECT_EQ(back.ssa_hat, r.ssa_hat);
    EXPECT_EQ(back.sse_hat, r.sse_hat);
    EXPECT_EQ(back.f_hat, r.f_hat);
    EXPECT_EQ(back.p_value, r.p_value);
    EXPECT_EQ(back.sigma2_used, r.sigma2_used);
    EXPECT_EQ(back.epsilon, r.epsilon);
    EXPECT_EQ(back.n, r.n);
    EXPECT_EQ(back.k, r.k);
    EXPECT_EQ(back.null_sims, r.null_sims);
    EXPECT_EQ(back.seed, r.seed);
    EXPECT_EQ(back.tool_version, r.tool_version);
    // The released F always reassembles from the released components.
    EXPECT_EQ(back.f_hat,
              dpanova::f_ratio(back.ssa_hat, back.sse_hat, back.n, back.k));
  }
}

TEST(Report, NonFiniteStatsSurviveRoundTrip) {
  auto r = sample_report();
  r.sse_hat = 0.0;
  r.f_hat = kInf;
  const std::string text = dpanova::to_json(r).dump();
  const auto back =
      dpanova::report_from_json(nlohmann::ordered_json::parse(text));
  EXPECT_TRUE(std::isinf(back.f_hat));
  EXPECT_GT(back.f_hat, 0.0);
}

}  // namespace
