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

// Command-line front end.  Four commands:
//
//   analyze   private ANOVA release + noise-aware p-value for a CSV dataset
//   power     Monte-Carlo power table over an (n, epsilon) grid
//   nulldist  null samples of the noisy F statistic for plotting
//   synth     synthetic grouped dataset in the analyze input format
//
// Exit codes: 0 success, 2 rejected input, 1 internal failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dpanova/dpanova.hpp"

namespace {

using dpanova::ValidationError;

// Substream context words for the analyze command; the library picks its
// own for everything downstream of these.
constexpr std::uint64_t kStreamAnalyzeNoise = 0x616e6c7a6e6f697aULL;  // "anlznoiz"
constexpr std::uint64_t kStreamAnalyzeNull = 0x616e6c7a6e756c6cULL;   // "anlznull"
constexpr std::uint64_t kStreamSynth = 0x73796e7468646174ULL;         // "synthdat"

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

dpanova::EffectSpec resolve_effect(const std::string& preset,
                                   const std::vector<double>& means,
                                   double sd, bool sd_given) {
  if (!preset.empty()) {
    if (preset == "paper-3group") return dpanova::three_group_preset();
    if (preset == "paper-6group") return dpanova::six_group_preset();
    throw ValidationError("unknown preset '" + preset +
                          "' (expected paper-3group or paper-6group)");
  }
  if (means.empty() || !sd_given) {
    throw ValidationError("need --preset, or both --means and --sd");
  }
  dpanova::EffectSpec effect{means, sd};
  dpanova::validate_effect(effect);
  return effect;
}

dpanova::VarianceMode resolve_variance_mode(const std::string& text) {
  if (text == "estimated") return dpanova::VarianceMode::estimated();
  if (text.rfind("known:", 0) == 0) {
    const double sigma2 =
        dpanova::parse_double_strict(text.substr(6), "known variance");
    return dpanova::VarianceMode::known(sigma2);
  }
  throw ValidationError("variance mode must be 'estimated' or 'known:VALUE', got '" +
                        text + "'");
}

std::vector<double> resolve_epsilons(const std::vector<std::string>& texts) {
  std::vector<double> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(dpanova::parse_epsilon(t));
  return out;
}

// Runs `emit` against --out if given, stdout otherwise.
template <typename Emit>
void with_output(const std::string& out_path, Emit&& emit) {
  if (out_path.empty()) {
    emit(std::cout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ValidationError("cannot open output file '" + out_path + "'");
  emit(out);
  if (!out) throw ValidationError("failed writing output file '" + out_path + "'");
}

struct AnalyzeArgs {
  std::string input = "-";
  std::string epsilon;
  std::optional<std::uint64_t> seed;
  std::int64_t null_sims = 100000;
  std::optional<int> expected_k;
  int threads = 0;
  bool smooth_p = false;
};

int run_analyze(const AnalyzeArgs& a) {
  const double epsilon = dpanova::parse_epsilon(a.epsilon);

  std::optional<dpanova::Dataset> data;
  if (a.input == "-") {
    data = dpanova::parse_csv(std::cin);
  } else {
    std::ifstream in(a.input, std::ios::binary);
    if (!in) throw ValidationError("cannot open input file '" + a.input + "'");
    data = dpanova::parse_csv(in);
  }
  if (a.expected_k && data->k() != *a.expected_k) {
    throw ValidationError("dataset has " + std::to_string(data->k()) +
                          " groups, expected " + std::to_string(*a.expected_k));
  }
  if (a.null_sims < 1) throw ValidationError("null sims must be at least 1");

  const std::uint64_t seed = a.seed ? *a.seed : entropy_seed();

  // The one and only mechanism invocation in this process; the p-value
  // stage below consumes released fields only.
  auto noise_rng = dpanova::substream(seed, {kStreamAnalyzeNoise});
  const dpanova::PrivateAnovaResult released =
      dpanova::private_anova(*data, dpanova::PrivacyParams(epsilon), noise_rng);

  const dpanova::PValueResult pv = dpanova::p_value_for_result(
      released, a.null_sims, dpanova::derive_seed(seed, {kStreamAnalyzeNull}),
      a.threads, a.smooth_p);

  const dpanova::AnalysisReport report =
      dpanova::make_report(released, pv, seed);
  std::cout << dpanova::to_json(report).dump(2) << '\n';
  return 0;
}

struct PowerArgs {
  std::string preset;
  std::vector<double> means;
  double sd = 0.0;
  bool sd_given = false;
  std::vector<std::int64_t> n_grid;
  std::vector<std::string> epsilons;
  std::int64_t reps = 1000;
  double alpha = 0.05;
  std::int64_t null_sims = 100000;
  std::string variance_mode = "estimated";
  std::uint64_t seed = 0;
  std::string out;
  int threads = 0;
};

int run_power(const PowerArgs& a) {
  dpanova::PowerConfig cfg;
  cfg.effect = resolve_effect(a.preset, a.means, a.sd, a.sd_given);
  cfg.n_grid = a.n_grid;
  cfg.epsilons = resolve_epsilons(a.epsilons);
  cfg.reps = a.reps;
  cfg.alpha = a.alpha;
  cfg.null_sims = a.null_sims;
  cfg.variance_mode = resolve_variance_mode(a.variance_mode);
  cfg.seed = a.seed;
  dpanova::validate_power_config(cfg);

  const std::vector<dpanova::PowerCurvePoint> points =
      dpanova::power_curve(cfg, a.threads);
  with_output(a.out, [&](std::ostream& os) {
    dpanova::write_power_csv(os, points);
  });
  return 0;
}

struct NulldistArgs {
  std::int64_t n = 0;
  int k = 0;
  double sigma2 = 0.0;
  std::vector<std::string> epsilons;
  std::int64_t sims = 0;
  std::uint64_t seed = 0;
  std::optional<double> threshold;
  std::string out;
  int threads = 0;
};

int run_nulldist(const NulldistArgs& a) {
  const std::vector<double> epsilons = resolve_epsilons(a.epsilons);
  const std::vector<dpanova::NullComparison> tables =
      dpanova::export_null_comparison(a.n, a.k, a.sigma2, epsilons, a.sims,
                                      a.seed, a.threads);
  with_output(a.out, [&](std::ostream& os) {
    dpanova::write_nulldist_csv(os, tables);
  });
  if (a.threshold) {
    for (const auto& t : tables) {
      std::int64_t at_or_above = 0;
      for (const double d : t.draws) {
        if (d >= *a.threshold) ++at_or_above;
      }
      const double fraction = static_cast<double>(at_or_above) /
                              static_cast<double>(t.draws.size());
      std::cerr << "epsilon=" << dpanova::format_epsilon(t.epsilon)
                << " threshold=" << dpanova::format_double(*a.threshold)
                << " fraction_at_or_above=" << dpanova::format_double(fraction)
                << '\n';
    }
  }
  return 0;
}

struct SynthArgs {
  std::string preset;
  std::vector<double> means;
  double sd = 0.0;
  bool sd_given = false;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_synth(const SynthArgs& a) {
  const dpanova::EffectSpec effect =
      resolve_effect(a.preset, a.means, a.sd, a.sd_given);
  auto rng = dpanova::substream(a.seed, {kStreamSynth});
  const dpanova::Dataset d = dpanova::generate_dataset(effect, a.n, rng);
  with_output(a.out, [&](std::ostream& os) {
    dpanova::write_dataset_csv(os, d);
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private one-way ANOVA"};
  app.set_version_flag("--version", dpanova::kToolVersion);
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand(
      "analyze", "Private ANOVA release plus Monte-Carlo p-value for a CSV dataset");
  analyze->add_option("--input", analyze_args.input,
                      "Input CSV path, or - for stdin");
  analyze->add_option("--epsilon", analyze_args.epsilon,
                      "Privacy budget (positive number or inf)")
      ->required();
  analyze->add_option("--seed", analyze_args.seed,
                      "RNG seed; omitted means entropy-seeded and echoed in the report");
  analyze->add_option("--null-sims", analyze_args.null_sims,
                      "Null-distribution draws for the p-value");
  analyze->add_option("--expected-k", analyze_args.expected_k,
                      "Assert the dataset has exactly this many groups");
  analyze->add_option("--threads", analyze_args.threads,
                      "Worker threads for the null simulation (0 = auto)");
  analyze->add_flag("--smooth-p", analyze_args.smooth_p,
                    "Use (count+1)/(sims+1) instead of the plain fraction");

  PowerArgs power_args;
  auto* power = app.add_subcommand(
      "power", "Monte-Carlo power table over an (n, epsilon) grid");
  power->add_option("--preset", power_args.preset,
                    "Effect preset: paper-3group or paper-6group");
  power->add_option("--means", power_args.means,
                    "Per-group means in [0,1] (comma separated)")
      ->delimiter(',');
  auto* power_sd =
      power->add_option("--sd", power_args.sd, "Common group standard deviation");
  power->add_option("--n-grid", power_args.n_grid,
                    "Total sample sizes (comma separated)")
      ->delimiter(',')
      ->required();
  power->add_option("--epsilons", power_args.epsilons,
                    "Privacy budgets, numbers or inf (comma separated)")
      ->delimiter(',')
      ->required();
  power->add_option("--reps", power_args.reps, "Replicates per grid point");
  power->add_option("--alpha", power_args.alpha, "Significance level");
  power->add_option("--null-sims", power_args.null_sims,
                    "Null draws per replicate p-value");
  power->add_option("--variance-mode", power_args.variance_mode,
                    "estimated, or known:VALUE for a fixed true variance");
  power->add_option("--seed", power_args.seed, "RNG seed")->required();
  power->add_option("--out", power_args.out, "Output CSV path (default stdout)");
  power->add_option("--threads", power_args.threads,
                    "Worker threads (0 = auto)");

  NulldistArgs nulldist_args;
  auto* nulldist = app.add_subcommand(
      "nulldist", "Null samples of the noisy F statistic, one row per draw");
  nulldist->add_option("--n", nulldist_args.n, "Total sample size")->required();
  nulldist->add_option("--k", nulldist_args.k, "Group count")->required();
  nulldist->add_option("--sigma2", nulldist_args.sigma2,
                       "Null variance for the chi-squared terms")
      ->required();
  nulldist->add_option("--epsilons", nulldist_args.epsilons,
                       "Privacy budgets, numbers or inf (comma separated)")
      ->delimiter(',')
      ->required();
  nulldist->add_option("--sims", nulldist_args.sims, "Draws per epsilon")
      ->required();
  nulldist->add_option("--seed", nulldist_args.seed, "RNG seed")->required();
  nulldist->add_option("--threshold", nulldist_args.threshold,
                       "Also report the fraction of draws at or above this value");
  nulldist->add_option("--out", nulldist_args.out,
                       "Output CSV path (default stdout)");
  nulldist->add_option("--threads", nulldist_args.threads,
                       "Worker threads (0 = auto)");

  SynthArgs synth_args;
  auto* synth = app.add_subcommand(
      "synth", "Synthetic grouped dataset in the analyze input format");
  synth->add_option("--preset", synth_args.preset,
                    "Effect preset: paper-3group or paper-6group");
  synth->add_option("--means", synth_args.means,
                    "Per-group means in [0,1] (comma separated)")
      ->delimiter(',');
  auto* synth_sd =
      synth->add_option("--sd", synth_args.sd, "Common group standard deviation");
  synth->add_option("--n", synth_args.n, "Total sample size")->required();
  synth->add_option("--seed", synth_args.seed, "RNG seed")->required();
  synth->add_option("--out", synth_args.out, "Output CSV path (default stdout)");

  try {
    app.parse(argc, argv);
    power_args.sd_given = power_sd->count() > 0;
    synth_args.sd_given = synth_sd->count() > 0;
    if (analyze->parsed()) return run_analyze(analyze_args);
    if (power->parsed()) return run_power(power_args);
    if (nulldist->parsed()) return run_nulldist(nulldist_args);
    if (synth->parsed()) return run_synth(synth_args);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
