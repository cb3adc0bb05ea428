// Copyright 2026 The prolearn Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PROLEARN_HARNESS_HPP_
#define PROLEARN_HARNESS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prolearn/evaluation.hpp"
#include "prolearn/learners.hpp"
#include "prolearn/task_model.hpp"

namespace prolearn {

enum class Protocol { kStreaming, kFrozen };
std::string_view to_string(Protocol p);

struct PhaseSpec {
  std::string name;
  GaussianClassTask task;

  friend bool operator==(const PhaseSpec&, const PhaseSpec&) = default;
};

struct RiskMode {
  bool monte_carlo = false;
  std::size_t mc_samples = 10000;

  friend bool operator==(const RiskMode&, const RiskMode&) = default;
};

// Fully resolved experiment description. See docs/config.md for the file
// format; every field below has a key of the same name.
struct ExperimentConfig {
  std::string scenario = "fig3a";  // fig3a | fig3b | constant | custom
  TimeStep period = 500;
  std::vector<PhaseSpec> phases;  // resolved from the scenario preset
  TimeStep horizon = 5000;        // streaming steps
  int samples_per_step = 1;
  std::vector<LearnerConfig> learners;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  Protocol protocol = Protocol::kStreaming;
  ProspectiveOptions evaluation;
  std::vector<TimeStep> t_prime_grid;
  RiskMode risk;
  std::string output_dir;
  int workers = 1;
  int plot_stride = 10;

  TaskSequence sequence() const;
  // Resolved config as JSON text; parse_config() of it yields *this.
  std::string to_json() const;

  friend bool operator==(const ExperimentConfig&,
                         const ExperimentConfig&) = default;
};

// Parses and validates JSON config text. Throws ConfigError with line and
// column for syntax errors, or naming the offending field otherwise.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig parse_config_file(const std::filesystem::path& path);

// Built-in reproduction presets ("fig3a", "fig3b").
ExperimentConfig preset_config(std::string_view name);

struct StreamingRun {
  std::string learner;
  std::uint64_t seed = 0;
  std::vector<double> risk;  // risk[t] for t = 0 .. horizon-1
  // Adaptive learner only.
  std::optional<TimeStep> period_estimate;
  std::optional<TimeStep> locked_at;
};

struct RunResult {
  ExperimentConfig config;
  std::vector<StreamingRun> runs;  // learner-major, then seed
  std::vector<ProspectiveReport> reports;
  double wall_seconds = 0.0;
  std::string version = PROLEARN_VERSION;

  // One trace holding every learner's entries for the given seed.
  RiskTrace trace_for_seed(std::uint64_t seed) const;
  // Runs of one learner in seed order.
  std::vector<const StreamingRun*> runs_for(std::string_view learner) const;
};

// Streaming protocol: the hypothesis at t is fit on samples before t and is
// scored on task_at(t); then the samples of step t are observed.
RunResult run_streaming(const ExperimentConfig& config);
// Frozen protocol: prospective_score (or sweep_t_bar) per learner.
RunResult run_learnability(const ExperimentConfig& config);

struct BandRow {
  TimeStep t = 0;
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
};

// Per-learner median and interquartile band over seeds, every plot_stride
// steps (t = 0, stride, 2 stride, ...).
std::vector<BandRow> risk_band(const RunResult& result, std::string_view learner);
// Median over seeds with a stride of 1.
std::vector<double> median_trace(const RunResult& result, std::string_view learner);

inline constexpr std::string_view kBandHeader = "t,median,q25,q75";

// Writes band_<learner>.csv files; returns the paths written.
std::vector<std::filesystem::path> emit_plot_data(
    const RunResult& result, const std::filesystem::path& dir);

// Writes every artifact of a run (config echo, traces, bands, reports,
// run_info.json) under dir, each file atomically.
std::vector<std::filesystem::path> write_outputs(
    const RunResult& result, const std::filesystem::path& dir);

// Write-then-rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view data);

}  // namespace prolearn

#endif  // PROLEARN_HARNESS_HPP_
