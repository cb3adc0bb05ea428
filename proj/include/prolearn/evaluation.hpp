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

#ifndef PROLEARN_EVALUATION_HPP_
#define PROLEARN_EVALUATION_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prolearn/hypothesis_sequence.hpp"
#include "prolearn/learners.hpp"
#include "prolearn/task_model.hpp"
#include "prolearn/types.hpp"

namespace prolearn {

// Exact 0-1 risk of h under task. A zero weight vector is the constant
// classifier sign(b) (ties to +1).
double analytic_risk(const LinearHypothesis& h, const GaussianClassTask& task);

// Empirical 0-1 error of h on n fresh samples from task.
double mc_risk(const LinearHypothesis& h, const GaussianClassTask& task,
               std::size_t n, Rng& rng);

enum class ReferenceKind { kStrong, kWeak };
std::string_view to_string(ReferenceKind kind);
ReferenceKind reference_kind_from_string(std::string_view name);

// Strong: per-time Bayes rules. Weak: a chance-level reference whose risk is
// 0.5 at every t; it has no linear representation.
class ReferenceSequence {
 public:
  ReferenceSequence(const TaskSequence& seq, ReferenceKind kind);

  ReferenceKind kind() const { return kind_; }
  double risk_at(TimeStep t) const;
  // Only meaningful for the strong reference.
  const HypothesisSequence& hypotheses() const { return hypotheses_; }

 private:
  TaskSequence seq_;
  ReferenceKind kind_;
  HypothesisSequence hypotheses_;
  std::vector<double> phase_risk_;
};

ReferenceSequence reference_sequence(const TaskSequence& seq,
                                     ReferenceKind kind);

// ---------------------------------------------------------------------------
// Risk traces.

struct RiskEntry {
  TimeStep t = 0;
  std::string learner;
  std::string task;
  double risk = 0.0;
  double risk_gap = 0.0;
};

struct RiskTrace {
  std::vector<RiskEntry> entries;
};

inline constexpr std::string_view kRiskTraceHeader = "t,learner,task,risk,risk_gap";

// CSV with kRiskTraceHeader and fixed 6-decimal risk columns.
void write_risk_trace_csv(std::ostream& os, const RiskTrace& trace);

// ---------------------------------------------------------------------------
// Frozen prospective-learnability test.

// Produces, per call, the samples of the next time step (t = 0, 1, ...).
using StepSource = std::function<std::vector<LabeledSample>()>;
using SourceFactory = std::function<StepSource(std::uint64_t seed)>;

// Default factory: SampleStream over seq with `rate` samples per step.
SourceFactory stream_factory(const TaskSequence& seq, int rate = 1);

struct ProspectiveOptions {
  double epsilon = 0.05;
  double delta = 0.1;
  TimeStep t_prime = 3000;
  // 0 selects t_prime + 10 full cycles of the sequence.
  TimeStep horizon_T = 0;
  int n_trials = 20;
  ReferenceKind reference = ReferenceKind::kStrong;
  // Literal |R - 0.5| < epsilon test against the weak reference.
  bool two_sided_weak = false;
  std::uint64_t base_seed = 1;
  int samples_per_step = 1;
  int workers = 1;

  // Throws ConfigError naming the offending field.
  void validate() const;
  TimeStep resolved_horizon(const TaskSequence& seq) const;

  friend bool operator==(const ProspectiveOptions&,
                         const ProspectiveOptions&) = default;
};

// Per-trial analytic risks of the frozen continuation at t = t'+1 .. T.
struct FrozenTrials {
  TimeStep t_prime = 0;
  TimeStep horizon_T = 0;
  std::vector<std::vector<double>> risks;  // [trial][t - t' - 1]
};

FrozenTrials run_frozen_trials(const LearnerConfig& learner,
                               const TaskSequence& seq,
                               const ProspectiveOptions& opts,
                               const SourceFactory& source);

struct GridPoint {
  TimeStep t_prime = 0;
  TimeStep horizon_T = 0;
  double score = 0.0;
  bool verdict = false;
};

struct ProspectiveReport {
  std::string learner;
  double epsilon = 0.0;
  double delta = 0.0;
  TimeStep t_prime = 0;
  TimeStep horizon_T = 0;
  int n_trials = 0;
  std::int64_t n_samples = 0;  // stream samples observed up to t'
  ReferenceKind reference = ReferenceKind::kStrong;
  bool two_sided_weak = false;
  double score = 0.0;
  bool verdict = false;
  std::optional<TimeStep> t_bar_estimate;
  std::vector<GridPoint> grid;

  std::string to_json() const;
};

// Eq.-2-style score of already-computed trials: mean over t of the fraction
// of trials that succeed at t.
double score_trials(const FrozenTrials& trials, const ReferenceSequence& ref,
                    double epsilon, bool two_sided_weak = false);

ProspectiveReport prospective_score(const LearnerConfig& learner,
                                    const TaskSequence& seq,
                                    const ProspectiveOptions& opts);
ProspectiveReport prospective_score(const LearnerConfig& learner,
                                    const TaskSequence& seq,
                                    const ProspectiveOptions& opts,
                                    const SourceFactory& source);

// Runs prospective_score at every t' of an ascending grid, keeping the
// horizon span (horizon_T - t_prime) of opts. t_bar_estimate is the smallest
// grid t' from which every larger grid point passes as well.
ProspectiveReport sweep_t_bar(const LearnerConfig& learner,
                              const TaskSequence& seq,
                              const std::vector<TimeStep>& grid,
                              const ProspectiveOptions& opts);

}  // namespace prolearn

#endif  // PROLEARN_EVALUATION_HPP_
