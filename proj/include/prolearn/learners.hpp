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

#ifndef PROLEARN_LEARNERS_HPP_
#define PROLEARN_LEARNERS_HPP_

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "prolearn/hypothesis_sequence.hpp"
#include "prolearn/logistic_erm.hpp"
#include "prolearn/task_model.hpp"
#include "prolearn/types.hpp"

namespace prolearn {

// Version of the learner checkpoint layout (see docs/checkpoint.md).
inline constexpr int kCheckpointVersion = 1;

// ---------------------------------------------------------------------------
// Online gradient descent on the logistic loss.

struct OgdState {
  LinearHypothesis h;
  std::int64_t steps = 0;

  friend bool operator==(const OgdState&, const OgdState&) = default;
};

// One gradient step of size eta on logistic_loss(y (w.x + b)).
OgdState ogd_step(OgdState state, const LabeledSample& s, double eta);

class OgdLearner {
 public:
  explicit OgdLearner(double eta = 0.05);

  void observe(const LabeledSample& s) { state_ = ogd_step(state_, s, eta_); }
  const LinearHypothesis& hypothesis_at(TimeStep) const { return state_.h; }
  HypothesisSequence emit(TimeStep) const {
    return HypothesisSequence::constant(state_.h);
  }

  const OgdState& state() const { return state_; }
  double eta() const { return eta_; }
  void set_state(const OgdState& s) { state_ = s; }

 private:
  double eta_;
  OgdState state_;
};

// ---------------------------------------------------------------------------
// Follow-the-leader: regularized ERM over every sample seen so far.

class FtlLearner {
 public:
  explicit FtlLearner(SolverOptions opts = {}) : erm_(opts) {}

  void observe(const LabeledSample& s) { erm_.add(s); }
  const LinearHypothesis& hypothesis_at(TimeStep) const {
    return erm_.hypothesis();
  }
  HypothesisSequence emit(TimeStep) const {
    return HypothesisSequence::constant(erm_.hypothesis());
  }

  const LogisticErm& erm() const { return erm_; }
  LogisticErm& mutable_erm() { return erm_; }

 private:
  LogisticErm erm_;
};

// ---------------------------------------------------------------------------
// Prospective learner that knows the true period and phase count: one ERM per
// phase, hypotheses alternate on the known schedule.

class OracleProspectiveLearner {
 public:
  OracleProspectiveLearner(TimeStep period, std::size_t num_phases,
                           SolverOptions opts = {});

  void observe(const LabeledSample& s);
  const LinearHypothesis& hypothesis_at(TimeStep t) const {
    return phases_[phase_of(t)].hypothesis();
  }
  HypothesisSequence emit(TimeStep t_prime) const;

  std::size_t phase_of(TimeStep t) const {
    return static_cast<std::size_t>(pos_mod(
        floor_div(t, period_), static_cast<TimeStep>(phases_.size())));
  }
  TimeStep period() const { return period_; }
  const std::vector<LogisticErm>& phases() const { return phases_; }
  std::vector<LogisticErm>& mutable_phases() { return phases_; }

 private:
  TimeStep period_;
  std::vector<LogisticErm> phases_;
};

// ---------------------------------------------------------------------------
// Prospective learner that discovers the schedule from its own mistakes.
//
// Before lock-in it fits a single ERM on the current segment. A change point
// is declared when the error rate over the last `window` predictions exceeds
// `threshold` (at most once per `window` steps) and is then localized by a
// two-rate Bernoulli split of the recent error indicators. Once enough change
// points exist, estimate_period() picks the lattice they fall on. Segment
// hypotheses are clustered by agreement on the inputs seen so far (labels
// unused), and the shortest repeat of the cluster labels gives the phase
// count. After lock-in it behaves like OracleProspectiveLearner on the
// estimated schedule, and a change point detected while locked discards the
// schedule. While the windowed error is above kHoldFraction * threshold (but
// not yet a change point) on a segment at least 2 * window steps old, new
// samples are held back from the segment fit.

inline constexpr double kHoldFraction = 0.5;

struct AdaptiveConfig {
  int window = 50;
  double threshold = 0.4;
  double agreement = 0.95;
  SolverOptions solver;

  friend bool operator==(const AdaptiveConfig&, const AdaptiveConfig&) = default;
};

struct Schedule {
  TimeStep period = 0;
  TimeStep anchor = 0;
  std::size_t num_phases = 1;

  std::size_t slot_of(TimeStep t) const {
    return static_cast<std::size_t>(
        pos_mod(floor_div(t - anchor, period),
                static_cast<TimeStep>(num_phases)));
  }
  friend bool operator==(const Schedule&, const Schedule&) = default;
};

// Index j in [1, errors.size()) maximizing the two-segment Bernoulli
// likelihood of errors[0, j) and errors[j, n); earliest on ties.
std::size_t localize_change(std::span<const int> errors);

struct PeriodEstimate {
  TimeStep period = 0;
  TimeStep anchor = 0;      // in [0, period)
  std::size_t support = 0;  // change points on the lattice anchor + m * period
  bool exact = false;       // support counted with zero tolerance
};

// Lattice vote over change points. Candidate periods are the integers within
// 2% (at least 2 steps) of the median gap.
//   1. Exact vote: a candidate scores the largest number of change points
//      sharing one residue modulo it; the unique best wins if it has at
//      least `min_exact` supporters.
//   2. Otherwise, tolerant vote: change points within `tolerance` of the
//      lattice count as inliers; most inliers wins, ties broken by the
//      smallest squared residual. Requires at least `min_tolerant` inliers.
struct PeriodVoteOptions {
  std::size_t min_exact = 3;
  std::size_t min_tolerant = 5;
  TimeStep tolerance = 12;
};
std::optional<PeriodEstimate> estimate_period(std::span<const TimeStep> change_points,
                                              const PeriodVoteOptions& opts = {});

// Smallest p such that labels[i] == labels[i + p] wherever both exist.
std::size_t shortest_repeat(std::span<const int> labels);

// Fraction of probe inputs on which two hypotheses agree.
double probe_agreement(const LinearHypothesis& a, const LinearHypothesis& b,
                       std::span<const Vec2> probes);

class AdaptiveProspectiveLearner {
 public:
  explicit AdaptiveProspectiveLearner(AdaptiveConfig cfg = {});

  void observe(const LabeledSample& s);
  const LinearHypothesis& hypothesis_at(TimeStep t) const;
  HypothesisSequence emit(TimeStep t_prime) const;

  const AdaptiveConfig& config() const { return cfg_; }
  bool locked() const { return schedule_.has_value(); }
  const std::optional<Schedule>& schedule() const { return schedule_; }
  std::optional<TimeStep> period_estimate() const {
    return schedule_ ? std::optional<TimeStep>(schedule_->period)
                     : std::nullopt;
  }
  // Change points of the current estimation epoch.
  const std::vector<TimeStep>& change_points() const { return change_points_; }
  // Every change point ever declared, including discarded epochs.
  const std::vector<TimeStep>& change_point_history() const {
    return cp_history_;
  }
  const std::vector<LogisticErm>& slot_erms() const { return slots_; }

  struct ErrorRecord {
    TimeStep t = 0;
    int error = 0;
  };

 private:
  friend struct AdaptiveCheckpointAccess;

  void on_change_point(TimeStep detected_at);
  void try_lock();
  std::vector<LabeledSample> samples_between(TimeStep begin,
                                             TimeStep end) const;

  AdaptiveConfig cfg_;
  std::vector<LabeledSample> buffer_;
  // Start of the segment currently fit by `current_` (unlocked mode).
  TimeStep segment_start_ = 0;
  // Start of the first segment of the current estimation epoch.
  TimeStep epoch_start_ = 0;
  LogisticErm current_;
  // Samples not yet folded into current_ while the error rate is elevated.
  std::vector<LabeledSample> held_;
  std::deque<ErrorRecord> recent_;
  TimeStep last_detection_ = -1;
  std::vector<TimeStep> change_points_;
  std::vector<TimeStep> cp_history_;
  std::optional<Schedule> schedule_;
  std::vector<LogisticErm> slots_;
};

// ---------------------------------------------------------------------------
// Control learner that ignores data and emits the per-time Bayes rules.

class ReferenceLearner {
 public:
  explicit ReferenceLearner(TaskSequence seq);

  void observe(const LabeledSample&) {}
  const LinearHypothesis& hypothesis_at(TimeStep t) const {
    return bayes_[seq_.phase_index(t)];
  }
  HypothesisSequence emit(TimeStep) const {
    return HypothesisSequence::periodic(bayes_, seq_.period());
  }

 private:
  TaskSequence seq_;
  std::vector<LinearHypothesis> bayes_;
};

// ---------------------------------------------------------------------------

enum class LearnerKind { kOgd, kFtl, kOracleProspective, kAdaptiveProspective,
                         kReference };

std::string_view to_string(LearnerKind kind);
// Throws ConfigError for unknown names.
LearnerKind learner_kind_from_string(std::string_view name);

struct LearnerConfig {
  std::string id;
  LearnerKind kind = LearnerKind::kOgd;
  double eta = 0.05;
  SolverOptions solver;
  AdaptiveConfig adaptive;
  // Oracle overrides; 0 means "take it from the task sequence".
  TimeStep oracle_period = 0;
  std::size_t oracle_phases = 0;

  friend bool operator==(const LearnerConfig&, const LearnerConfig&) = default;
};

// Owns one learner of any kind; value-semantic and copyable.
class Learner {
 public:
  using Variant = std::variant<OgdLearner, FtlLearner, OracleProspectiveLearner,
                               AdaptiveProspectiveLearner, ReferenceLearner>;

  explicit Learner(Variant impl) : impl_(std::move(impl)) {}

  void observe(const LabeledSample& s);
  // Hypothesis for time t, given everything observed so far (all earlier t).
  const LinearHypothesis& hypothesis_at(TimeStep t) const;
  // Total continuation u -> h_u for u > t_prime using no further data.
  HypothesisSequence emit(TimeStep t_prime) const;

  LearnerKind kind() const;
  const Variant& impl() const { return impl_; }
  Variant& impl() { return impl_; }

  // Structured-text (JSON) checkpoint of the full learner state.
  std::string checkpoint() const;
  // Throws ConfigError on malformed or version-mismatched input.
  static Learner restore(std::string_view text, const TaskSequence& seq);

 private:
  Variant impl_;
};

Learner make_learner(const LearnerConfig& cfg, const TaskSequence& seq);

}  // namespace prolearn

#endif  // PROLEARN_LEARNERS_HPP_
