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

#include "prolearn/learners.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "prolearn/errors.hpp"

namespace prolearn {

OgdState ogd_step(OgdState state, const LabeledSample& s, double eta) {
  const LossGradient g = logistic_gradient(state.h, s);
  state.h.w[0] -= eta * g.w[0];
  state.h.w[1] -= eta * g.w[1];
  state.h.b -= eta * g.b;
  ++state.steps;
  return state;
}

OgdLearner::OgdLearner(double eta) : eta_(eta) {
  if (!(eta_ >= 0.0) || !std::isfinite(eta_)) {
    throw ConfigError("eta must be non-negative");
  }
}

// ---------------------------------------------------------------------------

OracleProspectiveLearner::OracleProspectiveLearner(TimeStep period,
                                                   std::size_t num_phases,
                                                   SolverOptions opts)
    : period_(period), phases_(num_phases, LogisticErm(opts)) {
  if (period_ <= 0) throw ConfigError("period must be positive");
  if (num_phases == 0) throw ConfigError("phase count must be positive");
}

void OracleProspectiveLearner::observe(const LabeledSample& s) {
  phases_[phase_of(s.t)].add(s);
}

HypothesisSequence OracleProspectiveLearner::emit(TimeStep) const {
  std::vector<LinearHypothesis> slots;
  slots.reserve(phases_.size());
  for (const auto& p : phases_) slots.push_back(p.hypothesis());
  return HypothesisSequence::periodic(std::move(slots), period_);
}

// ---------------------------------------------------------------------------

std::size_t localize_change(std::span<const int> errors) {
  const std::size_t n = errors.size();
  if (n < 2) return n == 0 ? 0 : 1;
  std::vector<int> prefix(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + errors[i];
  auto segment_ll = [](double ones, double len) {
    double ll = 0.0;
    const double zeros = len - ones;
    if (ones > 0) ll += ones * std::log(ones / len);
    if (zeros > 0) ll += zeros * std::log(zeros / len);
    return ll;
  };
  std::size_t best = 1;
  double best_ll = -INFINITY;
  for (std::size_t j = 1; j < n; ++j) {
    const double ll =
        segment_ll(prefix[j], static_cast<double>(j)) +
        segment_ll(prefix[n] - prefix[j], static_cast<double>(n - j));
    if (ll > best_ll + 1e-12) {
      best_ll = ll;
      best = j;
    }
  }
  return best;
}

namespace {

struct LatticeFit {
  std::size_t inliers = 0;
  double sse = 0.0;
  TimeStep anchor = 0;
};

// Best anchor for a fixed period, allowing residuals up to `tol`.
LatticeFit fit_lattice(std::span<const TimeStep> cps, TimeStep period, TimeStep tol) {
  LatticeFit best;
  bool have = false;
  for (TimeStep seed_cp : cps) {
    const TimeStep a0 = pos_mod(seed_cp, period);
    std::vector<double> dev;
    for (TimeStep c : cps) {
      TimeStep d = pos_mod(c - a0, period);
      if (2 * d > period) d -= period;
      if (std::abs(d) <= tol) dev.push_back(static_cast<double>(d));
    }
    double mean = 0.0;
    for (double d : dev) mean += d;
    mean /= static_cast<double>(dev.size());
    const auto shift = static_cast<TimeStep>(std::llround(mean));
    double sse = 0.0;
    for (double d : dev) sse += (d - shift) * (d - shift);
    const LatticeFit cand{dev.size(), sse, pos_mod(a0 + shift, period)};
    if (!have || cand.inliers > best.inliers ||
        (cand.inliers == best.inliers && cand.sse < best.sse)) {
      best = cand;
      have = true;
    }
  }
  return best;
}

}  // namespace

std::optional<PeriodEstimate> estimate_period(std::span<const TimeStep> change_points,
                                              const PeriodVoteOptions& opts) {
  if (change_points.size() < 3) return std::nullopt;
  std::vector<TimeStep> gaps;
  for (std::size_t i = 1; i < change_points.size(); ++i) {
    gaps.push_back(change_points[i] - change_points[i - 1]);
  }
  std::nth_element(gaps.begin(), gaps.begin() + (gaps.size() - 1) / 2, gaps.end());
  const TimeStep rough = gaps[(gaps.size() - 1) / 2];
  if (rough <= 0) return std::nullopt;
  const TimeStep radius = std::max<TimeStep>(2, rough / 50);
  const TimeStep lo = std::max<TimeStep>(1, rough - radius);
  const TimeStep hi = rough + radius;

  // Exact vote.
  std::optional<PeriodEstimate> best;
  bool tied = false;
  for (TimeStep n = lo; n <= hi; ++n) {
    std::map<TimeStep, std::size_t> residues;
    for (TimeStep c : change_points) ++residues[pos_mod(c, n)];
    PeriodEstimate cand{n, 0, 0, true};
    for (const auto& [r, count] : residues) {
      if (count > cand.support) cand = PeriodEstimate{n, r, count, true};
    }
    if (!best || cand.support > best->support) {
      best = cand;
      tied = false;
    } else if (cand.support == best->support) {
      tied = true;
    }
  }
  if (best && !tied && best->support >= opts.min_exact) return best;

  // Tolerant vote.
  std::optional<PeriodEstimate> tolerant;
  double best_sse = 0.0;
  tied = false;
  for (TimeStep n = lo; n <= hi; ++n) {
    const LatticeFit fit = fit_lattice(change_points, n, opts.tolerance);
    if (!tolerant || fit.inliers > tolerant->support ||
        (fit.inliers == tolerant->support && fit.sse < best_sse)) {
      tolerant = PeriodEstimate{n, fit.anchor, fit.inliers, false};
      best_sse = fit.sse;
      tied = false;
    } else if (fit.inliers == tolerant->support && fit.sse == best_sse) {
      tied = true;
    }
  }
  if (tolerant && !tied && tolerant->support >= opts.min_tolerant) return tolerant;
  return std::nullopt;
}

std::size_t shortest_repeat(std::span<const int> labels) {
  const std::size_t n = labels.size();
  for (std::size_t p = 1; p < n; ++p) {
    bool ok = true;
    for (std::size_t i = 0; i + p < n && ok; ++i) ok = labels[i] == labels[i + p];
    if (ok) return p;
  }
  return std::max<std::size_t>(n, 1);
}

double probe_agreement(const LinearHypothesis& a, const LinearHypothesis& b,
                       std::span<const Vec2> probes) {
  if (probes.empty()) return 1.0;
  std::size_t agree = 0;
  for (const auto& x : probes) agree += a.predict(x) == b.predict(x);
  return static_cast<double>(agree) / static_cast<double>(probes.size());
}

AdaptiveProspectiveLearner::AdaptiveProspectiveLearner(AdaptiveConfig cfg)
    : cfg_(cfg), current_(cfg.solver) {
  if (cfg_.window < 1) throw ConfigError("window must be positive");
  if (!(cfg_.threshold > 0.0 && cfg_.threshold < 1.0)) {
    throw ConfigError("threshold must lie in (0, 1)");
  }
  if (!(cfg_.agreement > 0.0 && cfg_.agreement <= 1.0)) {
    throw ConfigError("agreement must lie in (0, 1]");
  }
}

const LinearHypothesis& AdaptiveProspectiveLearner::hypothesis_at(
    TimeStep t) const {
  if (schedule_) return slots_[schedule_->slot_of(t)].hypothesis();
  return current_.hypothesis();
}

HypothesisSequence AdaptiveProspectiveLearner::emit(TimeStep) const {
  if (!schedule_) return HypothesisSequence::constant(current_.hypothesis());
  std::vector<LinearHypothesis> slots;
  for (const auto& s : slots_) slots.push_back(s.hypothesis());
  return HypothesisSequence::periodic(std::move(slots), schedule_->period,
                                      schedule_->anchor);
}

void AdaptiveProspectiveLearner::observe(const LabeledSample& s) {
  const int error = hypothesis_at(s.t).predict(s.x) != s.y ? 1 : 0;
  buffer_.push_back(s);
  const auto window = static_cast<std::size_t>(cfg_.window);
  recent_.push_back({s.t, error});
  while (recent_.size() > 4 * window) recent_.pop_front();

  int errors = -1;
  if (recent_.size() >= window) {
    errors = 0;
    for (auto it = recent_.end() - cfg_.window; it != recent_.end(); ++it) {
      errors += it->error;
    }
  }

  if (schedule_) {
    slots_[schedule_->slot_of(s.t)].add(s);
  } else if (errors > kHoldFraction * cfg_.threshold * cfg_.window &&
             s.t - segment_start_ >= 2 * cfg_.window) {
    // Elevated error on a settled segment: hold updates so the fit does not
    // chase a change that is still being confirmed.
    held_.push_back(s);
  } else if (!held_.empty()) {
    held_.push_back(s);
    current_.add_batch(held_);
    held_.clear();
  } else {
    current_.add(s);
  }

  if (errors < 0) return;
  if (last_detection_ >= 0 && s.t - last_detection_ < cfg_.window) return;
  if (errors > cfg_.threshold * cfg_.window) on_change_point(s.t);
}

std::vector<LabeledSample> AdaptiveProspectiveLearner::samples_between(
    TimeStep begin, TimeStep end) const {
  std::vector<LabeledSample> out;
  for (const auto& s : buffer_) {
    if (s.t >= begin && s.t < end) out.push_back(s);
  }
  return out;
}

void AdaptiveProspectiveLearner::on_change_point(TimeStep detected_at) {
  std::vector<int> errors;
  errors.reserve(recent_.size());
  for (const auto& r : recent_) errors.push_back(r.error);
  const TimeStep cp = recent_[localize_change(errors)].t;
  cp_history_.push_back(cp);

  if (schedule_) {
    // The locked schedule predicted no error burst here: drop it.
    schedule_.reset();
    slots_.clear();
    change_points_.clear();
    epoch_start_ = cp;
  }
  change_points_.push_back(cp);
  segment_start_ = cp;
  current_ = LogisticErm(cfg_.solver);
  current_.add_batch(samples_between(cp, detected_at + 1));
  held_.clear();
  recent_.clear();
  last_detection_ = detected_at;
  try_lock();
}

void AdaptiveProspectiveLearner::try_lock() {
  const auto estimate = estimate_period(change_points_);
  if (!estimate) return;

  // Completed segments of this epoch; the one in progress is too short.
  std::vector<TimeStep> bounds;
  if (epoch_start_ < change_points_.front()) bounds.push_back(epoch_start_);
  bounds.insert(bounds.end(), change_points_.begin(), change_points_.end());
  std::vector<Vec2> probes;
  for (const auto& s : buffer_) {
    if (s.t >= epoch_start_) probes.push_back(s.x);
  }
  std::vector<LinearHypothesis> reps;
  std::vector<int> labels;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    LogisticErm erm(cfg_.solver);
    erm.add_batch(samples_between(bounds[i], bounds[i + 1]));
    int label = -1;
    for (std::size_t c = 0; c < reps.size() && label < 0; ++c) {
      if (probe_agreement(reps[c], erm.hypothesis(), probes) >= cfg_.agreement) {
        label = static_cast<int>(c);
      }
    }
    if (label < 0) {
      label = static_cast<int>(reps.size());
      reps.push_back(erm.hypothesis());
    }
    labels.push_back(label);
  }

  Schedule sched;
  sched.period = estimate->period;
  sched.anchor = estimate->anchor;
  sched.num_phases = shortest_repeat(labels);

  std::vector<std::vector<LabeledSample>> routed(sched.num_phases);
  for (const auto& s : buffer_) {
    if (s.t >= epoch_start_) routed[sched.slot_of(s.t)].push_back(s);
  }
  slots_.assign(sched.num_phases, LogisticErm(cfg_.solver));
  for (std::size_t k = 0; k < sched.num_phases; ++k) {
    slots_[k].add_batch(routed[k]);
  }
  schedule_ = sched;
}

// ---------------------------------------------------------------------------

ReferenceLearner::ReferenceLearner(TaskSequence seq) : seq_(std::move(seq)) {
  for (const auto& task : seq_.phases()) bayes_.push_back(bayes_hypothesis(task));
}

// ---------------------------------------------------------------------------

std::string_view to_string(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kOgd: return "ogd";
    case LearnerKind::kFtl: return "ftl";
    case LearnerKind::kOracleProspective: return "oracle_prospective";
    case LearnerKind::kAdaptiveProspective: return "adaptive_prospective";
    case LearnerKind::kReference: return "reference";
  }
  return "unknown";
}

LearnerKind learner_kind_from_string(std::string_view name) {
  for (auto k : {LearnerKind::kOgd, LearnerKind::kFtl,
                 LearnerKind::kOracleProspective,
                 LearnerKind::kAdaptiveProspective, LearnerKind::kReference}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown learner type '" + std::string(name) + "'");
}

void Learner::observe(const LabeledSample& s) {
  std::visit([&](auto& l) { l.observe(s); }, impl_);
}

const LinearHypothesis& Learner::hypothesis_at(TimeStep t) const {
  return std::visit(
      [&](const auto& l) -> const LinearHypothesis& { return l.hypothesis_at(t); },
      impl_);
}

HypothesisSequence Learner::emit(TimeStep t_prime) const {
  return std::visit([&](const auto& l) { return l.emit(t_prime); }, impl_);
}

LearnerKind Learner::kind() const {
  return static_cast<LearnerKind>(impl_.index());
}

Learner make_learner(const LearnerConfig& cfg, const TaskSequence& seq) {
  switch (cfg.kind) {
    case LearnerKind::kOgd:
      return Learner(OgdLearner(cfg.eta));
    case LearnerKind::kFtl:
      return Learner(FtlLearner(cfg.solver));
    case LearnerKind::kOracleProspective:
      return Learner(OracleProspectiveLearner(
          cfg.oracle_period > 0 ? cfg.oracle_period : seq.period(),
          cfg.oracle_phases > 0 ? cfg.oracle_phases : seq.num_phases(),
          cfg.solver));
    case LearnerKind::kAdaptiveProspective: {
      AdaptiveConfig a = cfg.adaptive;
      a.solver = cfg.solver;
      return Learner(AdaptiveProspectiveLearner(a));
    }
    case LearnerKind::kReference:
      return Learner(ReferenceLearner(seq));
  }
  throw ConfigError("unknown learner kind");
}

}  // namespace prolearn
