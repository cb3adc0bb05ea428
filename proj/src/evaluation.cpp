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

#include "prolearn/evaluation.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <ostream>

#include "json.hpp"

#include "prolearn/errors.hpp"
#include "prolearn/parallel.hpp"

namespace prolearn {

double analytic_risk(const LinearHypothesis& h, const GaussianClassTask& task) {
  const double p = task.prior_pos;
  const double wn = norm(h.w);
  if (wn == 0.0) return h.b >= 0.0 ? 1.0 - p : p;
  const double scale = task.sigma * wn;
  const double pos = h.score(task.effective_mu_pos()) / scale;
  const double neg = h.score(task.effective_mu_neg()) / scale;
  return p * normal_cdf(-pos) + (1.0 - p) * normal_cdf(neg);
}

double mc_risk(const LinearHypothesis& h, const GaussianClassTask& task,
               std::size_t n, Rng& rng) {
  if (n == 0) throw ConfigError("mc_risk needs at least one sample");
  std::size_t errors = 0;
  for (const auto& s : sample(task, rng, n)) errors += h.predict(s.x) != s.y;
  return static_cast<double>(errors) / static_cast<double>(n);
}

std::string_view to_string(ReferenceKind kind) {
  return kind == ReferenceKind::kStrong ? "strong" : "weak";
}

ReferenceKind reference_kind_from_string(std::string_view name) {
  if (name == "strong") return ReferenceKind::kStrong;
  if (name == "weak") return ReferenceKind::kWeak;
  throw ConfigError("reference must be 'strong' or 'weak', got '" +
                    std::string(name) + "'");
}

ReferenceSequence::ReferenceSequence(const TaskSequence& seq,
                                     ReferenceKind kind)
    : seq_(seq), kind_(kind) {
  if (kind_ == ReferenceKind::kStrong) {
    std::vector<LinearHypothesis> slots;
    for (const auto& task : seq_.phases()) {
      slots.push_back(bayes_hypothesis(task));
      phase_risk_.push_back(analytic_risk(slots.back(), task));
    }
    hypotheses_ = HypothesisSequence::periodic(std::move(slots), seq_.period());
  }
}

double ReferenceSequence::risk_at(TimeStep t) const {
  if (kind_ == ReferenceKind::kWeak) return 0.5;
  return phase_risk_[seq_.phase_index(t)];
}

ReferenceSequence reference_sequence(const TaskSequence& seq,
                                     ReferenceKind kind) {
  return ReferenceSequence(seq, kind);
}

namespace {

// Fixed 6 decimals; values that round to zero print without a sign.
void put_fixed6(std::ostream& os, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  os << (std::string_view(buf) == "-0.000000" ? "0.000000" : buf);
}

}  // namespace

void write_risk_trace_csv(std::ostream& os, const RiskTrace& trace) {
  os << kRiskTraceHeader << '\n';
  for (const auto& e : trace.entries) {
    os << e.t << ',' << e.learner << ',' << e.task << ',';
    put_fixed6(os, e.risk);
    os << ',';
    put_fixed6(os, e.risk_gap);
    os << '\n';
  }
}

// ---------------------------------------------------------------------------

SourceFactory stream_factory(const TaskSequence& seq, int rate) {
  return [seq, rate](std::uint64_t seed) -> StepSource {
    auto stream = std::make_shared<SampleStream>(seq, seed, rate);
    return [stream] { return stream->next(); };
  };
}

void ProspectiveOptions::validate() const {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  if (t_prime < 0) throw ConfigError("t_prime must be non-negative");
  if (horizon_T != 0 && horizon_T <= t_prime) {
    throw ConfigError("horizon_T must exceed t_prime");
  }
  if (n_trials < 1) throw ConfigError("n_trials must be at least 1");
  if (samples_per_step < 1) throw ConfigError("samples_per_step must be at least 1");
}

TimeStep ProspectiveOptions::resolved_horizon(const TaskSequence& seq) const {
  return horizon_T != 0 ? horizon_T : t_prime + 10 * seq.cycle_length();
}

FrozenTrials run_frozen_trials(const LearnerConfig& learner,
                               const TaskSequence& seq,
                               const ProspectiveOptions& opts,
                               const SourceFactory& source) {
  opts.validate();
  FrozenTrials out;
  out.t_prime = opts.t_prime;
  out.horizon_T = opts.resolved_horizon(seq);
  out.risks.resize(static_cast<std::size_t>(opts.n_trials));
  const auto span = static_cast<std::size_t>(out.horizon_T - out.t_prime);

  parallel_for(out.risks.size(), opts.workers, [&](std::size_t trial) {
    Learner l = make_learner(learner, seq);
    StepSource next = source(mix_seed(opts.base_seed, trial));
    for (TimeStep t = 0; t <= opts.t_prime; ++t) {
      for (const auto& s : next()) l.observe(s);
    }
    const HypothesisSequence frozen = l.emit(opts.t_prime);
    auto& risks = out.risks[trial];
    risks.resize(span);
    for (std::size_t i = 0; i < span; ++i) {
      const TimeStep t = out.t_prime + 1 + static_cast<TimeStep>(i);
      risks[i] = analytic_risk(frozen.at(t), seq.task_at(t));
    }
  });
  return out;
}

double score_trials(const FrozenTrials& trials, const ReferenceSequence& ref,
                    double epsilon, bool two_sided_weak) {
  const auto span = static_cast<std::size_t>(trials.horizon_T - trials.t_prime);
  if (span == 0 || trials.risks.empty()) return 0.0;
  const bool one_sided = ref.kind() == ReferenceKind::kWeak && !two_sided_weak;
  double total = 0.0;
  for (std::size_t i = 0; i < span; ++i) {
    const TimeStep t = trials.t_prime + 1 + static_cast<TimeStep>(i);
    const double r_ref = ref.risk_at(t);
    int hits = 0;
    for (const auto& trial : trials.risks) {
      const double r = trial[i];
      hits += one_sided ? (r < r_ref - epsilon) : (std::abs(r - r_ref) < epsilon);
    }
    total += static_cast<double>(hits) / static_cast<double>(trials.risks.size());
  }
  return total / static_cast<double>(span);
}

ProspectiveReport prospective_score(const LearnerConfig& learner,
                                    const TaskSequence& seq,
                                    const ProspectiveOptions& opts) {
  return prospective_score(learner, seq, opts,
                           stream_factory(seq, opts.samples_per_step));
}

ProspectiveReport prospective_score(const LearnerConfig& learner,
                                    const TaskSequence& seq,
                                    const ProspectiveOptions& opts,
                                    const SourceFactory& source) {
  const FrozenTrials trials = run_frozen_trials(learner, seq, opts, source);
  const ReferenceSequence ref(seq, opts.reference);
  ProspectiveReport rep;
  rep.learner = learner.id.empty() ? std::string(to_string(learner.kind)) : learner.id;
  rep.epsilon = opts.epsilon;
  rep.delta = opts.delta;
  rep.t_prime = trials.t_prime;
  rep.horizon_T = trials.horizon_T;
  rep.n_trials = opts.n_trials;
  rep.n_samples = (opts.t_prime + 1) * opts.samples_per_step;
  rep.reference = opts.reference;
  rep.two_sided_weak = opts.two_sided_weak;
  rep.score = score_trials(trials, ref, opts.epsilon, opts.two_sided_weak);
  rep.verdict = rep.score >= 1.0 - opts.delta;
  return rep;
}

ProspectiveReport sweep_t_bar(const LearnerConfig& learner,
                              const TaskSequence& seq,
                              const std::vector<TimeStep>& grid,
                              const ProspectiveOptions& opts) {
  if (grid.empty()) throw ConfigError("t_prime grid must not be empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1]) throw ConfigError("t_prime grid must be ascending");
  }
  opts.validate();
  const TimeStep span = opts.resolved_horizon(seq) - opts.t_prime;
  ProspectiveReport last;
  std::vector<GridPoint> points;
  for (TimeStep tp : grid) {
    ProspectiveOptions o = opts;
    o.t_prime = tp;
    o.horizon_T = tp + span;
    last = prospective_score(learner, seq, o);
    points.push_back({tp, last.horizon_T, last.score, last.verdict});
  }
  last.grid = points;
  for (std::size_t i = points.size(); i-- > 0;) {
    if (!points[i].verdict) break;
    last.t_bar_estimate = points[i].t_prime;
  }
  return last;
}

std::string ProspectiveReport::to_json() const {
  nlohmann::ordered_json j;
  j["learner"] = learner;
  j["protocol"] = "frozen";
  j["epsilon"] = epsilon;
  j["delta"] = delta;
  j["t_prime"] = t_prime;
  j["horizon_T"] = horizon_T;
  j["n_trials"] = n_trials;
  j["n_samples"] = n_samples;
  j["reference"] = std::string(to_string(reference));
  j["weak_test"] = two_sided_weak ? "two_sided" : "one_sided";
  j["score"] = score;
  j["verdict"] = verdict;
  j["t_bar_estimate"] = t_bar_estimate ? nlohmann::ordered_json(*t_bar_estimate)
                                       : nlohmann::ordered_json(nullptr);
  auto g = nlohmann::ordered_json::array();
  for (const auto& p : grid) {
    g.push_back({{"t_prime", p.t_prime},
                 {"horizon_T", p.horizon_T},
                 {"score", p.score},
                 {"verdict", p.verdict}});
  }
  j["grid"] = g;
  return j.dump(2) + "\n";
}

}  // namespace prolearn
