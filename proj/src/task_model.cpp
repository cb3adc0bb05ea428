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

#include "prolearn/task_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "prolearn/errors.hpp"
#include "prolearn/evaluation.hpp"
#include "prolearn/hypothesis_sequence.hpp"

namespace prolearn {

void GaussianClassTask::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("sigma must be positive");
  }
  if (!(prior_pos >= 0.0 && prior_pos <= 1.0)) {
    throw ConfigError("prior_pos must lie in [0, 1]");
  }
}

GaussianClassTask flip(const GaussianClassTask& task) {
  GaussianClassTask out = task;
  out.label_convention = task.label_convention == LabelConvention::kNormal
                             ? LabelConvention::kFlipped
                             : LabelConvention::kNormal;
  return out;
}

TaskSequence::TaskSequence(std::vector<GaussianClassTask> phases,
                           TimeStep period, std::vector<std::string> names)
    : phases_(std::move(phases)), period_(period), names_(std::move(names)) {
  if (phases_.empty()) throw ConfigError("task sequence needs at least one phase");
  if (period_ <= 0) throw ConfigError("period must be positive");
  for (const auto& p : phases_) p.validate();
  if (names_.empty()) {
    for (std::size_t i = 0; i < phases_.size(); ++i) {
      names_.push_back("P" + std::to_string(i));
    }
  }
  if (names_.size() != phases_.size()) {
    throw ConfigError("phase names must match the number of phases");
  }
}

std::size_t TaskSequence::phase_index(TimeStep t) const {
  const auto k = static_cast<TimeStep>(phases_.size());
  return static_cast<std::size_t>(pos_mod(floor_div(t, period_), k));
}

const GaussianClassTask& TaskSequence::task_at(TimeStep t) const {
  return phases_[phase_index(t)];
}

namespace presets {

GaussianClassTask task_a() {
  return GaussianClassTask{{1.0, 1.0}, {-1.0, -1.0}, 1.0, 0.5,
                           LabelConvention::kNormal};
}

GaussianClassTask fig3a_task_b() { return flip(task_a()); }

GaussianClassTask fig3b_task_b() {
  return GaussianClassTask{{1.0, -1.0}, {-1.0, 1.0}, 1.0, 0.5,
                           LabelConvention::kNormal};
}

TaskSequence fig3a(TimeStep period) {
  return TaskSequence({task_a(), fig3a_task_b()}, period, {"A", "B"});
}

TaskSequence fig3b(TimeStep period) {
  return TaskSequence({task_a(), fig3b_task_b()}, period, {"A", "B"});
}

TaskSequence constant(TimeStep period) {
  return TaskSequence({task_a()}, period, {"A"});
}

}  // namespace presets

std::vector<LabeledSample> sample(const GaussianClassTask& task, Rng& rng,
                                  std::size_t n, TimeStep t) {
  std::bernoulli_distribution label(task.prior_pos);
  std::normal_distribution<double> noise(0.0, task.sigma);
  const Vec2 mp = task.effective_mu_pos();
  const Vec2 mn = task.effective_mu_neg();
  std::vector<LabeledSample> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    LabeledSample s;
    s.t = t;
    s.y = label(rng) ? 1 : -1;
    const Vec2& mu = s.y == 1 ? mp : mn;
    // Draw both coordinates in a fixed order so streams are reproducible.
    const double z0 = noise(rng);
    const double z1 = noise(rng);
    s.x = {mu[0] + z0, mu[1] + z1};
    out.push_back(s);
  }
  return out;
}

SampleStream::SampleStream(const TaskSequence& seq, std::uint64_t seed,
                           int rate)
    : seq_(seq), rng_(seed), rate_(rate) {
  if (rate_ < 1) throw ConfigError("samples_per_step must be at least 1");
}

std::vector<LabeledSample> SampleStream::next() {
  const TimeStep t = next_t_++;
  return sample(seq_.task_at(t), rng_, static_cast<std::size_t>(rate_), t);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

LinearHypothesis bayes_hypothesis(const GaussianClassTask& task) {
  const Vec2 mp = task.effective_mu_pos();
  const Vec2 mn = task.effective_mu_neg();
  if (mp == mn) {
    throw DegenerateTaskError("class means coincide; no informative direction");
  }
  // Degenerate priors make the optimum a constant classifier.
  if (task.prior_pos >= 1.0) return LinearHypothesis{{0.0, 0.0}, 1.0};
  if (task.prior_pos <= 0.0) return LinearHypothesis{{0.0, 0.0}, -1.0};
  LinearHypothesis h;
  h.w = mp - mn;
  h.b = -0.5 * dot(h.w, mp + mn) +
        task.sigma * task.sigma *
            std::log(task.prior_pos / (1.0 - task.prior_pos));
  return h;
}

double bayes_risk(const GaussianClassTask& task) {
  const Vec2 mp = task.effective_mu_pos();
  const Vec2 mn = task.effective_mu_neg();
  if (mp == mn) return std::min(task.prior_pos, 1.0 - task.prior_pos);
  if (task.prior_pos == 0.5) {
    return normal_cdf(-norm(mp - mn) / (2.0 * task.sigma));
  }
  return analytic_risk(bayes_hypothesis(task), task);
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 finalizer over (base, index).
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace prolearn
