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

#ifndef PROLEARN_TASK_MODEL_HPP_
#define PROLEARN_TASK_MODEL_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "prolearn/types.hpp"

namespace prolearn {

using Rng = std::mt19937_64;

enum class LabelConvention { kNormal, kFlipped };

// Binary classification task with isotropic Gaussian class-conditionals.
struct GaussianClassTask {
  Vec2 mu_pos{1.0, 1.0};
  Vec2 mu_neg{-1.0, -1.0};
  double sigma = 1.0;
  double prior_pos = 0.5;
  LabelConvention label_convention = LabelConvention::kNormal;

  // Means actually used for labels +1 / -1 once the convention is applied.
  Vec2 effective_mu_pos() const {
    return label_convention == LabelConvention::kFlipped ? mu_neg : mu_pos;
  }
  Vec2 effective_mu_neg() const {
    return label_convention == LabelConvention::kFlipped ? mu_pos : mu_neg;
  }

  // Throws ConfigError unless sigma > 0 and prior_pos is in [0, 1].
  void validate() const;

  friend bool operator==(const GaussianClassTask&,
                         const GaussianClassTask&) = default;
};

GaussianClassTask flip(const GaussianClassTask& task);

// Periodic schedule: phase (floor(t / period) mod k) is active at time t.
class TaskSequence {
 public:
  TaskSequence(std::vector<GaussianClassTask> phases, TimeStep period,
               std::vector<std::string> names = {});

  const GaussianClassTask& task_at(TimeStep t) const;
  std::size_t phase_index(TimeStep t) const;
  const std::string& phase_name(TimeStep t) const {
    return names_[phase_index(t)];
  }

  const std::vector<GaussianClassTask>& phases() const { return phases_; }
  const std::vector<std::string>& names() const { return names_; }
  TimeStep period() const { return period_; }
  std::size_t num_phases() const { return phases_.size(); }
  // period * num_phases: the sequence repeats after this many steps.
  TimeStep cycle_length() const {
    return period_ * static_cast<TimeStep>(phases_.size());
  }

 private:
  std::vector<GaussianClassTask> phases_;
  TimeStep period_;
  std::vector<std::string> names_;
};

// Stock tasks and sequences: two alternating phases every 500 steps.
namespace presets {
GaussianClassTask task_a();
GaussianClassTask fig3a_task_b();  // task_a with labels interchanged
GaussianClassTask fig3b_task_b();  // means [1,-1] vs [-1,1]
TaskSequence fig3a(TimeStep period = 500);
TaskSequence fig3b(TimeStep period = 500);
TaskSequence constant(TimeStep period = 500);
}  // namespace presets

std::vector<LabeledSample> sample(const GaussianClassTask& task, Rng& rng,
                                  std::size_t n, TimeStep t = 0);

// Sequential sampler over a task sequence, `rate` samples per time step.
class SampleStream {
 public:
  SampleStream(const TaskSequence& seq, std::uint64_t seed, int rate = 1);

  // Samples for the next time step; the first call yields t = 0.
  std::vector<LabeledSample> next();
  TimeStep next_time() const { return next_t_; }

 private:
  TaskSequence seq_;
  Rng rng_;
  int rate_;
  TimeStep next_t_ = 0;
};

double normal_cdf(double z);

// Bayes-optimal linear rule; throws DegenerateTaskError if the means coincide.
LinearHypothesis bayes_hypothesis(const GaussianClassTask& task);

// Minimum achievable 0-1 risk. Closed form for equal priors, otherwise
// the analytic risk of the Bayes rule.
double bayes_risk(const GaussianClassTask& task);

// Decorrelated child seed, used to derive per-trial/per-step streams.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index);

}  // namespace prolearn

#endif  // PROLEARN_TASK_MODEL_HPP_
