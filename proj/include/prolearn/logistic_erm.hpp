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

#ifndef PROLEARN_LOGISTIC_ERM_HPP_
#define PROLEARN_LOGISTIC_ERM_HPP_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prolearn/types.hpp"

namespace prolearn {

// ln(1 + exp(-margin)), evaluated without overflow.
double logistic_loss(double margin);
// 1 / (1 + exp(-z)), evaluated without overflow.
double sigmoid(double z);

struct LossGradient {
  Vec2 w{0.0, 0.0};
  double b = 0.0;
};

// Gradient of logistic_loss(y (w.x + b)) with respect to (w, b).
LossGradient logistic_gradient(const LinearHypothesis& h,
                               const LabeledSample& s);

struct SolverOptions {
  double lambda = 1e-4;
  double grad_tol = 1e-6;
  int max_iterations = 500;

  friend bool operator==(const SolverOptions&, const SolverOptions&) = default;
};

// Objective, gradient and upper-triangular Hessian (00 01 02 11 12 22) of
// erm_objective at the current iterate.
struct ErmEvaluation {
  double f = 0.0;
  std::array<double, 3> g{};
  std::array<double, 6> h{};

  friend bool operator==(const ErmEvaluation&, const ErmEvaluation&) = default;
};

struct SolverReport {
  int iterations = 0;
  double grad_norm = 0.0;
  double objective = 0.0;
};

// lambda/2 (|w|^2 + b^2) + sum_i logistic_loss(y_i (w.x_i + b)).
double erm_objective(std::span<const LabeledSample> samples,
                     const LinearHypothesis& h, double lambda);

// Warm-started minimizer of erm_objective over a growing sample buffer.
//
// Each call to add() appends to the buffer and re-minimizes from the
// previous solution with damped Newton steps until the gradient norm of the
// full objective is at most grad_tol. Hitting max_iterations first throws
// SolverError; the state is then left at the last iterate.
class LogisticErm {
 public:
  explicit LogisticErm(SolverOptions opts = {}) : opts_(opts) {}

  void add(const LabeledSample& s);
  void add_batch(std::span<const LabeledSample> batch);

  const LinearHypothesis& hypothesis() const { return h_; }
  const std::vector<LabeledSample>& samples() const { return samples_; }
  const SolverOptions& options() const { return opts_; }
  const SolverReport& last_report() const { return report_; }
  double objective() const { return erm_objective(samples_, h_, opts_.lambda); }

  // Warm-start sums at the current iterate, if any have been computed.
  std::optional<ErmEvaluation> cached_evaluation() const {
    return cache_valid_ ? std::optional<ErmEvaluation>(cache_) : std::nullopt;
  }

  // Restores a previously captured state without re-solving.
  static LogisticErm from_parts(SolverOptions opts,
                                std::vector<LabeledSample> samples,
                                LinearHypothesis h,
                                std::optional<ErmEvaluation> cache = {});

 private:
  void solve();

  SolverOptions opts_;
  std::vector<LabeledSample> samples_;
  LinearHypothesis h_;
  SolverReport report_;
  ErmEvaluation cache_;
  bool cache_valid_ = false;
};

}  // namespace prolearn

#endif  // PROLEARN_LOGISTIC_ERM_HPP_
