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

#include "prolearn/logistic_erm.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "prolearn/errors.hpp"

namespace prolearn {

double logistic_loss(double margin) {
  if (margin > 0.0) return std::log1p(std::exp(-margin));
  return -margin + std::log1p(std::exp(margin));
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

LossGradient logistic_gradient(const LinearHypothesis& h,
                               const LabeledSample& s) {
  const double y = s.y;
  const double coeff = -y * sigmoid(-y * h.score(s.x));
  return LossGradient{{coeff * s.x[0], coeff * s.x[1]}, coeff};
}

double erm_objective(std::span<const LabeledSample> samples,
                     const LinearHypothesis& h, double lambda) {
  double f = 0.5 * lambda * (dot(h.w, h.w) + h.b * h.b);
  for (const auto& s : samples) f += logistic_loss(s.y * h.score(s.x));
  return f;
}

namespace {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

LinearHypothesis to_hypothesis(const Vec3& theta) {
  return LinearHypothesis{{theta[0], theta[1]}, theta[2]};
}

Vec3 to_theta(const LinearHypothesis& h) { return Vec3(h.w[0], h.w[1], h.b); }

// Unregularized sums over a range of samples at theta.
void accumulate(std::span<const LabeledSample> samples, const Vec3& theta,
                ErmEvaluation& ev) {
  double f = 0.0, g0 = 0.0, g1 = 0.0, g2 = 0.0;
  double h00 = 0.0, h01 = 0.0, h02 = 0.0, h11 = 0.0, h12 = 0.0, h22 = 0.0;
  const double w0 = theta[0], w1 = theta[1], b = theta[2];
  for (const auto& s : samples) {
    const double x0 = s.x[0], x1 = s.x[1];
    const double y = s.y;
    const double m = y * (w0 * x0 + w1 * x1 + b);
    const double e = std::exp(-std::abs(m));
    f += (m < 0.0 ? -m : 0.0) + std::log1p(e);
    // p = sigmoid(-m), q = p (1 - p)
    const double p = m >= 0.0 ? e / (1.0 + e) : 1.0 / (1.0 + e);
    const double q = p * (1.0 - p);
    const double c = -y * p;
    g0 += c * x0;
    g1 += c * x1;
    g2 += c;
    h00 += q * x0 * x0;
    h01 += q * x0 * x1;
    h02 += q * x0;
    h11 += q * x1 * x1;
    h12 += q * x1;
    h22 += q;
  }
  ev.f += f;
  ev.g[0] += g0;
  ev.g[1] += g1;
  ev.g[2] += g2;
  ev.h[0] += h00;
  ev.h[1] += h01;
  ev.h[2] += h02;
  ev.h[3] += h11;
  ev.h[4] += h12;
  ev.h[5] += h22;
}

ErmEvaluation evaluate(std::span<const LabeledSample> samples,
                       const Vec3& theta, double lambda) {
  ErmEvaluation ev;
  ev.f = 0.5 * lambda * theta.squaredNorm();
  for (int i = 0; i < 3; ++i) ev.g[i] = lambda * theta[i];
  ev.h = {lambda, 0.0, 0.0, lambda, 0.0, lambda};
  accumulate(samples, theta, ev);
  return ev;
}

Vec3 gradient(const ErmEvaluation& ev) { return Vec3(ev.g[0], ev.g[1], ev.g[2]); }

Mat3 hessian(const ErmEvaluation& ev) {
  Mat3 m;
  m << ev.h[0], ev.h[1], ev.h[2], ev.h[1], ev.h[3], ev.h[4], ev.h[2], ev.h[4],
      ev.h[5];
  return m;
}

}  // namespace

void LogisticErm::add(const LabeledSample& s) {
  add_batch(std::span<const LabeledSample>(&s, 1));
}

void LogisticErm::add_batch(std::span<const LabeledSample> batch) {
  const std::size_t old_size = samples_.size();
  samples_.insert(samples_.end(), batch.begin(), batch.end());
  if (cache_valid_) {
    // The cached sums stay exact at the current iterate; only the new
    // samples need to be folded in.
    accumulate(std::span<const LabeledSample>(samples_).subspan(old_size),
               to_theta(h_), cache_);
  }
  solve();
}

LogisticErm LogisticErm::from_parts(SolverOptions opts,
                                    std::vector<LabeledSample> samples,
                                    LinearHypothesis h,
                                    std::optional<ErmEvaluation> cache) {
  LogisticErm erm(opts);
  erm.samples_ = std::move(samples);
  erm.h_ = h;
  if (cache) {
    erm.cache_ = *cache;
    erm.cache_valid_ = true;
  }
  return erm;
}

void LogisticErm::solve() {
  constexpr double kArmijo = 1e-4;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  Vec3 theta = to_theta(h_);
  if (!cache_valid_) {
    cache_ = evaluate(samples_, theta, opts_.lambda);
    cache_valid_ = true;
  }
  ErmEvaluation& ev = cache_;
  int iter = 0;
  while (gradient(ev).norm() > opts_.grad_tol) {
    if (iter >= opts_.max_iterations) {
      h_ = to_hypothesis(theta);
      report_ = SolverReport{iter, gradient(ev).norm(), ev.f};
      std::ostringstream msg;
      msg << "logistic ERM did not converge after " << iter
          << " iterations (gradient norm " << gradient(ev).norm()
          << ", tolerance " << opts_.grad_tol << ", n=" << samples_.size()
          << ")";
      throw SolverError(msg.str());
    }
    ++iter;
    const Vec3 g = gradient(ev);
    const Vec3 step = -hessian(ev).ldlt().solve(g);
    const double slope = g.dot(step);
    // Once the predicted decrease is below the resolution of f, Armijo tests
    // are meaningless; the full Newton step is taken.
    const bool at_resolution = -slope <= 64.0 * kEps * (1.0 + std::abs(ev.f));
    double alpha = 1.0;
    ErmEvaluation trial = evaluate(samples_, theta + step, opts_.lambda);
    if (!at_resolution) {
      while (trial.f > ev.f + kArmijo * alpha * slope && alpha > 1e-12) {
        alpha *= 0.5;
        trial = evaluate(samples_, theta + alpha * step, opts_.lambda);
      }
    }
    theta += alpha * step;
    ev = trial;
  }
  h_ = to_hypothesis(theta);
  report_ = SolverReport{iter, gradient(ev).norm(), ev.f};
}

}  // namespace prolearn
