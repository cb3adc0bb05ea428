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


#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "prolearn/errors.hpp"
#include "prolearn/evaluation.hpp"
#include "prolearn/task_model.hpp"

namespace prolearn {
namespace {

// mpmath.ncdf at 40 digits.
constexpr double kPhiMinusSqrt2 = 0.07864960352514256532938968245869537035197;
constexpr double kPhiMinusOne = 0.1586552539314570514147674543679620775221;

// Independent normal CDF oracle: composite Simpson integration of the
// density from -12 to z.
double phi_quadrature(double z) {
  const int n = 200000;
  const double a = -12.0;
  const double h = (z - a) / n;
  auto f = [](double x) { return std::exp(-0.5 * x * x); };
  double s = f(a) + f(z);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0 / std::sqrt(2.0 * M_PI);
}

TEST(NormalCdf, MatchesHighPrecisionValues) {
  EXPECT_NEAR(normal_cdf(-std::sqrt(2.0)), kPhiMinusSqrt2, 1e-15);
  EXPECT_NEAR(normal_cdf(-1.0), kPhiMinusOne, 1e-15);
  EXPECT_EQ(normal_cdf(0.0), 0.5);
}

TEST(NormalCdf, MatchesQuadrature) {
  for (double z : {-6.0, -3.0, -1.5, -0.3, 0.0, 0.7, 2.0, 4.5}) {
    EXPECT_NEAR(normal_cdf(z), phi_quadrature(z), 1e-12) << "z = " << z;
  }
}

TEST(NormalCdf, TailsStayAccurate) {
  // erfc keeps relative accuracy deep in the lower tail.
  EXPECT_NEAR(normal_cdf(-20.0) / 2.7536241186062336951e-89, 1.0, 1e-12);
  EXPECT_EQ(normal_cdf(40.0), 1.0);
}

TEST(GaussianClassTask, ValidateRejectsBadParameters) {
  GaussianClassTask t;
  t.sigma = 0.0;
  EXPECT_THROW(t.validate(), ConfigError);
  t.sigma = 1.0;
  t.prior_pos = 1.5;
  EXPECT_THROW(t.validate(), ConfigError);
  t.prior_pos = -0.1;
  EXPECT_THROW(t.validate(), ConfigError);
  t.prior_pos = 1.0;
  EXPECT_NO_THROW(t.validate());
}

TEST(GaussianClassTask, DoubleFlipIsIdentity) {
  const auto a = presets::task_a();
  EXPECT_EQ(flip(flip(a)), a);
  EXPECT_EQ(flip(a).effective_mu_pos(), a.effective_mu_neg());
  EXPECT_EQ(presets::fig3a_task_b(), flip(a));
}

TEST(TaskSequence, SwitchesOnPeriodBoundaries) {
  const auto seq = presets::fig3a();
  EXPECT_EQ(seq.phase_name(0), "A");
  EXPECT_EQ(seq.phase_name(499), "A");
  EXPECT_EQ(seq.phase_name(500), "B");
  EXPECT_EQ(seq.phase_name(999), "B");
  EXPECT_EQ(seq.phase_name(1000), "A");
  EXPECT_EQ(seq.task_at(499), presets::task_a());
  EXPECT_EQ(seq.task_at(500), presets::fig3a_task_b());
  EXPECT_EQ(seq.cycle_length(), 1000);
}

TEST(TaskSequence, SinglePhaseIsConstant) {
  const auto seq = presets::constant();
  for (TimeStep t : {0, 1, 499, 500, 12345, 1000000}) {
    EXPECT_EQ(seq.task_at(t), presets::task_a());
  }
}

TEST(TaskSequence, GeneralPhaseCount) {
  const TaskSequence seq({presets::task_a(), presets::fig3b_task_b(), flip(presets::task_a())},
                         10);
  EXPECT_EQ(seq.phase_index(29), 2u);
  EXPECT_EQ(seq.phase_index(30), 0u);
  EXPECT_EQ(seq.names().size(), 3u);
}

TEST(TaskSequence, RejectsBadConstruction) {
  EXPECT_THROW(TaskSequence({presets::task_a()}, 0), ConfigError);
  EXPECT_THROW(TaskSequence({}, 10), ConfigError);
}

TEST(TaskSequence, Fig3bMeans) {
  const auto b = presets::fig3b_task_b();
  EXPECT_EQ(b.effective_mu_pos(), (Vec2{1.0, -1.0}));
  EXPECT_EQ(b.effective_mu_neg(), (Vec2{-1.0, 1.0}));
}

TEST(Sample, DeterministicUnderFixedSeed) {
  Rng r1(42), r2(42);
  const auto a = sample(presets::task_a(), r1, 2);
  const auto b = sample(presets::task_a(), r2, 2);
  EXPECT_EQ(a, b);
}

TEST(Sample, ClassMeansConverge) {
  Rng rng(1);
  const auto samples = sample(presets::task_a(), rng, 1000000);
  Vec2 sum{0.0, 0.0};
  std::size_t pos = 0;
  for (const auto& s : samples) {
    if (s.y == 1) {
      sum = sum + s.x;
      ++pos;
    }
  }
  EXPECT_NEAR(sum[0] / pos, 1.0, 0.01);
  EXPECT_NEAR(sum[1] / pos, 1.0, 0.01);
  // Binomial label count within 4 standard errors.
  EXPECT_NEAR(static_cast<double>(pos) / samples.size(), 0.5, 4 * 0.0005);
}

TEST(Sample, FlippedTaskSwapsClassMeans) {
  Rng rng(2);
  const auto samples = sample(presets::fig3a_task_b(), rng, 200000);
  double sum = 0.0;
  std::size_t pos = 0;
  for (const auto& s : samples) {
    if (s.y == 1) {
      sum += s.x[0];
      ++pos;
    }
  }
  EXPECT_NEAR(sum / pos, -1.0, 0.02);
}

TEST(Sample, DegeneratePriorGivesOneLabel) {
  GaussianClassTask t = presets::task_a();
  t.prior_pos = 1.0;
  Rng rng(3);
  for (const auto& s : sample(t, rng, 100)) EXPECT_EQ(s.y, 1);
}

TEST(Sample, CarriesTimeStamp) {
  Rng rng(3);
  for (const auto& s : sample(presets::task_a(), rng, 3, 77)) EXPECT_EQ(s.t, 77);
}

TEST(SampleStream, FollowsTheSequence) {
  const auto seq = presets::fig3a(5);
  SampleStream stream(seq, 9, 2);
  for (TimeStep t = 0; t < 20; ++t) {
    const auto batch = stream.next();
    ASSERT_EQ(batch.size(), 2u);
    for (const auto& s : batch) EXPECT_EQ(s.t, t);
  }
  EXPECT_EQ(stream.next_time(), 20);
}

TEST(BayesHypothesis, ClosedForms) {
  const auto ha = bayes_hypothesis(presets::task_a());
  EXPECT_EQ(ha.w, (Vec2{2.0, 2.0}));
  EXPECT_EQ(ha.b, 0.0);
  const auto hb = bayes_hypothesis(presets::fig3b_task_b());
  EXPECT_EQ(hb.w, (Vec2{2.0, -2.0}));
  EXPECT_EQ(hb.b, 0.0);
}

TEST(BayesHypothesis, SymmetricMeansHaveZeroBias) {
  GaussianClassTask t{{0.3, -1.7}, {-0.3, 1.7}, 2.0, 0.5, LabelConvention::kNormal};
  EXPECT_EQ(bayes_hypothesis(t).b, 0.0);
}

TEST(BayesHypothesis, PriorShiftsBias) {
  GaussianClassTask t = presets::task_a();
  t.prior_pos = 0.8;
  const auto h = bayes_hypothesis(t);
  EXPECT_NEAR(h.b, std::log(0.8 / 0.2), 1e-15);
}

TEST(BayesHypothesis, DegenerateTaskThrows) {
  GaussianClassTask t{{1.0, 1.0}, {1.0, 1.0}, 1.0, 0.5, LabelConvention::kNormal};
  EXPECT_THROW(bayes_hypothesis(t), DegenerateTaskError);
}

TEST(BayesHypothesis, BeatsRandomHypotheses) {
  const auto a = presets::task_a();
  const double best = analytic_risk(bayes_hypothesis(a), a);
  Rng rng(11);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const LinearHypothesis h{{nd(rng), nd(rng)}, nd(rng)};
    EXPECT_LE(best, analytic_risk(h, a) + 1e-15);
  }
  Rng mc(12);
  EXPECT_NEAR(mc_risk(bayes_hypothesis(a), a, 1000000, mc), kPhiMinusSqrt2, 0.0008);
}

TEST(BayesRisk, ClosedForms) {
  EXPECT_NEAR(bayes_risk(presets::task_a()), kPhiMinusSqrt2, 1e-15);
  EXPECT_NEAR(bayes_risk(presets::fig3b_task_b()), kPhiMinusSqrt2, 1e-15);
  GaussianClassTask same{{1.0, 1.0}, {1.0, 1.0}, 1.0, 0.5, LabelConvention::kNormal};
  EXPECT_EQ(bayes_risk(same), 0.5);
}

TEST(BayesRisk, UnequalPriorsMatchAnalyticRiskOfBayesRule) {
  GaussianClassTask t = presets::task_a();
  t.prior_pos = 0.3;
  // Independent evaluation of the Bayes rule risk via the 1-D projection.
  const double d = 2.0 * std::sqrt(2.0);
  const double c = std::log(0.7 / 0.3) / d;
  const double expected = 0.3 * phi_quadrature(c - d / 2) + 0.7 * phi_quadrature(-c - d / 2);
  EXPECT_NEAR(bayes_risk(t), expected, 1e-11);
}

TEST(BayesRisk, IncreasesTowardChanceWithSigma) {
  GaussianClassTask t = presets::task_a();
  double prev = 0.0;
  for (double sigma = 0.25; sigma <= 256.0; sigma *= 2.0) {
    t.sigma = sigma;
    const double r = bayes_risk(t);
    EXPECT_GT(r, prev);
    EXPECT_LT(r, 0.5);
    prev = r;
  }
  EXPECT_NEAR(prev, 0.5, 0.005);
}

TEST(MixSeed, DistinctAndDeterministic) {
  EXPECT_EQ(mix_seed(1, 0), mix_seed(1, 0));
  EXPECT_NE(mix_seed(1, 0), mix_seed(1, 1));
  EXPECT_NE(mix_seed(1, 0), mix_seed(2, 0));
}

}  // namespace
}  // namespace prolearn
