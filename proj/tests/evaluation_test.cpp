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
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "prolearn/errors.hpp"
#include "prolearn/evaluation.hpp"
#include "prolearn/task_model.hpp"

namespace prolearn {
namespace {

// mpmath.ncdf at 40 digits.
constexpr double kPhiMinusSqrt2 = 0.07864960352514256532938968245869537035197;
constexpr double kPhiMinusOne = 0.1586552539314570514147674543679620775221;
constexpr double kOneMinusPhiMinusSqrt2 = 0.921350396474857434670610317541304629648;

TEST(AnalyticRisk, ClosedFormValues) {
  const LinearHypothesis diag{{1.0, 1.0}, 0.0};
  EXPECT_NEAR(analytic_risk(diag, presets::task_a()), kPhiMinusSqrt2, 1e-15);
  EXPECT_NEAR(analytic_risk(diag, presets::fig3a_task_b()), kOneMinusPhiMinusSqrt2, 1e-15);
  const LinearHypothesis axis{{1.0, 0.0}, 0.0};
  EXPECT_NEAR(analytic_risk(axis, presets::task_a()), kPhiMinusOne, 1e-15);
  EXPECT_NEAR(analytic_risk(axis, presets::fig3b_task_b()), kPhiMinusOne, 1e-15);
}

TEST(AnalyticRisk, ZeroWeightsIsConstantClassifier) {
  GaussianClassTask t = presets::task_a();
  t.prior_pos = 0.3;
  EXPECT_DOUBLE_EQ(analytic_risk(LinearHypothesis{{0, 0}, 0.0}, t), 0.7);
  EXPECT_DOUBLE_EQ(analytic_risk(LinearHypothesis{{0, 0}, -1.0}, t), 0.3);
}

struct RiskCase {
  LinearHypothesis h;
  GaussianClassTask task;
};

TEST(AnalyticRisk, AgreesWithMonteCarlo) {
  const std::vector<RiskCase> cases = {
      {{{1.0, 1.0}, 0.0}, presets::task_a()},
      {{{0.3, -1.2}, 0.4}, presets::fig3b_task_b()},
      {{{-0.5, 2.0}, -1.0}, {{0.5, 1.5}, {-1.0, 0.0}, 1.7, 0.25, LabelConvention::kNormal}},
      {{{2.0, 0.1}, 0.7}, {{1.0, -1.0}, {0.0, 0.5}, 0.6, 0.8, LabelConvention::kFlipped}},
  };
  const std::size_t n = 400000;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    Rng rng(100 + i);
    const double exact = analytic_risk(cases[i].h, cases[i].task);
    const double mc = mc_risk(cases[i].h, cases[i].task, n, rng);
    const double se = std::sqrt(exact * (1 - exact) / n);
    EXPECT_LT(std::abs(mc - exact), 3 * se) << "case " << i;
  }
}

TEST(McRisk, IndistinguishableClassesAreChance) {
  const GaussianClassTask same{{0.5, 0.5}, {0.5, 0.5}, 1.0, 0.5, LabelConvention::kNormal};
  Rng rng(5);
  EXPECT_NEAR(mc_risk(LinearHypothesis{{1.0, -0.5}, 0.2}, same, 1000000, rng), 0.5, 0.0015);
}

TEST(McRisk, SameSeedSameEstimate) {
  Rng r1(9), r2(9);
  const LinearHypothesis h{{1.0, 0.2}, 0.0};
  EXPECT_EQ(mc_risk(h, presets::task_a(), 5000, r1), mc_risk(h, presets::task_a(), 5000, r2));
}

TEST(McRisk, RejectsZeroSamples) {
  Rng rng(1);
  EXPECT_THROW(mc_risk(LinearHypothesis{}, presets::task_a(), 0, rng), ConfigError);
}

TEST(RiskIdentities, FlipScalingAndNoFreeLunch) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> nd(0.0, 1.5);
  const auto a = presets::task_a();
  const auto b = presets::fig3a_task_b();
  const double ulp = std::numeric_limits<double>::epsilon();
  for (int i = 0; i < 1000; ++i) {
    const LinearHypothesis h{{nd(gen), nd(gen)}, nd(gen)};
    const LinearHypothesis neg{{-h.w[0], -h.w[1]}, -h.b};
    // Flipping the labels is the same as negating the hypothesis.
    EXPECT_EQ(analytic_risk(h, b), analytic_risk(neg, a));
    EXPECT_NEAR(analytic_risk(h, a) + analytic_risk(h, b), 1.0, 4 * ulp);
    EXPECT_GE(std::max(analytic_risk(h, a), analytic_risk(h, b)), 0.5 - 2 * ulp);
    for (double k : {0.125, 4.0, 65536.0}) {
      const LinearHypothesis hk{{k * h.w[0], k * h.w[1]}, k * h.b};
      EXPECT_EQ(analytic_risk(hk, a), analytic_risk(h, a));
    }
    const double alpha = 0.1 + std::abs(nd(gen));
    const LinearHypothesis ha{{alpha * h.w[0], alpha * h.w[1]}, alpha * h.b};
    EXPECT_NEAR(analytic_risk(ha, a), analytic_risk(h, a), 1e-14);
  }
}

TEST(ReferenceSequence, StrongAndWeakRisks) {
  const auto seq = presets::fig3a();
  const ReferenceSequence strong(seq, ReferenceKind::kStrong);
  const ReferenceSequence weak(seq, ReferenceKind::kWeak);
  for (TimeStep t : {0, 499, 500, 1234, 9999}) {
    EXPECT_NEAR(strong.risk_at(t), kPhiMinusSqrt2, 1e-15);
    EXPECT_EQ(weak.risk_at(t), 0.5);
  }
  EXPECT_EQ(strong.hypotheses().at(700), bayes_hypothesis(seq.phases()[1]));
  EXPECT_TRUE(reference_sequence(presets::constant(), ReferenceKind::kStrong)
                  .hypotheses()
                  .is_constant());
}

TEST(ReferenceSequence, DegenerateTaskPropagates) {
  const GaussianClassTask same{{1.0, 1.0}, {1.0, 1.0}, 1.0, 0.5, LabelConvention::kNormal};
  EXPECT_THROW(ReferenceSequence(TaskSequence({same}, 10), ReferenceKind::kStrong),
               DegenerateTaskError);
}

TEST(ReferenceKind, Names) {
  EXPECT_EQ(reference_kind_from_string("weak"), ReferenceKind::kWeak);
  EXPECT_EQ(to_string(ReferenceKind::kStrong), "strong");
  EXPECT_THROW(reference_kind_from_string("medium"), ConfigError);
}

TEST(RiskTraceCsv, HeaderAndFixedDecimals) {
  RiskTrace trace;
  trace.entries.push_back({0, "ogd", "A", 0.5, 0.5 - kPhiMinusSqrt2});
  trace.entries.push_back({1, "ogd", "B", 1.0 / 3.0, -0.0000004});
  std::ostringstream os;
  write_risk_trace_csv(os, trace);
  EXPECT_EQ(os.str(),
            "t,learner,task,risk,risk_gap\n"
            "0,ogd,A,0.500000,0.421350\n"
            "1,ogd,B,0.333333,0.000000\n");
}

ProspectiveOptions quick_options() {
  ProspectiveOptions o;
  o.t_prime = 1200;
  o.horizon_T = 2200;
  o.n_trials = 8;
  return o;
}

TEST(ProspectiveOptions, Validation) {
  auto o = quick_options();
  o.epsilon = 0.0;
  EXPECT_THROW(o.validate(), ConfigError);
  o = quick_options();
  o.horizon_T = o.t_prime;
  EXPECT_THROW(o.validate(), ConfigError);
  o = quick_options();
  o.delta = 1.0;
  EXPECT_THROW(o.validate(), ConfigError);
  o = quick_options();
  o.n_trials = 0;
  EXPECT_THROW(o.validate(), ConfigError);
}

TEST(ProspectiveOptions, DefaultHorizonIsTenCycles) {
  ProspectiveOptions o;
  o.t_prime = 3000;
  EXPECT_EQ(o.resolved_horizon(presets::fig3a()), 3000 + 10 * 1000);
  o.horizon_T = 8000;
  EXPECT_EQ(o.resolved_horizon(presets::fig3a()), 8000);
}

TEST(ProspectiveScore, ReferenceLearnerScoresOne) {
  const auto seq = presets::fig3a();
  const LearnerConfig ref{.id = "ref", .kind = LearnerKind::kReference};
  const auto rep = prospective_score(ref, seq, quick_options());
  EXPECT_EQ(rep.score, 1.0);
  EXPECT_TRUE(rep.verdict);
  EXPECT_EQ(rep.n_samples, 1201);
}

TEST(ProspectiveScore, VerdictMatchesScore) {
  const auto seq = presets::fig3a();
  for (auto kind : {LearnerKind::kOgd, LearnerKind::kOracleProspective}) {
    const auto rep = prospective_score(LearnerConfig{.id = "x", .kind = kind}, seq, quick_options());
    EXPECT_GE(rep.score, 0.0);
    EXPECT_LE(rep.score, 1.0);
    EXPECT_EQ(rep.verdict, rep.score >= 1.0 - rep.delta);
  }
}

TEST(ProspectiveScore, MonotoneInEpsilon) {
  const auto seq = presets::fig3a();
  auto o = quick_options();
  const auto trials =
      run_frozen_trials(LearnerConfig{.id = "f", .kind = LearnerKind::kFtl}, seq, o,
                        stream_factory(seq));
  const ReferenceSequence ref(seq, ReferenceKind::kStrong);
  double prev = 1.0;
  for (double eps : {0.6, 0.45, 0.3, 0.1, 0.05, 0.02, 0.005}) {
    const double s = score_trials(trials, ref, eps);
    EXPECT_LE(s, prev) << "eps " << eps;
    prev = s;
  }
}

TEST(ProspectiveScore, NoLeakagePastTPrime) {
  const auto seq = presets::fig3a();
  const auto o = quick_options();
  const auto honest = stream_factory(seq);
  // Same stream up to t', adversarial samples afterwards.
  const SourceFactory poisoned = [&](std::uint64_t seed) -> StepSource {
    auto inner = honest(seed);
    auto t = std::make_shared<TimeStep>(0);
    return [inner, t, tp = o.t_prime]() mutable {
      auto batch = inner();
      if ((*t)++ > tp) {
        for (auto& s : batch) s = LabeledSample{s.t, {100.0, -100.0}, -s.y};
      }
      return batch;
    };
  };
  for (auto kind : {LearnerKind::kFtl, LearnerKind::kAdaptiveProspective}) {
    const LearnerConfig lc{.id = "x", .kind = kind};
    const auto a = run_frozen_trials(lc, seq, o, honest);
    const auto b = run_frozen_trials(lc, seq, o, poisoned);
    EXPECT_EQ(a.risks, b.risks);
  }
}

TEST(ProspectiveScore, IndependentOfWorkerCount) {
  const auto seq = presets::fig3b();
  auto o = quick_options();
  const LearnerConfig lc{.id = "o", .kind = LearnerKind::kOracleProspective};
  o.workers = 1;
  const auto one = run_frozen_trials(lc, seq, o, stream_factory(seq));
  o.workers = 3;
  const auto three = run_frozen_trials(lc, seq, o, stream_factory(seq));
  EXPECT_EQ(one.risks, three.risks);
}

TEST(ProspectiveScore, WeakReferenceSidedness) {
  const auto seq = presets::fig3b();
  auto o = quick_options();
  o.t_prime = 2000;
  o.horizon_T = 3000;
  o.reference = ReferenceKind::kWeak;
  const LearnerConfig ftl{.id = "ftl", .kind = LearnerKind::kFtl};
  EXPECT_TRUE(prospective_score(ftl, seq, o).verdict);
  o.two_sided_weak = true;
  const auto literal = prospective_score(ftl, seq, o);
  EXPECT_FALSE(literal.verdict);
  EXPECT_EQ(literal.score, 0.0);
}

TEST(ProspectiveScore, ConstantSequenceIsPac) {
  const auto seq = presets::constant();
  auto o = quick_options();
  o.t_prime = 300;
  o.horizon_T = 800;
  o.epsilon = 0.01;
  o.n_trials = 12;
  const LearnerConfig lc{.id = "ftl", .kind = LearnerKind::kFtl};
  const auto trials = run_frozen_trials(lc, seq, o, stream_factory(seq));
  const double bayes = bayes_risk(seq.phases()[0]);
  int hits = 0;
  for (const auto& tr : trials.risks) {
    for (double r : tr) ASSERT_EQ(r, tr.front());
    hits += std::abs(tr.front() - bayes) < o.epsilon;
  }
  EXPECT_DOUBLE_EQ(score_trials(trials, ReferenceSequence(seq, ReferenceKind::kStrong), o.epsilon),
                   static_cast<double>(hits) / o.n_trials);
}

TEST(SweepTBar, ReferenceAndOgdAndOracle) {
  const auto seq = presets::fig3a();
  ProspectiveOptions o;
  o.t_prime = 250;
  o.horizon_T = 1250;
  o.n_trials = 6;
  const std::vector<TimeStep> grid{250, 500, 1000, 2000};

  const auto ref = sweep_t_bar(LearnerConfig{.id = "r", .kind = LearnerKind::kReference}, seq,
                               grid, o);
  ASSERT_TRUE(ref.t_bar_estimate);
  EXPECT_EQ(*ref.t_bar_estimate, 250);
  ASSERT_EQ(ref.grid.size(), grid.size());
  // The horizon span is kept at every grid point.
  EXPECT_EQ(ref.grid.back().horizon_T, 3000);

  const auto ogd = sweep_t_bar(LearnerConfig{.id = "g", .kind = LearnerKind::kOgd}, seq, grid, o);
  EXPECT_FALSE(ogd.t_bar_estimate);

  const auto oracle = sweep_t_bar(
      LearnerConfig{.id = "o", .kind = LearnerKind::kOracleProspective}, seq, grid, o);
  ASSERT_TRUE(oracle.t_bar_estimate);
  EXPECT_GE(*oracle.t_bar_estimate, seq.cycle_length());
}

TEST(SweepTBar, RejectsBadGrids) {
  const auto seq = presets::fig3a();
  const LearnerConfig lc{.id = "r", .kind = LearnerKind::kReference};
  EXPECT_THROW(sweep_t_bar(lc, seq, {}, quick_options()), ConfigError);
  EXPECT_THROW(sweep_t_bar(lc, seq, {500, 400}, quick_options()), ConfigError);
}

TEST(ProspectiveReport, JsonFields) {
  ProspectiveReport rep;
  rep.learner = "oracle";
  rep.epsilon = 0.05;
  rep.delta = 0.1;
  rep.t_prime = 3000;
  rep.horizon_T = 8000;
  rep.n_trials = 20;
  rep.score = 0.95;
  rep.verdict = true;
  const auto j = nlohmann::json::parse(rep.to_json());
  EXPECT_EQ(j.at("protocol"), "frozen");
  EXPECT_EQ(j.at("reference"), "strong");
  EXPECT_EQ(j.at("verdict"), true);
  EXPECT_TRUE(j.at("t_bar_estimate").is_null());
  EXPECT_EQ(j.at("weak_test"), "one_sided");
}

}  // namespace
}  // namespace prolearn
