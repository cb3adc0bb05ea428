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

#include "prolearn/errors.hpp"
#include "prolearn/hypothesis_sequence.hpp"

namespace prolearn {
namespace {

const LinearHypothesis kH0{{1.0, 0.0}, 0.0};
const LinearHypothesis kH1{{0.0, 1.0}, 0.5};
const LinearHypothesis kH2{{-1.0, 0.0}, -0.5};

TEST(FloorDiv, RoundsTowardNegativeInfinity) {
  EXPECT_EQ(floor_div(7, 2), 3);
  EXPECT_EQ(floor_div(-7, 2), -4);
  EXPECT_EQ(floor_div(-8, 2), -4);
  EXPECT_EQ(pos_mod(-1, 5), 4);
  EXPECT_EQ(pos_mod(10, 5), 0);
}

TEST(HypothesisSequence, ConstantIsTotal) {
  const auto seq = HypothesisSequence::constant(kH1);
  EXPECT_TRUE(seq.is_constant());
  for (TimeStep t : {0, 1, 500, 99999}) EXPECT_EQ(seq.at(t), kH1);
}

TEST(HypothesisSequence, DefaultIsZeroHypothesis) {
  const HypothesisSequence seq;
  EXPECT_EQ(seq.at(5), LinearHypothesis{});
}

TEST(HypothesisSequence, PeriodicAlternates) {
  const auto seq = HypothesisSequence::periodic({kH0, kH1}, 500);
  EXPECT_EQ(seq.at(0), kH0);
  EXPECT_EQ(seq.at(499), kH0);
  EXPECT_EQ(seq.at(500), kH1);
  EXPECT_EQ(seq.at(1000), kH0);
  EXPECT_EQ(seq.at(3500), kH1);
}

TEST(HypothesisSequence, AnchorShiftsTheSchedule) {
  const auto seq = HypothesisSequence::periodic({kH0, kH1, kH2}, 10, 3);
  EXPECT_EQ(seq.slot_at(3), 0u);
  EXPECT_EQ(seq.slot_at(12), 0u);
  EXPECT_EQ(seq.slot_at(13), 1u);
  EXPECT_EQ(seq.slot_at(23), 2u);
  EXPECT_EQ(seq.slot_at(33), 0u);
  // Times before the anchor wrap backwards.
  EXPECT_EQ(seq.slot_at(2), 2u);
}

TEST(HypothesisSequence, RejectsInvalidSchedules) {
  EXPECT_THROW(HypothesisSequence::periodic({}, 10), ConfigError);
  EXPECT_THROW(HypothesisSequence::periodic({kH0}, 0), ConfigError);
}

TEST(LinearHypothesis, TiesPredictPositive) {
  const LinearHypothesis h{{1.0, -1.0}, 0.0};
  EXPECT_EQ(h.predict({2.0, 2.0}), 1);
  EXPECT_EQ(h.predict({1.0, 2.0}), -1);
  EXPECT_EQ(LinearHypothesis{}.predict({3.0, -4.0}), 1);
}

TEST(LinearHypothesis, PositiveScalingKeepsPredictions) {
  const LinearHypothesis h{{0.7, -1.3}, 0.2};
  for (double alpha : {0.001, 0.5, 3.0, 1e6}) {
    const LinearHypothesis s{{alpha * h.w[0], alpha * h.w[1]}, alpha * h.b};
    for (int i = -20; i <= 20; ++i) {
      for (int j = -20; j <= 20; ++j) {
        const Vec2 x{0.25 * i, 0.25 * j};
        // Points numerically on the boundary are skipped.
        if (std::abs(h.score(x)) < 1e-9) continue;
        EXPECT_EQ(h.predict(x), s.predict(x));
      }
    }
  }
}

}  // namespace
}  // namespace prolearn
