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

#include "prolearn/hypothesis_sequence.hpp"

#include <utility>

#include "prolearn/errors.hpp"

namespace prolearn {

HypothesisSequence HypothesisSequence::constant(const LinearHypothesis& h) {
  HypothesisSequence seq;
  seq.slots_ = {h};
  return seq;
}

HypothesisSequence HypothesisSequence::periodic(
    std::vector<LinearHypothesis> slots, TimeStep period, TimeStep anchor) {
  if (slots.empty()) throw ConfigError("periodic sequence needs a slot");
  if (period <= 0) throw ConfigError("period must be positive");
  HypothesisSequence seq;
  seq.slots_ = std::move(slots);
  seq.period_ = period;
  seq.anchor_ = anchor;
  return seq;
}

std::size_t HypothesisSequence::slot_at(TimeStep t) const {
  if (slots_.size() == 1) return 0;
  const auto k = static_cast<TimeStep>(slots_.size());
  return static_cast<std::size_t>(pos_mod(floor_div(t - anchor_, period_), k));
}

const LinearHypothesis& HypothesisSequence::at(TimeStep t) const {
  return slots_[slot_at(t)];
}

}  // namespace prolearn
