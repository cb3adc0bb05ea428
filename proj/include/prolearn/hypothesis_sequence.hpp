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

#ifndef PROLEARN_HYPOTHESIS_SEQUENCE_HPP_
#define PROLEARN_HYPOTHESIS_SEQUENCE_HPP_

#include <vector>

#include "prolearn/types.hpp"

namespace prolearn {

// A total map t -> hypothesis. Either constant, or a periodic schedule in
// which slot ((floor((t - anchor) / period)) mod slots.size()) is active.
class HypothesisSequence {
 public:
  HypothesisSequence() : slots_{LinearHypothesis{}} {}
  static HypothesisSequence constant(const LinearHypothesis& h);
  static HypothesisSequence periodic(std::vector<LinearHypothesis> slots,
                                     TimeStep period, TimeStep anchor = 0);

  const LinearHypothesis& at(TimeStep t) const;
  std::size_t slot_at(TimeStep t) const;

  bool is_constant() const { return slots_.size() == 1; }
  const std::vector<LinearHypothesis>& slots() const { return slots_; }
  TimeStep period() const { return period_; }
  TimeStep anchor() const { return anchor_; }

 private:
  std::vector<LinearHypothesis> slots_;
  TimeStep period_ = 1;
  TimeStep anchor_ = 0;
};

// Floor division / non-negative modulo helpers shared by schedules.
inline TimeStep floor_div(TimeStep a, TimeStep b) {
  TimeStep q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline TimeStep pos_mod(TimeStep a, TimeStep b) {
  const TimeStep r = a % b;
  return r < 0 ? r + b : r;
}

}  // namespace prolearn

#endif  // PROLEARN_HYPOTHESIS_SEQUENCE_HPP_
