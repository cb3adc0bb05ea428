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

#ifndef PROLEARN_TYPES_HPP_
#define PROLEARN_TYPES_HPP_

#include <array>
#include <cmath>
#include <cstdint>

namespace prolearn {

using TimeStep = std::int64_t;
using Vec2 = std::array<double, 2>;

inline double dot(const Vec2& a, const Vec2& b) {
  return a[0] * b[0] + a[1] * b[1];
}
inline double norm(const Vec2& a) { return std::hypot(a[0], a[1]); }
inline Vec2 operator+(const Vec2& a, const Vec2& b) {
  return {a[0] + b[0], a[1] + b[1]};
}
inline Vec2 operator-(const Vec2& a, const Vec2& b) {
  return {a[0] - b[0], a[1] - b[1]};
}
inline Vec2 operator*(double s, const Vec2& a) { return {s * a[0], s * a[1]}; }

struct LabeledSample {
  TimeStep t = 0;
  Vec2 x{0.0, 0.0};
  int y = 1;  // +1 or -1

  friend bool operator==(const LabeledSample&, const LabeledSample&) = default;
};

// Linear classifier sign(w.x + b); a zero score is classified as +1.
struct LinearHypothesis {
  Vec2 w{0.0, 0.0};
  double b = 0.0;

  double score(const Vec2& x) const { return dot(w, x) + b; }
  int predict(const Vec2& x) const { return score(x) >= 0.0 ? 1 : -1; }

  friend bool operator==(const LinearHypothesis&,
                         const LinearHypothesis&) = default;
};

}  // namespace prolearn

#endif  // PROLEARN_TYPES_HPP_
