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

#ifndef PROLEARN_ERRORS_HPP_
#define PROLEARN_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace prolearn {

// Invalid experiment configuration or invalid arguments to an operation.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// A task whose class means coincide has no informative direction.
class DegenerateTaskError : public std::domain_error {
 public:
  explicit DegenerateTaskError(const std::string& what)
      : std::domain_error(what) {}
};

// The ERM solver hit its iteration cap without meeting the gradient tolerance.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace prolearn

#endif  // PROLEARN_ERRORS_HPP_
