// Copyright 2026 The zdlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ZDLAB_ERRORS_HPP_
#define ZDLAB_ERRORS_HPP_

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace zdlab {

// Base for every error the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input that cannot be interpreted (bad probabilities, malformed spec).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A requested ZD strategy does not exist for the game: the closed form
// leaves [0,1]^4 or the parameter lies outside its feasible range.
// `violations` holds one human-readable bound per failed inequality.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, std::vector<std::string> violations)
      : Error(what), violations_(std::move(violations)) {}
  explicit InfeasibleError(const std::string& what) : Error(what) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// Operation undefined for the given parameters (e.g. delta = 1 for a
// discounted payoff, a reducible chain with no positive column).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::array<double, 4> last,
                   double residual)
      : Error(what), last_iterate_(last), residual_(residual) {}

  const std::array<double, 4>& last_iterate() const { return last_iterate_; }
  double residual() const { return residual_; }

 private:
  std::array<double, 4> last_iterate_;
  double residual_;
};

}  // namespace zdlab

#endif  // ZDLAB_ERRORS_HPP_
