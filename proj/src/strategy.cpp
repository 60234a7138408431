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

#include "zdlab/strategy.hpp"

#include <cmath>
#include <sstream>

#include "zdlab/errors.hpp"

namespace zdlab {

StrategyVector::StrategyVector(const Vec4& p, double first_move)
    : p_(p), first_move_(first_move) {
  for (int k = 0; k < 4; ++k) {
    if (!(p_[k] >= 0.0 && p_[k] <= 1.0)) {
      std::ostringstream os;
      os << "strategy component p" << (k + 1) << " = " << p_[k]
         << " outside [0,1]";
      throw InvalidArgument(os.str());
    }
  }
  if (!(first_move_ >= 0.0 && first_move_ <= 1.0)) {
    throw InvalidArgument("first-move probability outside [0,1]");
  }
}

std::string StrategyVector::to_string() const {
  std::ostringstream os;
  os.precision(12);
  os << '(' << p_[0] << ", " << p_[1] << ", " << p_[2] << ", " << p_[3] << ')';
  return os.str();
}

}  // namespace zdlab
