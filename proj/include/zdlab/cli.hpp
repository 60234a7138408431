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

#ifndef ZDLAB_CLI_HPP_
#define ZDLAB_CLI_HPP_

#include <iostream>

namespace zdlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInfeasible = 2;

// Whole command line: argv[0] is the program name, argv[1] the subcommand.
// `in` feeds the interactive `play` loop.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err, std::istream& in = std::cin);

}  // namespace zdlab

#endif  // ZDLAB_CLI_HPP_
