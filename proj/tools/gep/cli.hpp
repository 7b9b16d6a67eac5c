// Copyright 2026 The gep-tsa Authors
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

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gep::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitSolver = 3;

// Runs one command; `args` excludes the program name. Outputs go below
// --out, which defaults to $GEP_OUTPUT_DIR and then to the working directory.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// 100 (1 - clusters / horizon).
double reduction_percent(int clusters, int horizon);

}  // namespace gep::cli
