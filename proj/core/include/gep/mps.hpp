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

#include <string>
#include <string_view>

#include "gep/lp_problem.hpp"

namespace gep {

enum class MpsNaming {
  // Names cut to eight characters; a collision throws StructuralError.
  kTruncate,
  // Columns C0000001..., rows R0000001..., independent of the original names.
  kIndexed,
};

// Fixed-format MPS. The objective row is `COST`; a nonzero objective offset is
// written as its negated RHS, the convention most solvers read back.
std::string export_mps(const LpProblem& p, MpsNaming naming = MpsNaming::kTruncate);

// Reads the subset written by export_mps (no RANGES, no negative upper bounds
// without a lower bound). Fields are split on whitespace, so names must not
// contain blanks. Throws IngestionError.
LpProblem import_mps(std::string_view text);

}  // namespace gep
