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

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "gep/lp_problem.hpp"

namespace gep {

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string_view to_string(SolveStatus status);

struct SolverConfig {
  double feasibility_tol = 1e-7;  // absolute, on bounds and rows
  double optimality_tol = 1e-7;   // reduced costs, relative to |cost|
  double mip_gap = 1e-6;          // relative
  double integrality_tol = 1e-6;
  long iteration_limit = 50'000'000;  // simplex pivots per LP
  long node_limit = 200'000;
  // Degenerate pivots in a row before switching to Bland's rule.
  int stall_threshold = 200;
  std::uint64_t seed = 0;
  // Branch-and-bound only: called after every node with the incumbent
  // objective (+inf before the first one) and the global lower bound.
  std::function<void(double incumbent, double bound)> on_progress;

  void validate() const;
};

struct SolveStats {
  long iterations = 0;
  long nodes = 0;
  long refactorizations = 0;
  double wall_seconds = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kIterationLimit;
  double objective = kInfinity;
  // LP: equals objective at optimality. MILP: certified lower bound on the
  // optimum (the best open-node bound when the node limit is hit).
  double bound = -kInfinity;
  std::vector<double> primal;          // aligned with LpProblem::variables()
  std::vector<double> duals;           // aligned with constraints(); LP only
  std::vector<double> reduced_costs;   // aligned with variables(); LP only
  SolveStats stats;

  bool optimal() const { return status == SolveStatus::kOptimal; }
  double value(const LpProblem& p, std::string_view name) const;
  double dual(const LpProblem& p, std::string_view tag) const;
};

// Bounded revised dual simplex. Dual values y satisfy y_i = d objective /
// d rhs_i for every row. Throws InvalidArgument if `p` carries integrality
// flags.
SolveResult solve_lp(const LpProblem& p, const SolverConfig& cfg = {});

// LP-based branch-and-bound over the binary columns of `p`: most-fractional
// branching (lowest index on ties), best-bound node selection.
SolveResult solve_milp(const LpProblem& p, const SolverConfig& cfg = {});

}  // namespace gep
