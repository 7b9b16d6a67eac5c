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

#include <span>
#include <string>
#include <vector>

#include "gep/instance.hpp"
#include "gep/lp_problem.hpp"
#include "gep/partition.hpp"
#include "gep/solver.hpp"

namespace gep {

// Installed capacities and build indicators.
struct InvestmentDecision {
  std::vector<double> x_g;  // MW per generator
  std::vector<double> x_s;  // MW per storage
  std::vector<int> b_g;
  std::vector<int> b_s;

  // b = 0 => x = 0 and b = 1 => x in [x_min, x_max], within `tol` MW.
  void validate(const GepInstance& inst, double tol = 1e-7) const;
  static InvestmentDecision none(const GepInstance& inst);
};

// Operational variables over `steps` time steps (|T| for full-resolution
// schedules, K for aggregated ones). Matrices are indexed [unit][step].
struct DispatchSchedule {
  int steps = 0;
  std::vector<std::vector<double>> p_g;
  std::vector<std::vector<double>> e_s;
  std::vector<std::vector<double>> p_c;
  std::vector<std::vector<double>> p_d;
  std::vector<double> e_ns;

  static DispatchSchedule zeros(int generators, int storages, int steps);
};

// Per-step data of an expansion model. The full model uses the raw series
// with unit weights; the aggregated model uses block means with weight and
// duration T_k; the day-sampling surrogate uses raw series on the sampled
// steps with an operating-cost weight per step.
struct ModelLayout {
  std::vector<double> demand;
  std::vector<std::vector<double>> capacity_factors;  // [g][step]
  std::vector<double> cost_weight;  // multiplies every operating-cost term
  std::vector<double> duration;     // storage-dynamics multiplier, in steps

  int steps() const { return static_cast<int>(demand.size()); }
  static ModelLayout full(const GepInstance& inst);
};

// Row tags, in the order rows are emitted per step:
//   balance[k], gen_lim[g,k], sto_lim[n,k], chg_lim[n,k], dis_lim[n,k],
//   dyn[n,k] (k < K-1), then init[n] and inv_lo_g[g], inv_hi_g[g],
//   inv_lo_s[n], inv_hi_s[n].
// Variable names: x_g[g], x_s[n], b_g[g], b_s[n], p_g[g,k], e_s[n,k],
// p_c[n,k], p_d[n,k], e_ns[k].
LpProblem build_model(const GepInstance& inst, const ModelLayout& layout);

LpProblem build_full_model(const GepInstance& inst);
LpProblem build_aggregated_model(const GepInstance& inst, const Partition& part);

// Clears integrality; binaries keep their [0, 1] bounds.
LpProblem relax_binaries(const LpProblem& p);

// Substitutes x_g, x_s, b_g, b_s by constants. Rows left with no variable
// are checked and dropped; rows left with a single variable become bounds
// on that variable. The result is an LP over dispatch variables only.
LpProblem fix_investments(const LpProblem& p, const InvestmentDecision& inv);

DispatchSchedule extract_dispatch(const LpProblem& p, std::span<const double> primal);
DispatchSchedule extract_dispatch(const LpProblem& p, const SolveResult& result);

// Reads x/b values of a model solution, snapping b to {0, 1} and x into the
// admissible range of the owning spec.
InvestmentDecision extract_investments(const GepInstance& inst, const LpProblem& p,
                                       std::span<const double> primal);

// Objective (1) evaluated at a full-resolution point.
double full_objective(const GepInstance& inst, const InvestmentDecision& inv,
                      const DispatchSchedule& dispatch);

struct FeasibilityReport {
  double max_residual = 0.0;
  std::string worst_constraint;
};

// Evaluates every constraint of the full-scale model at the given point.
FeasibilityReport check_full_feasibility(const GepInstance& inst,
                                         const InvestmentDecision& inv,
                                         const DispatchSchedule& dispatch);

}  // namespace gep
