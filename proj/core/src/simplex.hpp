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
#include <limits>
#include <vector>

#include "basis_factor.hpp"
#include "gep/lp_problem.hpp"

namespace gep::detail {

// Computational form: columns [A | -I] with every row i carrying a logical
// variable r_i = a_i x bounded by the row sense, so that A x - r = 0.
// Column j < n is structural, column n + i is the logical of row i.
struct LpModel {
  int m = 0;
  int n = 0;
  CscMatrix a;
  CsrMatrix a_rows;
  std::vector<double> cost;   // size n + m
  std::vector<double> lower;  // size n + m
  std::vector<double> upper;  // size n + m
  double offset = 0.0;
};

LpModel make_model(const LpProblem& p);

enum class VarState : std::uint8_t { kBasic, kLower, kUpper, kFree, kSuper };

struct WarmStart {
  std::vector<int> basic;
  std::vector<VarState> state;
};

enum class LpOutcome { kOptimal, kInfeasible, kUnbounded, kIterationLimit, kCutoff };

struct SimplexOptions {
  double primal_tol = 1e-7;
  double dual_tol = 1e-7;
  double pivot_tol = 1e-9;
  long iteration_limit = std::numeric_limits<long>::max();
  int stall_threshold = 200;
  int refactor_interval = 100;
};

// Bounded revised simplex. The dual method drives the search; a primal
// phase-2 pass cleans up after cost shifting or temporary bounds.
class Simplex {
 public:
  Simplex(const LpModel& model, SimplexOptions options);

  void set_bounds(int j, double lower, double upper);
  double lower(int j) const { return lower_[j]; }
  double upper(int j) const { return upper_[j]; }
  // Stop early with kCutoff once the dual objective exceeds `cutoff`.
  void set_cutoff(double cutoff) { cutoff_ = cutoff; }

  void load(const WarmStart& start);
  WarmStart save() const;

  LpOutcome solve();

  double objective() const;
  std::vector<double> primal() const;
  std::vector<double> row_duals() const { return y_; }
  std::vector<double> reduced_costs() const;
  long iterations() const { return iterations_; }
  long refactorizations() const { return refactorizations_; }

 private:
  void slack_basis();
  void place_nonbasics();
  void refactor();
  void compute_primal();
  void compute_duals();
  double nonbasic_value(int j) const;
  double dual_tol(int j) const;
  bool is_boxed(int j) const;

  // Flips boxed variables and shifts costs of the others so that every
  // nonbasic reduced cost has the right sign. Returns true if a primal
  // recomputation is needed.
  bool repair_dual_feasibility(bool allow_artificial);
  bool remove_artificial_bounds();
  void remove_cost_shifts();
  bool has_dual_infeasibility() const;
  bool primal_feasible() const;

  LpOutcome dual_phase();
  LpOutcome primal_phase();

  int choose_leaving(bool bland) const;
  void compute_pivot_row(int r);
  void column(int j, std::vector<double>& out) const;

  const LpModel& model_;
  SimplexOptions opt_;
  BasisFactor factor_;
  double cutoff_ = kInfinity;

  std::vector<double> lower_, upper_;
  std::vector<double> cost_;   // model cost plus shifts
  std::vector<char> shifted_;
  std::vector<char> artificial_lower_, artificial_upper_;
  bool any_shift_ = false;
  bool any_artificial_ = false;

  bool has_basis_ = false;
  std::vector<int> head_;             // basis position -> column
  std::vector<int> position_;         // column -> basis position or -1
  std::vector<VarState> state_;
  std::vector<double> x_;             // all n + m values
  std::vector<double> y_;             // row duals
  std::vector<double> d_;             // reduced costs
  std::vector<double> weight_;        // dual steepest-edge weights

  // Pivot row scratch.
  std::vector<double> rho_;
  std::vector<double> row_alpha_;
  std::vector<int> row_touched_;
  std::vector<char> row_mark_;
  std::vector<double> alpha_q_;
  std::vector<double> tau_;

  long iterations_ = 0;
  long refactorizations_ = 0;
};

}  // namespace gep::detail
