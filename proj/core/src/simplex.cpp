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

#include "simplex.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "gep/error.hpp"

namespace gep::detail {
namespace {

// Temporary box for columns whose reduced cost points at an infinite bound.
constexpr double kBigBox = 1e8;
constexpr double kDropTol = 1e-12;

}  // namespace

LpModel make_model(const LpProblem& p) {
  LpModel mdl;
  mdl.n = static_cast<int>(p.num_variables());
  mdl.m = static_cast<int>(p.num_constraints());
  mdl.offset = p.objective_offset();
  const int n = mdl.n;
  const int m = mdl.m;

  mdl.a.rows = m;
  mdl.a.cols = n;
  mdl.a.start.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const Constraint& c : p.constraints()) {
    for (const Term& t : c.terms) ++mdl.a.start[t.var + 1];
  }
  for (int j = 0; j < n; ++j) mdl.a.start[j + 1] += mdl.a.start[j];
  mdl.a.index.resize(mdl.a.start[n]);
  mdl.a.value.resize(mdl.a.start[n]);
  std::vector<int> fill(mdl.a.start.begin(), mdl.a.start.end() - 1);
  for (int i = 0; i < m; ++i) {
    for (const Term& t : p.constraints()[i].terms) {
      const int pos = fill[t.var]++;
      mdl.a.index[pos] = i;
      mdl.a.value[pos] = t.coef;
    }
  }
  mdl.a_rows = to_rows(mdl.a);

  mdl.cost.assign(static_cast<std::size_t>(n + m), 0.0);
  mdl.lower.assign(static_cast<std::size_t>(n + m), 0.0);
  mdl.upper.assign(static_cast<std::size_t>(n + m), 0.0);
  for (int j = 0; j < n; ++j) {
    const Variable& v = p.variables()[j];
    mdl.cost[j] = v.cost;
    mdl.lower[j] = v.lower;
    mdl.upper[j] = v.upper;
  }
  for (int i = 0; i < m; ++i) {
    const Constraint& c = p.constraints()[i];
    switch (c.sense) {
      case Sense::kEqual:
        mdl.lower[n + i] = c.rhs;
        mdl.upper[n + i] = c.rhs;
        break;
      case Sense::kLessEqual:
        mdl.lower[n + i] = -kInfinity;
        mdl.upper[n + i] = c.rhs;
        break;
      case Sense::kGreaterEqual:
        mdl.lower[n + i] = c.rhs;
        mdl.upper[n + i] = kInfinity;
        break;
    }
  }
  return mdl;
}

Simplex::Simplex(const LpModel& model, SimplexOptions options)
    : model_(model),
      opt_(options),
      factor_(model.a),
      lower_(model.lower),
      upper_(model.upper),
      cost_(model.cost) {
  const auto total = static_cast<std::size_t>(model.n + model.m);
  const auto m = static_cast<std::size_t>(model.m);
  shifted_.assign(total, 0);
  artificial_lower_.assign(total, 0);
  artificial_upper_.assign(total, 0);
  position_.assign(total, -1);
  state_.assign(total, VarState::kLower);
  x_.assign(total, 0.0);
  d_.assign(total, 0.0);
  y_.assign(m, 0.0);
  weight_.assign(m, 1.0);
  rho_.assign(m, 0.0);
  row_alpha_.assign(total, 0.0);
  row_mark_.assign(total, 0);
  alpha_q_.assign(m, 0.0);
  tau_.assign(m, 0.0);
}

void Simplex::set_bounds(int j, double lower, double upper) {
  lower_[j] = lower;
  upper_[j] = upper;
}

void Simplex::load(const WarmStart& start) {
  const int total = model_.n + model_.m;
  if (static_cast<int>(start.basic.size()) != model_.m ||
      static_cast<int>(start.state.size()) != total) {
    throw SolverError("warm start does not match the model dimensions");
  }
  head_ = start.basic;
  state_ = start.state;
  std::fill(position_.begin(), position_.end(), -1);
  for (int i = 0; i < model_.m; ++i) position_[head_[i]] = i;
  std::fill(weight_.begin(), weight_.end(), 1.0);
  has_basis_ = true;
}

WarmStart Simplex::save() const { return {head_, state_}; }

void Simplex::slack_basis() {
  const int n = model_.n;
  const int m = model_.m;
  head_.resize(static_cast<std::size_t>(m));
  std::fill(position_.begin(), position_.end(), -1);
  for (int i = 0; i < m; ++i) {
    head_[i] = n + i;
    position_[n + i] = i;
    state_[n + i] = VarState::kBasic;
  }
  for (int j = 0; j < n; ++j) {
    const bool lo = std::isfinite(lower_[j]);
    const bool up = std::isfinite(upper_[j]);
    if (cost_[j] < 0.0 && up) {
      state_[j] = VarState::kUpper;
    } else if (lo) {
      state_[j] = VarState::kLower;
    } else if (up) {
      state_[j] = VarState::kUpper;
    } else {
      state_[j] = VarState::kFree;
    }
  }
  std::fill(weight_.begin(), weight_.end(), 1.0);
  has_basis_ = true;
}

void Simplex::place_nonbasics() {
  const int total = model_.n + model_.m;
  for (int j = 0; j < total; ++j) {
    if (state_[j] == VarState::kBasic) continue;
    const bool lo = std::isfinite(lower_[j]);
    const bool up = std::isfinite(upper_[j]);
    switch (state_[j]) {
      case VarState::kLower:
        if (!lo) state_[j] = up ? VarState::kUpper : VarState::kFree;
        break;
      case VarState::kUpper:
        if (!up) state_[j] = lo ? VarState::kLower : VarState::kFree;
        break;
      case VarState::kFree:
        if (lo) state_[j] = VarState::kLower;
        else if (up) state_[j] = VarState::kUpper;
        break;
      case VarState::kSuper:
        x_[j] = std::clamp(x_[j], lower_[j], upper_[j]);
        if (lower_[j] == upper_[j]) state_[j] = VarState::kLower;
        break;
      case VarState::kBasic:
        break;
    }
    x_[j] = nonbasic_value(j);
  }
}

double Simplex::nonbasic_value(int j) const {
  switch (state_[j]) {
    case VarState::kLower:
      return lower_[j];
    case VarState::kUpper:
      return upper_[j];
    case VarState::kFree:
      return 0.0;
    case VarState::kSuper:
    case VarState::kBasic:
      return x_[j];
  }
  return 0.0;
}

double Simplex::dual_tol(int j) const {
  return opt_.dual_tol * std::max(1.0, std::abs(model_.cost[j]));
}

bool Simplex::is_boxed(int j) const {
  return std::isfinite(lower_[j]) && std::isfinite(upper_[j]);
}

void Simplex::refactor() {
  for (int attempt = 0; attempt < 4; ++attempt) {
    if (factor_.factorize(head_)) {
      ++refactorizations_;
      return;
    }
    // Swap every column left without a pivot for the logical of a free row.
    for (const auto& [pos, row] : factor_.deficient()) {
      const int out = head_[pos];
      const int logical = model_.n + row;
      position_[out] = -1;
      state_[out] = std::isfinite(lower_[out])   ? VarState::kLower
                    : std::isfinite(upper_[out]) ? VarState::kUpper
                                                 : VarState::kFree;
      x_[out] = nonbasic_value(out);
      head_[pos] = logical;
      position_[logical] = pos;
      state_[logical] = VarState::kBasic;
    }
    std::fill(weight_.begin(), weight_.end(), 1.0);
  }
  throw SolverError("basis matrix is numerically singular");
}

void Simplex::column(int j, std::vector<double>& out) const {
  std::fill(out.begin(), out.end(), 0.0);
  if (j < model_.n) {
    for (int k = model_.a.start[j]; k < model_.a.start[j + 1]; ++k) {
      out[model_.a.index[k]] = model_.a.value[k];
    }
  } else {
    out[j - model_.n] = -1.0;
  }
}

void Simplex::compute_primal() {
  const int n = model_.n;
  std::vector<double> rhs(static_cast<std::size_t>(model_.m), 0.0);
  for (int j = 0; j < n + model_.m; ++j) {
    if (state_[j] == VarState::kBasic) continue;
    const double v = x_[j];
    if (v == 0.0) continue;
    if (j < n) {
      for (int k = model_.a.start[j]; k < model_.a.start[j + 1]; ++k) {
        rhs[model_.a.index[k]] -= model_.a.value[k] * v;
      }
    } else {
      rhs[j - n] += v;
    }
  }
  factor_.ftran(rhs);
  for (int i = 0; i < model_.m; ++i) x_[head_[i]] = rhs[i];
}

void Simplex::compute_duals() {
  const int n = model_.n;
  for (int i = 0; i < model_.m; ++i) y_[i] = cost_[head_[i]];
  factor_.btran(y_);
  for (int j = 0; j < n; ++j) {
    if (state_[j] == VarState::kBasic) {
      d_[j] = 0.0;
      continue;
    }
    double dot = 0.0;
    for (int k = model_.a.start[j]; k < model_.a.start[j + 1]; ++k) {
      dot += model_.a.value[k] * y_[model_.a.index[k]];
    }
    d_[j] = cost_[j] - dot;
  }
  for (int i = 0; i < model_.m; ++i) {
    const int j = n + i;
    d_[j] = state_[j] == VarState::kBasic ? 0.0 : cost_[j] + y_[i];
  }
}

bool Simplex::repair_dual_feasibility(bool allow_artificial) {
  bool moved = false;
  const int total = model_.n + model_.m;
  for (int j = 0; j < total; ++j) {
    const VarState s = state_[j];
    if (s == VarState::kBasic || lower_[j] == upper_[j]) continue;
    const double tol = dual_tol(j);
    const double dj = d_[j];
    const bool wants_up = dj < -tol;    // objective falls as x_j grows
    const bool wants_down = dj > tol;   // objective falls as x_j shrinks
    if (s == VarState::kLower && !wants_up) continue;
    if (s == VarState::kUpper && !wants_down) continue;
    if ((s == VarState::kFree || s == VarState::kSuper) && !wants_up && !wants_down) continue;

    if (wants_up && std::isfinite(upper_[j])) {
      state_[j] = VarState::kUpper;
      x_[j] = upper_[j];
      moved = true;
    } else if (wants_down && std::isfinite(lower_[j])) {
      state_[j] = VarState::kLower;
      x_[j] = lower_[j];
      moved = true;
    } else if (allow_artificial) {
      if (wants_up) {
        upper_[j] = std::max(kBigBox, x_[j] + kBigBox);
        artificial_upper_[j] = 1;
        state_[j] = VarState::kUpper;
        x_[j] = upper_[j];
      } else {
        lower_[j] = std::min(-kBigBox, x_[j] - kBigBox);
        artificial_lower_[j] = 1;
        state_[j] = VarState::kLower;
        x_[j] = lower_[j];
      }
      any_artificial_ = true;
      moved = true;
    } else {
      cost_[j] -= dj;
      d_[j] = 0.0;
      shifted_[j] = 1;
      any_shift_ = true;
    }
  }
  return moved;
}

bool Simplex::remove_artificial_bounds() {
  if (!any_artificial_) return false;
  const int total = model_.n + model_.m;
  for (int j = 0; j < total; ++j) {
    if (artificial_upper_[j]) {
      upper_[j] = model_.upper[j];
      artificial_upper_[j] = 0;
      if (state_[j] == VarState::kUpper) state_[j] = VarState::kSuper;
    }
    if (artificial_lower_[j]) {
      lower_[j] = model_.lower[j];
      artificial_lower_[j] = 0;
      if (state_[j] == VarState::kLower) state_[j] = VarState::kSuper;
    }
  }
  any_artificial_ = false;
  return true;
}

void Simplex::remove_cost_shifts() {
  if (!any_shift_) return;
  const int total = model_.n + model_.m;
  for (int j = 0; j < total; ++j) {
    if (shifted_[j]) {
      cost_[j] = model_.cost[j];
      shifted_[j] = 0;
    }
  }
  any_shift_ = false;
}

bool Simplex::has_dual_infeasibility() const {
  const int total = model_.n + model_.m;
  for (int j = 0; j < total; ++j) {
    const VarState s = state_[j];
    if (s == VarState::kBasic || lower_[j] == upper_[j]) continue;
    const double tol = dual_tol(j);
    const bool can_up = s != VarState::kUpper && x_[j] < upper_[j];
    const bool can_down = s != VarState::kLower && x_[j] > lower_[j];
    if ((can_up && d_[j] < -tol) || (can_down && d_[j] > tol)) return true;
  }
  return false;
}

bool Simplex::primal_feasible() const {
  for (int i = 0; i < model_.m; ++i) {
    const int j = head_[i];
    if (x_[j] < lower_[j] - opt_.primal_tol || x_[j] > upper_[j] + opt_.primal_tol) {
      return false;
    }
  }
  return true;
}

int Simplex::choose_leaving(bool bland) const {
  int best = -1;
  double best_score = 0.0;
  int best_col = std::numeric_limits<int>::max();
  const double tol = opt_.primal_tol;
  for (int i = 0; i < model_.m; ++i) {
    const int j = head_[i];
    double infeas = 0.0;
    if (x_[j] < lower_[j] - tol) {
      infeas = lower_[j] - x_[j];
    } else if (x_[j] > upper_[j] + tol) {
      infeas = x_[j] - upper_[j];
    } else {
      continue;
    }
    if (bland) {
      if (j < best_col) {
        best_col = j;
        best = i;
      }
      continue;
    }
    const double score = infeas * infeas / weight_[i];
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  return best;
}

void Simplex::compute_pivot_row(int r) {
  for (int j : row_touched_) {
    row_alpha_[j] = 0.0;
    row_mark_[j] = 0;
  }
  row_touched_.clear();
  std::fill(rho_.begin(), rho_.end(), 0.0);
  rho_[r] = 1.0;
  factor_.btran(rho_);
  const int n = model_.n;
  const auto& rows = model_.a_rows;
  for (int i = 0; i < model_.m; ++i) {
    const double ri = rho_[i];
    if (std::abs(ri) <= kDropTol) continue;
    for (int k = rows.start[i]; k < rows.start[i + 1]; ++k) {
      const int j = rows.index[k];
      if (state_[j] == VarState::kBasic) continue;
      if (!row_mark_[j]) {
        row_mark_[j] = 1;
        row_touched_.push_back(j);
      }
      row_alpha_[j] += ri * rows.value[k];
    }
    const int logical = n + i;
    if (state_[logical] != VarState::kBasic) {
      if (!row_mark_[logical]) {
        row_mark_[logical] = 1;
        row_touched_.push_back(logical);
      }
      row_alpha_[logical] = -ri;
    }
  }
}

LpOutcome Simplex::dual_phase() {
  int degenerate_run = 0;
  bool bland = false;
  bool fresh = true;
  double last_objective = -kInfinity;

  while (true) {
    if (iterations_ >= opt_.iteration_limit) return LpOutcome::kIterationLimit;
    if (factor_.updates() >= opt_.refactor_interval) {
      refactor();
      compute_primal();
      compute_duals();
      if (repair_dual_feasibility(false)) compute_primal();
      fresh = true;
    }
    if (std::isfinite(cutoff_) && !any_artificial_ && !any_shift_) {
      const double obj = objective();
      if (obj > cutoff_ + opt_.dual_tol * (1.0 + std::abs(cutoff_))) return LpOutcome::kCutoff;
    }

    const int r = choose_leaving(bland);
    if (r < 0) return LpOutcome::kOptimal;
    const int leaving = head_[r];
    const bool to_upper = x_[leaving] > upper_[leaving];
    const double target = to_upper ? upper_[leaving] : lower_[leaving];
    const double sign = to_upper ? 1.0 : -1.0;

    compute_pivot_row(r);

    // Harris two-pass ratio test on the dual step.
    double theta_max = kInfinity;
    for (int j : row_touched_) {
      const double a = sign * row_alpha_[j];
      if (std::abs(a) <= opt_.pivot_tol || lower_[j] == upper_[j]) continue;
      const VarState s = state_[j];
      const double tol = bland ? 0.0 : dual_tol(j);
      double ratio;
      if (s == VarState::kLower) {
        if (a <= 0.0) continue;
        ratio = (d_[j] + tol) / a;
      } else if (s == VarState::kUpper) {
        if (a >= 0.0) continue;
        ratio = (d_[j] - tol) / a;
      } else {
        ratio = (std::abs(d_[j]) + tol) / std::abs(a);
      }
      theta_max = std::min(theta_max, std::max(ratio, 0.0));
    }
    int q = -1;
    double best_alpha = 0.0;
    double best_ratio = kInfinity;
    for (int j : row_touched_) {
      const double a = sign * row_alpha_[j];
      if (std::abs(a) <= opt_.pivot_tol || lower_[j] == upper_[j]) continue;
      const VarState s = state_[j];
      double ratio;
      if (s == VarState::kLower) {
        if (a <= 0.0) continue;
        ratio = std::max(d_[j], 0.0) / a;
      } else if (s == VarState::kUpper) {
        if (a >= 0.0) continue;
        ratio = std::min(d_[j], 0.0) / a;
      } else {
        ratio = std::abs(d_[j]) / std::abs(a);
      }
      if (ratio > theta_max) continue;
      if (bland) {
        if (ratio < best_ratio - 1e-12 || (ratio <= best_ratio + 1e-12 && (q < 0 || j < q))) {
          if (ratio < best_ratio) best_ratio = ratio;
          q = j;
        }
      } else if (std::abs(a) > best_alpha || (std::abs(a) == best_alpha && j < q)) {
        best_alpha = std::abs(a);
        q = j;
      }
    }
    if (q < 0) {
      if (!fresh) {
        refactor();
        compute_primal();
        compute_duals();
        if (repair_dual_feasibility(false)) compute_primal();
        fresh = true;
        continue;
      }
      return LpOutcome::kInfeasible;
    }

    column(q, alpha_q_);
    factor_.ftran(alpha_q_);
    const double alpha_rq = alpha_q_[r];
    const double alpha_row = row_alpha_[q];
    if (std::abs(alpha_rq - alpha_row) > 1e-7 * (1.0 + std::abs(alpha_rq)) ||
        std::abs(alpha_rq) <= opt_.pivot_tol) {
      if (!fresh) {
        refactor();
        compute_primal();
        compute_duals();
        if (repair_dual_feasibility(false)) compute_primal();
        fresh = true;
        continue;
      }
      if (std::abs(alpha_rq) <= opt_.pivot_tol) {
        throw SolverError("dual simplex: pivot element vanished after refactorisation");
      }
    }

    // Dual step.
    double theta_d = d_[q] / alpha_rq;
    if (sign * theta_d < 0.0) theta_d = 0.0;
    for (int j : row_touched_) {
      if (j == q) continue;
      d_[j] -= theta_d * row_alpha_[j];
    }
    d_[q] = 0.0;
    d_[leaving] = -theta_d;

    // Steepest-edge reference vector, taken before the basis changes.
    tau_ = rho_;
    factor_.ftran(tau_);

    // Primal step.
    const double theta_p = (x_[leaving] - target) / alpha_rq;
    for (int i = 0; i < model_.m; ++i) {
      if (alpha_q_[i] != 0.0) x_[head_[i]] -= theta_p * alpha_q_[i];
    }
    x_[q] += theta_p;
    x_[leaving] = target;

    const double w_r = weight_[r];
    for (int i = 0; i < model_.m; ++i) {
      if (i == r || alpha_q_[i] == 0.0) continue;
      const double ratio = alpha_q_[i] / alpha_rq;
      const double w = weight_[i] - 2.0 * ratio * tau_[i] + ratio * ratio * w_r;
      weight_[i] = std::max(w, 1e-6);
    }
    weight_[r] = std::max(w_r / (alpha_rq * alpha_rq), 1e-6);

    state_[leaving] = to_upper ? VarState::kUpper : VarState::kLower;
    position_[leaving] = -1;
    state_[q] = VarState::kBasic;
    position_[q] = r;
    head_[r] = q;
    factor_.update(r, alpha_q_);
    ++iterations_;
    fresh = false;

    const double obj = objective();
    if (obj <= last_objective + 1e-12 * (1.0 + std::abs(obj))) {
      if (++degenerate_run > opt_.stall_threshold) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }
    last_objective = std::max(last_objective, obj);
  }
}

LpOutcome Simplex::primal_phase() {
  const int total = model_.n + model_.m;
  int degenerate_run = 0;
  bool bland = false;
  while (true) {
    if (iterations_ >= opt_.iteration_limit) return LpOutcome::kIterationLimit;
    if (factor_.updates() >= opt_.refactor_interval) {
      refactor();
      compute_primal();
    }
    compute_duals();

    int q = -1;
    double best = 0.0;
    for (int j = 0; j < total; ++j) {
      const VarState s = state_[j];
      if (s == VarState::kBasic || lower_[j] == upper_[j]) continue;
      const double tol = dual_tol(j);
      const bool can_up = s != VarState::kUpper && x_[j] < upper_[j];
      const bool can_down = s != VarState::kLower && x_[j] > lower_[j];
      double score = 0.0;
      if (can_up && d_[j] < -tol) score = -d_[j];
      if (can_down && d_[j] > tol) score = d_[j];
      if (score <= 0.0) continue;
      if (bland) {
        q = j;
        break;
      }
      if (score > best) {
        best = score;
        q = j;
      }
    }
    if (q < 0) return LpOutcome::kOptimal;

    const double dir = d_[q] < 0.0 ? 1.0 : -1.0;
    column(q, alpha_q_);
    factor_.ftran(alpha_q_);

    // Basic i moves by -dir * t * alpha_i.
    const double tol = bland ? 0.0 : opt_.primal_tol;
    double t_max = kInfinity;
    for (int i = 0; i < model_.m; ++i) {
      const double a = dir * alpha_q_[i];
      if (std::abs(a) <= opt_.pivot_tol) continue;
      const int j = head_[i];
      if (a > 0.0 && std::isfinite(lower_[j])) {
        t_max = std::min(t_max, (x_[j] - lower_[j] + tol) / a);
      } else if (a < 0.0 && std::isfinite(upper_[j])) {
        t_max = std::min(t_max, (upper_[j] + tol - x_[j]) / -a);
      }
    }
    const double flip = dir > 0.0 ? upper_[q] - x_[q] : x_[q] - lower_[q];
    if (!std::isfinite(t_max) && !std::isfinite(flip)) return LpOutcome::kUnbounded;

    int r = -1;
    double r_alpha = 0.0;
    double r_step = 0.0;
    for (int i = 0; i < model_.m; ++i) {
      const double a = dir * alpha_q_[i];
      if (std::abs(a) <= opt_.pivot_tol) continue;
      const int j = head_[i];
      double step;
      if (a > 0.0 && std::isfinite(lower_[j])) {
        step = (x_[j] - lower_[j]) / a;
      } else if (a < 0.0 && std::isfinite(upper_[j])) {
        step = (upper_[j] - x_[j]) / -a;
      } else {
        continue;
      }
      if (step > t_max) continue;
      if (r < 0 || std::abs(a) > r_alpha || (bland && head_[i] < head_[r])) {
        r = i;
        r_alpha = std::abs(a);
        r_step = std::max(step, 0.0);
      }
    }

    if (r < 0 || flip <= r_step) {
      // Bound flip of the entering column, no basis change.
      const double t = flip;
      for (int i = 0; i < model_.m; ++i) {
        if (alpha_q_[i] != 0.0) x_[head_[i]] -= dir * t * alpha_q_[i];
      }
      state_[q] = dir > 0.0 ? VarState::kUpper : VarState::kLower;
      x_[q] = nonbasic_value(q);
      ++iterations_;
      degenerate_run = 0;
      continue;
    }

    const int leaving = head_[r];
    const double t = r_step;
    for (int i = 0; i < model_.m; ++i) {
      if (alpha_q_[i] != 0.0) x_[head_[i]] -= dir * t * alpha_q_[i];
    }
    x_[q] += dir * t;
    const bool at_lower = dir * alpha_q_[r] > 0.0;
    state_[leaving] = at_lower ? VarState::kLower : VarState::kUpper;
    x_[leaving] = at_lower ? lower_[leaving] : upper_[leaving];
    position_[leaving] = -1;
    state_[q] = VarState::kBasic;
    position_[q] = r;
    head_[r] = q;
    factor_.update(r, alpha_q_);
    weight_[r] = 1.0;
    ++iterations_;

    if (t <= 1e-12) {
      if (++degenerate_run > opt_.stall_threshold) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }
  }
}

LpOutcome Simplex::solve() {
  if (!has_basis_) slack_basis();
  place_nonbasics();
  refactor();
  compute_primal();
  compute_duals();

  for (int round = 0; round < 8; ++round) {
    if (repair_dual_feasibility(true)) compute_primal();
    LpOutcome outcome = dual_phase();
    if (outcome == LpOutcome::kInfeasible && any_artificial_) {
      // Infeasible inside the temporary box means infeasible outright.
      remove_artificial_bounds();
      remove_cost_shifts();
      place_nonbasics();
      return outcome;
    }
    if (outcome != LpOutcome::kOptimal) {
      remove_artificial_bounds();
      remove_cost_shifts();
      place_nonbasics();
      return outcome;
    }

    remove_artificial_bounds();
    remove_cost_shifts();
    refactor();
    compute_primal();
    compute_duals();
    if (!primal_feasible()) continue;
    if (!has_dual_infeasibility()) return LpOutcome::kOptimal;

    outcome = primal_phase();
    if (outcome != LpOutcome::kOptimal) return outcome;
    refactor();
    compute_primal();
    compute_duals();
    if (primal_feasible() && !has_dual_infeasibility()) return LpOutcome::kOptimal;
  }
  throw SolverError("simplex: no convergence after repeated cleanup rounds");
}

double Simplex::objective() const {
  double value = model_.offset;
  for (int j = 0; j < model_.n; ++j) value += model_.cost[j] * x_[j];
  return value;
}

std::vector<double> Simplex::primal() const {
  return {x_.begin(), x_.begin() + model_.n};
}

std::vector<double> Simplex::reduced_costs() const {
  return {d_.begin(), d_.begin() + model_.n};
}

}  // namespace gep::detail
