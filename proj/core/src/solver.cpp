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

#include "gep/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <queue>

#include <fmt/format.h>

#include "gep/error.hpp"
#include "simplex.hpp"

namespace gep {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

detail::SimplexOptions simplex_options(const SolverConfig& cfg) {
  detail::SimplexOptions opt;
  opt.primal_tol = cfg.feasibility_tol;
  opt.dual_tol = cfg.optimality_tol;
  opt.iteration_limit = cfg.iteration_limit;
  opt.stall_threshold = cfg.stall_threshold;
  return opt;
}

SolveStatus to_status(detail::LpOutcome outcome) {
  switch (outcome) {
    case detail::LpOutcome::kOptimal:
      return SolveStatus::kOptimal;
    case detail::LpOutcome::kInfeasible:
    case detail::LpOutcome::kCutoff:
      return SolveStatus::kInfeasible;
    case detail::LpOutcome::kUnbounded:
      return SolveStatus::kUnbounded;
    case detail::LpOutcome::kIterationLimit:
      return SolveStatus::kIterationLimit;
  }
  return SolveStatus::kIterationLimit;
}

struct Node {
  double bound = -kInfinity;
  long sequence = 0;
  // Bounds of the integer columns at this node, parallel to `integers`.
  std::vector<double> lower;
  std::vector<double> upper;
  std::shared_ptr<const detail::WarmStart> start;
};

struct NodeOrder {
  bool operator()(const std::shared_ptr<Node>& a, const std::shared_ptr<Node>& b) const {
    if (a->bound != b->bound) return a->bound > b->bound;
    return a->sequence > b->sequence;
  }
};

}  // namespace

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kUnbounded:
      return "unbounded";
    case SolveStatus::kIterationLimit:
      return "iteration_limit";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  if (!(feasibility_tol > 0.0) || !(optimality_tol > 0.0) || !(mip_gap > 0.0) ||
      !(integrality_tol > 0.0)) {
    throw InvalidArgument("solver tolerances must be positive");
  }
  if (iteration_limit < 1 || node_limit < 1) {
    throw InvalidArgument("solver limits must be positive");
  }
  if (stall_threshold < 1) throw InvalidArgument("stall threshold must be positive");
}

double SolveResult::value(const LpProblem& p, std::string_view name) const {
  const int j = p.variable_index(name);
  if (static_cast<std::size_t>(j) >= primal.size()) {
    throw StructuralError(fmt::format("no primal value for '{}'", name));
  }
  return primal[j];
}

double SolveResult::dual(const LpProblem& p, std::string_view tag) const {
  const int i = p.constraint_index(tag);
  if (static_cast<std::size_t>(i) >= duals.size()) {
    throw StructuralError(fmt::format("no dual value for '{}'", tag));
  }
  return duals[i];
}

SolveResult solve_lp(const LpProblem& p, const SolverConfig& cfg) {
  cfg.validate();
  p.validate();
  if (p.num_integer() > 0) {
    throw InvalidArgument("solve_lp: problem has integrality flags; use solve_milp");
  }
  const auto start = Clock::now();
  const detail::LpModel model = detail::make_model(p);
  detail::Simplex simplex(model, simplex_options(cfg));
  const detail::LpOutcome outcome = simplex.solve();

  SolveResult out;
  out.status = to_status(outcome);
  out.primal = simplex.primal();
  if (out.status == SolveStatus::kOptimal) {
    out.objective = simplex.objective();
    out.bound = out.objective;
    out.duals = simplex.row_duals();
    out.reduced_costs = simplex.reduced_costs();
  } else if (out.status == SolveStatus::kUnbounded) {
    out.objective = -kInfinity;
  }
  out.stats.iterations = simplex.iterations();
  out.stats.refactorizations = simplex.refactorizations();
  out.stats.wall_seconds = seconds_since(start);
  return out;
}

SolveResult solve_milp(const LpProblem& p, const SolverConfig& cfg) {
  cfg.validate();
  p.validate();
  const auto start = Clock::now();
  const detail::LpModel model = detail::make_model(p);

  std::vector<int> integers;
  for (int j = 0; j < static_cast<int>(p.num_variables()); ++j) {
    if (p.variables()[j].integer) integers.push_back(j);
  }

  SolveResult out;
  out.status = SolveStatus::kInfeasible;
  long iterations = 0;
  long refactorizations = 0;
  const detail::SimplexOptions options = simplex_options(cfg);

  double incumbent = kInfinity;
  std::vector<double> incumbent_x;
  double global_bound = -kInfinity;
  // Lowest bound among nodes abandoned on an LP iteration limit.
  double lost_bound = kInfinity;

  auto prune_level = [&]() {
    if (incumbent == kInfinity) return kInfinity;
    return incumbent - cfg.mip_gap * std::max(1.0, std::abs(incumbent));
  };

  struct NodeSolve {
    detail::LpOutcome outcome;
    double objective = kInfinity;
    std::vector<double> x;
    std::shared_ptr<const detail::WarmStart> basis;
  };
  auto solve_node = [&](const std::vector<double>& lower, const std::vector<double>& upper,
                        const detail::WarmStart* warm, double cutoff) {
    detail::Simplex simplex(model, options);
    for (std::size_t k = 0; k < integers.size(); ++k) {
      simplex.set_bounds(integers[k], lower[k], upper[k]);
    }
    if (warm != nullptr) simplex.load(*warm);
    simplex.set_cutoff(cutoff);
    NodeSolve res;
    res.outcome = simplex.solve();
    iterations += simplex.iterations();
    refactorizations += simplex.refactorizations();
    if (res.outcome == detail::LpOutcome::kOptimal) {
      res.objective = simplex.objective();
      res.x = simplex.primal();
      res.basis = std::make_shared<const detail::WarmStart>(simplex.save());
    }
    return res;
  };

  auto most_fractional = [&](const std::vector<double>& x) {
    int best = -1;
    double best_frac = cfg.integrality_tol;
    for (std::size_t k = 0; k < integers.size(); ++k) {
      const double v = x[integers[k]];
      const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
      if (frac > best_frac) {
        best_frac = frac;
        best = static_cast<int>(k);
      }
    }
    return best;
  };

  auto offer = [&](double objective, std::vector<double> x) {
    if (objective < incumbent) {
      incumbent = objective;
      incumbent_x = std::move(x);
    }
  };

  std::vector<double> root_lower;
  std::vector<double> root_upper;
  for (int j : integers) {
    root_lower.push_back(model.lower[j]);
    root_upper.push_back(model.upper[j]);
  }

  NodeSolve root = solve_node(root_lower, root_upper, nullptr, kInfinity);
  long nodes = 1;
  if (root.outcome != detail::LpOutcome::kOptimal) {
    out.status = to_status(root.outcome);
    if (out.status == SolveStatus::kUnbounded) out.objective = -kInfinity;
    out.stats = {iterations, nodes, refactorizations, seconds_since(start)};
    return out;
  }
  global_bound = root.objective;

  std::priority_queue<std::shared_ptr<Node>, std::vector<std::shared_ptr<Node>>, NodeOrder>
      open;
  long sequence = 0;
  auto branch = [&](const Node& parent, const NodeSolve& solved, int k) {
    const double v = solved.x[integers[k]];
    auto down = std::make_shared<Node>(Node{solved.objective, sequence++, parent.lower,
                                            parent.upper, solved.basis});
    down->upper[k] = std::floor(v);
    auto up = std::make_shared<Node>(Node{solved.objective, sequence++, parent.lower,
                                          parent.upper, solved.basis});
    up->lower[k] = std::ceil(v);
    open.push(std::move(down));
    open.push(std::move(up));
  };

  Node root_node{root.objective, sequence++, root_lower, root_upper, root.basis};
  const int root_branch = most_fractional(root.x);
  if (root_branch < 0) {
    offer(root.objective, root.x);
  } else {
    // Rounding heuristic: every fractional binary rounded up.
    std::vector<double> lo = root_lower;
    std::vector<double> hi = root_upper;
    for (std::size_t k = 0; k < integers.size(); ++k) {
      const double v = std::ceil(root.x[integers[k]] - cfg.integrality_tol);
      lo[k] = std::clamp(v, root_lower[k], root_upper[k]);
      hi[k] = lo[k];
    }
    NodeSolve heur = solve_node(lo, hi, root.basis.get(), kInfinity);
    ++nodes;
    if (heur.outcome == detail::LpOutcome::kOptimal) offer(heur.objective, heur.x);
    branch(root_node, root, root_branch);
  }
  if (cfg.on_progress) cfg.on_progress(incumbent, std::min(global_bound, incumbent));

  bool hit_limit = false;
  while (!open.empty()) {
    if (nodes >= cfg.node_limit) {
      hit_limit = true;
      break;
    }
    std::shared_ptr<Node> node = open.top();
    open.pop();
    if (node->bound >= prune_level()) continue;
    global_bound = std::max(global_bound, std::min(node->bound, lost_bound));

    NodeSolve solved =
        solve_node(node->lower, node->upper, node->start.get(), prune_level());
    ++nodes;
    switch (solved.outcome) {
      case detail::LpOutcome::kOptimal: {
        const int k = most_fractional(solved.x);
        if (k < 0) {
          offer(solved.objective, std::move(solved.x));
        } else if (solved.objective < prune_level()) {
          branch(*node, solved, k);
        }
        break;
      }
      case detail::LpOutcome::kIterationLimit:
        lost_bound = std::min(lost_bound, node->bound);
        break;
      case detail::LpOutcome::kUnbounded:
        throw SolverError("branch-and-bound: unbounded node relaxation");
      case detail::LpOutcome::kInfeasible:
      case detail::LpOutcome::kCutoff:
        break;
    }
    if (cfg.on_progress) cfg.on_progress(incumbent, std::min(global_bound, incumbent));
  }

  // Every unexplored node bounds the optimum from below.
  double bound = std::min(lost_bound, incumbent);
  for (; !open.empty(); open.pop()) bound = std::min(bound, open.top()->bound);

  out.stats = {iterations, nodes, refactorizations, seconds_since(start)};
  if (hit_limit || lost_bound < kInfinity) {
    out.status = SolveStatus::kIterationLimit;
    out.bound = bound;
  } else if (incumbent < kInfinity) {
    out.status = SolveStatus::kOptimal;
    out.bound = bound;
  } else {
    out.status = SolveStatus::kInfeasible;
    return out;
  }
  out.objective = incumbent;
  out.primal = std::move(incumbent_x);
  for (int j : integers) {
    if (j < static_cast<int>(out.primal.size())) out.primal[j] = std::round(out.primal[j]);
  }
  return out;
}

}  // namespace gep
