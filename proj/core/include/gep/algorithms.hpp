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
#include <optional>
#include <string>
#include <vector>

#include "gep/instance.hpp"
#include "gep/model.hpp"
#include "gep/partition.hpp"
#include "gep/solver.hpp"
#include "gep/tsa.hpp"

namespace gep {

struct AlgoConfig {
  double eps_thr = 0.01;  // percent
  int max_iters = 25;
  double zeta = 10.0;     // EUR/MWh
  std::uint64_t seed = 0;
  // Month lengths in days. Empty means default_calendar(days in horizon).
  std::vector<int> calendar;
  SolverConfig solver;

  void validate(const GepInstance& inst) const;
  // The explicit calendar, or the default one for `inst`.
  std::vector<int> months(const GepInstance& inst) const;
};

// 365 and 366 days map to the civil months; any other day count is cut into
// 30-day months with a shorter final month.
std::vector<int> default_calendar(int days);

int steps_per_day(const GepInstance& inst);

// Chosen days per month, as absolute day indices in ascending order.
using DaySelection = std::vector<std::vector<int>>;

// `count` distinct days per month (capped at the month length), uniformly at
// random.
DaySelection sample_days(const std::vector<int>& calendar, int count, std::uint64_t seed);

// Per month, the `count` days with the largest mean absolute step-wise
// difference between `a` and `b`; ties go to the earlier day.
DaySelection select_days_by_deviation(const std::vector<int>& calendar, int count,
                                      const std::vector<double>& a,
                                      const std::vector<double>& b, int steps_per_day);

struct MarginalCostEstimate {
  MarginalCostSeries lambda;
  int surrogate_steps = 0;
  double surrogate_objective = 0.0;
};

// Solves the binary-relaxed model over the selected days (chronological
// concatenation, operating costs weighted by days-in-month / selected days)
// and spreads the balance duals over the horizon. Every unselected day copies
// a uniformly drawn selected day of its month. `stream` separates the draws of
// different iterations.
MarginalCostEstimate estimate_mc_sampled(const GepInstance& inst, const DaySelection& days,
                                         const AlgoConfig& cfg, std::uint64_t stream);

struct LowerBoundResult {
  SolveStatus status = SolveStatus::kIterationLimit;
  double objective = kInfinity;  // certified lower bound of the aggregated MILP
  double incumbent = kInfinity;  // objective of the returned investments
  InvestmentDecision investments;
  DispatchSchedule dispatch;     // one step per block
};

LowerBoundResult lower_bound_step(const GepInstance& inst, const Partition& part,
                                  const AlgoConfig& cfg);

struct UpperBoundResult {
  double objective = kInfinity;
  MarginalCostSeries lambda;
  DispatchSchedule dispatch;
};

UpperBoundResult upper_bound_step(const GepInstance& inst, const InvestmentDecision& inv,
                                  const AlgoConfig& cfg);

// 100 (ub - lb) / ub. Throws DomainError if ub <= 0 or either value is not
// finite.
double optimality_gap(double ub, double lb);

struct IterationRecord {
  int iteration = 0;
  double lower_bound = -kInfinity;
  double upper_bound = kInfinity;
  double gap = kInfinity;  // percent
  int clusters = 0;
  double step_lower = 0.0;   // this iteration's aggregated bound
  double step_upper = 0.0;   // this iteration's fixed-investment objective
  int surrogate_steps = 0;
  double wall_seconds = 0.0;
  DaySelection days;
  Partition partition;
  InvestmentDecision investments;  // this iteration's candidate
};

enum class Algorithm { kRandomDays, kAdaptiveDays };

struct BoundsTrace {
  Algorithm algorithm = Algorithm::kRandomDays;
  int horizon = 0;
  std::vector<IterationRecord> iterations;
  double lower_bound = -kInfinity;
  double upper_bound = kInfinity;
  double gap = kInfinity;
  bool converged = false;
  // Set when a solve failed; the records before it are kept.
  std::optional<std::string> error;
  // Investments and full-resolution dispatch attaining upper_bound.
  InvestmentDecision incumbent;
  DispatchSchedule incumbent_dispatch;
  double wall_seconds = 0.0;
};

BoundsTrace run_algorithm1(const GepInstance& inst, const AlgoConfig& cfg);
BoundsTrace run_algorithm2(const GepInstance& inst, const AlgoConfig& cfg);

std::string_view to_string(Algorithm algorithm);

// Header `iteration,lower_bound,upper_bound,gap_percent,clusters`; money with
// six fraction digits. Wall times are left out so that reruns match byte for
// byte.
std::string trace_to_csv(const BoundsTrace& trace);
std::string trace_to_json(const BoundsTrace& trace);
BoundsTrace trace_from_json(std::string_view text);

}  // namespace gep
