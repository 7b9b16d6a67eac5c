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

#include "gep/algorithms.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "gep/error.hpp"
#include "gep/rng.hpp"

namespace gep {
namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

enum StreamTag : std::uint64_t { kSampleTag = 11, kAssignTag = 12 };

constexpr int kCivilMonths[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<int> month_starts(const std::vector<int>& calendar) {
  std::vector<int> starts(calendar.size(), 0);
  for (std::size_t m = 1; m < calendar.size(); ++m) starts[m] = starts[m - 1] + calendar[m - 1];
  return starts;
}

double gap_or_infinity(double ub, double lb) {
  if (!std::isfinite(ub) || !std::isfinite(lb)) return kInfinity;
  if (ub <= 0.0) return lb >= ub ? 0.0 : kInfinity;
  return optimality_gap(ub, lb);
}

json to_json(const InvestmentDecision& inv) {
  return {{"x_g", inv.x_g}, {"x_s", inv.x_s}, {"b_g", inv.b_g}, {"b_s", inv.b_s}};
}

InvestmentDecision investments_from_json(const json& j) {
  InvestmentDecision inv;
  j.at("x_g").get_to(inv.x_g);
  j.at("x_s").get_to(inv.x_s);
  j.at("b_g").get_to(inv.b_g);
  j.at("b_s").get_to(inv.b_s);
  return inv;
}

json to_json(const DispatchSchedule& d) {
  return {{"steps", d.steps}, {"p_g", d.p_g}, {"e_s", d.e_s},
          {"p_c", d.p_c},     {"p_d", d.p_d}, {"e_ns", d.e_ns}};
}

DispatchSchedule dispatch_from_json(const json& j) {
  DispatchSchedule d;
  d.steps = j.at("steps").get<int>();
  j.at("p_g").get_to(d.p_g);
  j.at("e_s").get_to(d.e_s);
  j.at("p_c").get_to(d.p_c);
  j.at("p_d").get_to(d.p_d);
  j.at("e_ns").get_to(d.e_ns);
  return d;
}

// JSON has no infinity; unset bounds are written as null.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_or(const json& j, double fallback) {
  return j.is_null() ? fallback : j.get<double>();
}

}  // namespace

std::vector<int> default_calendar(int days) {
  if (days < 1) throw InvalidArgument("calendar: horizon holds no whole day");
  std::vector<int> months;
  if (days == 365 || days == 366) {
    months.assign(std::begin(kCivilMonths), std::end(kCivilMonths));
    if (days == 366) months[1] = 29;
    return months;
  }
  for (int left = days; left > 0; left -= 30) months.push_back(std::min(left, 30));
  return months;
}

int steps_per_day(const GepInstance& inst) {
  const double per_day = 24.0 / inst.delta;
  const long rounded = std::lround(per_day);
  if (rounded < 1 || std::abs(per_day - static_cast<double>(rounded)) > 1e-9) {
    throw InvalidArgument("a day is not a whole number of time steps");
  }
  return static_cast<int>(rounded);
}

void AlgoConfig::validate(const GepInstance& inst) const {
  if (!(eps_thr > 0.0)) throw InvalidArgument("algorithm: eps_thr must be > 0");
  if (max_iters < 1) throw InvalidArgument("algorithm: max_iters must be >= 1");
  if (!(zeta >= 0.0) || !std::isfinite(zeta)) {
    throw InvalidArgument("algorithm: zeta must be finite and >= 0");
  }
  solver.validate();
  const int per_day = steps_per_day(inst);
  if (inst.horizon % per_day != 0) {
    throw InvalidArgument(fmt::format("algorithm: horizon {} is not a whole number of days",
                                      inst.horizon));
  }
  const std::vector<int> cal = months(inst);
  const int days = inst.horizon / per_day;
  int total = 0;
  for (int m : cal) {
    if (m < 1) throw InvalidArgument("algorithm: calendar months must hold at least one day");
    total += m;
  }
  if (total != days) {
    throw InvalidArgument(
        fmt::format("algorithm: calendar covers {} days, horizon has {}", total, days));
  }
}

std::vector<int> AlgoConfig::months(const GepInstance& inst) const {
  if (!calendar.empty()) return calendar;
  return default_calendar(inst.horizon / steps_per_day(inst));
}

DaySelection sample_days(const std::vector<int>& calendar, int count, std::uint64_t seed) {
  if (count < 1) throw InvalidArgument("sample_days: count must be >= 1");
  const std::vector<int> starts = month_starts(calendar);
  DaySelection out(calendar.size());
  for (std::size_t m = 0; m < calendar.size(); ++m) {
    Rng rng(derive_seed(seed, {m}));
    std::vector<int> pool(static_cast<std::size_t>(calendar[m]));
    std::iota(pool.begin(), pool.end(), starts[m]);
    const int take = std::min(count, calendar[m]);
    for (int k = 0; k < take; ++k) {
      const int pick = k + rng.index(calendar[m] - k);
      std::swap(pool[k], pool[pick]);
    }
    out[m].assign(pool.begin(), pool.begin() + take);
    std::sort(out[m].begin(), out[m].end());
  }
  return out;
}

DaySelection select_days_by_deviation(const std::vector<int>& calendar, int count,
                                      const std::vector<double>& a,
                                      const std::vector<double>& b, int steps_per_day) {
  if (count < 1) throw InvalidArgument("select_days_by_deviation: count must be >= 1");
  if (a.size() != b.size()) {
    throw InvalidArgument("select_days_by_deviation: series lengths differ");
  }
  const int days = std::accumulate(calendar.begin(), calendar.end(), 0);
  if (static_cast<std::size_t>(days) * steps_per_day != a.size()) {
    throw InvalidArgument("select_days_by_deviation: series do not match the calendar");
  }
  std::vector<double> deviation(static_cast<std::size_t>(days), 0.0);
  for (int d = 0; d < days; ++d) {
    double sum = 0.0;
    for (int h = 0; h < steps_per_day; ++h) {
      const std::size_t t = static_cast<std::size_t>(d) * steps_per_day + h;
      sum += std::abs(a[t] - b[t]);
    }
    deviation[d] = sum / steps_per_day;
  }
  const std::vector<int> starts = month_starts(calendar);
  DaySelection out(calendar.size());
  for (std::size_t m = 0; m < calendar.size(); ++m) {
    std::vector<int> order(static_cast<std::size_t>(calendar[m]));
    std::iota(order.begin(), order.end(), starts[m]);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return deviation[x] > deviation[y]; });
    order.resize(static_cast<std::size_t>(std::min(count, calendar[m])));
    std::sort(order.begin(), order.end());
    out[m] = std::move(order);
  }
  return out;
}

MarginalCostEstimate estimate_mc_sampled(const GepInstance& inst, const DaySelection& days,
                                         const AlgoConfig& cfg, std::uint64_t stream) {
  const std::vector<int> calendar = cfg.months(inst);
  const int per_day = steps_per_day(inst);
  if (days.size() != calendar.size()) {
    throw InvalidArgument("estimate_mc_sampled: selection does not match the calendar");
  }
  const std::vector<int> starts = month_starts(calendar);
  const int G = inst.num_generators();

  ModelLayout layout;
  layout.capacity_factors.assign(static_cast<std::size_t>(G), {});
  for (std::size_t m = 0; m < calendar.size(); ++m) {
    const auto& chosen = days[m];
    if (chosen.empty() || static_cast<int>(chosen.size()) > calendar[m]) {
      throw InvalidArgument(fmt::format("estimate_mc_sampled: month {} selects {} of {} days", m,
                                        chosen.size(), calendar[m]));
    }
    for (std::size_t k = 0; k < chosen.size(); ++k) {
      const int d = chosen[k];
      if (d < starts[m] || d >= starts[m] + calendar[m] || (k > 0 && chosen[k - 1] >= d)) {
        throw InvalidArgument(
            fmt::format("estimate_mc_sampled: month {} has an invalid day list", m));
      }
    }
    const double weight = static_cast<double>(calendar[m]) / static_cast<double>(chosen.size());
    for (int d : chosen) {
      for (int h = 0; h < per_day; ++h) {
        const int t = d * per_day + h;
        layout.demand.push_back(inst.demand[t]);
        for (int g = 0; g < G; ++g) layout.capacity_factors[g].push_back(inst.capacity_factors[g][t]);
        layout.cost_weight.push_back(weight);
        layout.duration.push_back(1.0);
      }
    }
  }

  const LpProblem surrogate = relax_binaries(build_model(inst, layout));
  const SolveResult res = solve_lp(surrogate, cfg.solver);
  if (!res.optimal()) {
    throw SolverError(fmt::format("surrogate LP ended with status {}", to_string(res.status)));
  }

  MarginalCostEstimate out;
  out.surrogate_steps = layout.steps();
  out.surrogate_objective = res.objective;
  out.lambda.lambda.assign(static_cast<std::size_t>(inst.horizon), 0.0);
  std::vector<double>& lambda = out.lambda.lambda;
  int step = 0;
  for (std::size_t m = 0; m < calendar.size(); ++m) {
    for (int d : days[m]) {
      for (int h = 0; h < per_day; ++h, ++step) {
        const double y = res.duals[surrogate.constraint_index(fmt::format("balance[{}]", step))];
        lambda[static_cast<std::size_t>(d) * per_day + h] = y / layout.cost_weight[step];
      }
    }
  }
  for (std::size_t m = 0; m < calendar.size(); ++m) {
    const auto& chosen = days[m];
    Rng rng(derive_seed(cfg.seed, {kAssignTag, stream, m}));
    for (int d = starts[m]; d < starts[m] + calendar[m]; ++d) {
      if (std::binary_search(chosen.begin(), chosen.end(), d)) continue;
      const int src = chosen[rng.index(static_cast<int>(chosen.size()))];
      std::copy_n(lambda.begin() + static_cast<std::ptrdiff_t>(src) * per_day, per_day,
                  lambda.begin() + static_cast<std::ptrdiff_t>(d) * per_day);
    }
  }
  return out;
}

LowerBoundResult lower_bound_step(const GepInstance& inst, const Partition& part,
                                  const AlgoConfig& cfg) {
  const LpProblem model = build_aggregated_model(inst, part);
  const SolveResult res = solve_milp(model, cfg.solver);
  LowerBoundResult out;
  out.status = res.status;
  if (res.status != SolveStatus::kOptimal && res.status != SolveStatus::kIterationLimit) {
    throw SolverError(
        fmt::format("aggregated MILP ended with status {}", to_string(res.status)));
  }
  if (res.primal.empty()) {
    throw SolverError("aggregated MILP hit its limit before finding a feasible point");
  }
  out.objective = res.bound;
  out.incumbent = res.objective;
  out.investments = extract_investments(inst, model, res.primal);
  out.dispatch = extract_dispatch(model, res.primal);
  return out;
}

UpperBoundResult upper_bound_step(const GepInstance& inst, const InvestmentDecision& inv,
                                  const AlgoConfig& cfg) {
  inv.validate(inst);
  const LpProblem fixed = fix_investments(build_full_model(inst), inv);
  const SolveResult res = solve_lp(fixed, cfg.solver);
  if (!res.optimal()) {
    throw SolverError(
        fmt::format("fixed-investment LP ended with status {}", to_string(res.status)));
  }
  UpperBoundResult out;
  out.objective = res.objective;
  out.dispatch = extract_dispatch(fixed, res.primal);
  out.lambda.lambda.resize(static_cast<std::size_t>(inst.horizon));
  for (int t = 0; t < inst.horizon; ++t) {
    out.lambda.lambda[t] = res.duals[fixed.constraint_index(fmt::format("balance[{}]", t))];
  }
  return out;
}

double optimality_gap(double ub, double lb) {
  if (!std::isfinite(ub) || !std::isfinite(lb)) {
    throw DomainError("optimality gap: bounds must be finite");
  }
  if (ub <= 0.0) throw DomainError("optimality gap: upper bound must be positive");
  return 100.0 * (ub - lb) / ub;
}

namespace {

BoundsTrace run(const GepInstance& inst, const AlgoConfig& cfg, Algorithm algorithm) {
  inst.validate();
  cfg.validate(inst);
  const auto start = Clock::now();
  const std::vector<int> calendar = cfg.months(inst);
  const int per_day = steps_per_day(inst);

  BoundsTrace trace;
  trace.algorithm = algorithm;
  trace.horizon = inst.horizon;
  std::vector<double> prev_estimate;
  std::vector<double> prev_duals;

  int i = 0;
  do {
    ++i;
    const auto iter_start = Clock::now();
    IterationRecord rec;
    rec.iteration = i;
    try {
      if (algorithm == Algorithm::kAdaptiveDays && i > 1) {
        rec.days = select_days_by_deviation(calendar, i, prev_duals, prev_estimate, per_day);
      } else {
        rec.days = sample_days(calendar, i, derive_seed(cfg.seed, {kSampleTag,
                                                                   static_cast<std::uint64_t>(i)}));
      }
      MarginalCostEstimate est =
          estimate_mc_sampled(inst, rec.days, cfg, static_cast<std::uint64_t>(i));
      rec.surrogate_steps = est.surrogate_steps;
      rec.partition = sliding_window_cluster(est.lambda.as_features(), cfg.zeta);
      rec.clusters = rec.partition.size();

      const LowerBoundResult lb = lower_bound_step(inst, rec.partition, cfg);
      rec.step_lower = lb.objective;
      rec.investments = lb.investments;
      trace.lower_bound = std::max(trace.lower_bound, lb.objective);

      UpperBoundResult ub = upper_bound_step(inst, lb.investments, cfg);
      rec.step_upper = ub.objective;
      if (ub.objective < trace.upper_bound) {
        trace.upper_bound = ub.objective;
        trace.incumbent = lb.investments;
        trace.incumbent_dispatch = std::move(ub.dispatch);
      }
      prev_estimate = std::move(est.lambda.lambda);
      prev_duals = std::move(ub.lambda.lambda);
    } catch (const Error& e) {
      trace.error = fmt::format("iteration {}: {}", i, e.what());
      break;
    }
    trace.gap = gap_or_infinity(trace.upper_bound, trace.lower_bound);
    rec.lower_bound = trace.lower_bound;
    rec.upper_bound = trace.upper_bound;
    rec.gap = trace.gap;
    rec.wall_seconds = seconds_since(iter_start);
    trace.iterations.push_back(std::move(rec));
  } while (trace.gap > cfg.eps_thr && i < cfg.max_iters);

  trace.converged = !trace.error && trace.gap <= cfg.eps_thr;
  trace.wall_seconds = seconds_since(start);
  return trace;
}

}  // namespace

BoundsTrace run_algorithm1(const GepInstance& inst, const AlgoConfig& cfg) {
  return run(inst, cfg, Algorithm::kRandomDays);
}

BoundsTrace run_algorithm2(const GepInstance& inst, const AlgoConfig& cfg) {
  return run(inst, cfg, Algorithm::kAdaptiveDays);
}

std::string_view to_string(Algorithm algorithm) {
  return algorithm == Algorithm::kRandomDays ? "alg1" : "alg2";
}

std::string trace_to_csv(const BoundsTrace& trace) {
  std::string out = "iteration,lower_bound,upper_bound,gap_percent,clusters\n";
  for (const IterationRecord& r : trace.iterations) {
    out += fmt::format("{},{:.6f},{:.6f},{:.9f},{}\n", r.iteration, r.lower_bound, r.upper_bound,
                       r.gap, r.clusters);
  }
  return out;
}

std::string trace_to_json(const BoundsTrace& trace) {
  json doc;
  doc["schema"] = "gep-trace/1";
  doc["algorithm"] = std::string(to_string(trace.algorithm));
  doc["horizon"] = trace.horizon;
  doc["lower_bound"] = number_or_null(trace.lower_bound);
  doc["upper_bound"] = number_or_null(trace.upper_bound);
  doc["gap_percent"] = number_or_null(trace.gap);
  doc["converged"] = trace.converged;
  doc["error"] = trace.error ? json(*trace.error) : json(nullptr);
  json iters = json::array();
  for (const IterationRecord& r : trace.iterations) {
    iters.push_back({{"iteration", r.iteration},
                     {"lower_bound", number_or_null(r.lower_bound)},
                     {"upper_bound", number_or_null(r.upper_bound)},
                     {"gap_percent", number_or_null(r.gap)},
                     {"clusters", r.clusters},
                     {"step_lower", number_or_null(r.step_lower)},
                     {"step_upper", number_or_null(r.step_upper)},
                     {"surrogate_steps", r.surrogate_steps},
                     {"days", r.days},
                     {"partition", r.partition.lengths()},
                     {"investments", to_json(r.investments)}});
  }
  doc["iterations"] = std::move(iters);
  doc["incumbent"] = to_json(trace.incumbent);
  doc["incumbent_dispatch"] = to_json(trace.incumbent_dispatch);
  return doc.dump(1) + "\n";
}

BoundsTrace trace_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw IngestionError(fmt::format("trace JSON: {}", e.what()));
  }
  try {
    if (doc.at("schema").get<std::string>() != "gep-trace/1") {
      throw IngestionError("trace JSON: unsupported schema");
    }
    BoundsTrace trace;
    const std::string algo = doc.at("algorithm").get<std::string>();
    if (algo == "alg1") trace.algorithm = Algorithm::kRandomDays;
    else if (algo == "alg2") trace.algorithm = Algorithm::kAdaptiveDays;
    else throw IngestionError(fmt::format("trace JSON: unknown algorithm '{}'", algo));
    trace.horizon = doc.at("horizon").get<int>();
    trace.lower_bound = number_or(doc.at("lower_bound"), -kInfinity);
    trace.upper_bound = number_or(doc.at("upper_bound"), kInfinity);
    trace.gap = number_or(doc.at("gap_percent"), kInfinity);
    trace.converged = doc.at("converged").get<bool>();
    if (!doc.at("error").is_null()) trace.error = doc.at("error").get<std::string>();
    for (const json& r : doc.at("iterations")) {
      IterationRecord rec;
      rec.iteration = r.at("iteration").get<int>();
      rec.lower_bound = number_or(r.at("lower_bound"), -kInfinity);
      rec.upper_bound = number_or(r.at("upper_bound"), kInfinity);
      rec.gap = number_or(r.at("gap_percent"), kInfinity);
      rec.clusters = r.at("clusters").get<int>();
      rec.step_lower = number_or(r.at("step_lower"), -kInfinity);
      rec.step_upper = number_or(r.at("step_upper"), kInfinity);
      rec.surrogate_steps = r.at("surrogate_steps").get<int>();
      r.at("days").get_to(rec.days);
      const auto lengths = r.at("partition").get<std::vector<int>>();
      rec.partition = Partition::from_lengths(lengths);
      rec.investments = investments_from_json(r.at("investments"));
      trace.iterations.push_back(std::move(rec));
    }
    trace.incumbent = investments_from_json(doc.at("incumbent"));
    trace.incumbent_dispatch = dispatch_from_json(doc.at("incumbent_dispatch"));
    return trace;
  } catch (const json::exception& e) {
    throw IngestionError(fmt::format("trace JSON: {}", e.what()));
  } catch (const InvalidArgument& e) {
    throw IngestionError(fmt::format("trace JSON: {}", e.what()));
  }
}

}  // namespace gep
