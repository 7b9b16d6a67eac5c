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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any of them fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "gep/algorithms.hpp"
#include "gep/cli.hpp"
#include "gep/data.hpp"
#include "gep/error.hpp"
#include "gep/model.hpp"
#include "gep/solver.hpp"
#include "gep/tsa.hpp"
#include "support/oracles.hpp"

namespace {

using namespace gep;
namespace fs = std::filesystem;

// Tolerances fixed by the acceptance contract.
constexpr double kOracleRelTol = 1e-6;     // criterion 1
constexpr double kSandwichRelTol = 1e-6;   // criterion 2
constexpr double kGapFormulaTol = 1e-9;    // criterion 3
constexpr double kExactTsaRelTol = 1e-6;   // criterion 5
constexpr double kConvergedGap = 0.01;     // criterion 6, percent
constexpr int kMaxIters = 25;              // criterion 6
constexpr double kResidualTol = 1e-6;      // criterion 8
constexpr double kConservationTol = 1e-9;  // criterion 9

constexpr int kOracleInstances = 50;
constexpr int kSingletonInstances = 20;
constexpr int kScaleSeeds = 10;
constexpr std::uint64_t kScaleInstanceSeed = 1;

struct Outcome {
  bool pass = true;
  std::string detail;
};

void report(int id, const std::string& name, const Outcome& o, double seconds) {
  fmt::print("criterion {:>2} {:<32} {}  ({:.1f} s) {}\n", id, name, o.pass ? "PASS" : "FAIL",
             seconds, o.detail);
  std::fflush(stdout);
}

struct OracleCase {
  GepInstance inst;
  double opt = kInfinity;
  std::vector<BoundsTrace> traces;  // alg1, alg2
};

// Shared state: later criteria reuse the traces of earlier ones.
std::vector<OracleCase> g_cases;
std::vector<std::pair<BoundsTrace, BoundsTrace>> g_scale;  // (alg1, alg2) per seed
GepInstance g_scale_instance;

Outcome oracle_equivalence() {
  Outcome o;
  double worst = 0.0;
  for (int s = 0; s < kOracleInstances; ++s) {
    OracleCase c;
    c.inst = testing::random_small_instance(1000 + s);
    const LpProblem p = build_full_model(c.inst);
    const testing::BruteForce bf = testing::enumerate_binaries(p);
    const SolveResult r = solve_milp(p);
    c.opt = bf.objective;
    const double err = r.optimal() ? std::abs(r.objective - bf.objective) / std::abs(bf.objective)
                                   : kInfinity;
    worst = std::max(worst, err);
    if (err > kOracleRelTol) {
      o.pass = false;
      o.detail += fmt::format("[instance {}: milp {} vs {}] ", s, r.objective, bf.objective);
    }
    g_cases.push_back(std::move(c));
  }
  o.detail += fmt::format("{} instances, worst rel err {:.2e}", kOracleInstances, worst);
  return o;
}

Outcome bound_sandwich() {
  Outcome o;
  int iterations = 0;
  for (std::size_t s = 0; s < g_cases.size(); ++s) {
    OracleCase& c = g_cases[s];
    AlgoConfig cfg;
    cfg.seed = s;
    c.traces = {run_algorithm1(c.inst, cfg), run_algorithm2(c.inst, cfg)};
    const double tol = kSandwichRelTol * std::abs(c.opt);
    for (const BoundsTrace& t : c.traces) {
      if (t.error) {
        o.pass = false;
        o.detail += fmt::format("[instance {}: {}] ", s, *t.error);
      }
      for (const IterationRecord& r : t.iterations) {
        ++iterations;
        if (r.lower_bound - tol > c.opt || c.opt > r.step_upper + tol) {
          o.pass = false;
          o.detail += fmt::format("[instance {} {} it {}: {} <= {} <= {}] ", s,
                                  to_string(t.algorithm), r.iteration, r.lower_bound, c.opt,
                                  r.step_upper);
        }
      }
    }
  }
  o.detail += fmt::format("{} iterations checked", iterations);
  return o;
}

bool trace_monotone(const BoundsTrace& t, std::string& why) {
  for (std::size_t i = 0; i < t.iterations.size(); ++i) {
    const IterationRecord& r = t.iterations[i];
    if (i > 0 && (r.lower_bound < t.iterations[i - 1].lower_bound ||
                  r.upper_bound > t.iterations[i - 1].upper_bound)) {
      why = fmt::format("iteration {} not monotone", r.iteration);
      return false;
    }
    const double expected = 100 * (r.upper_bound - r.lower_bound) / r.upper_bound;
    if (!(std::abs(r.gap - expected) <= kGapFormulaTol)) {
      why = fmt::format("iteration {} gap {} vs {}", r.iteration, r.gap, expected);
      return false;
    }
  }
  return true;
}

Outcome monotone_bounds() {
  Outcome o;
  int traces = 0;
  auto check = [&](const BoundsTrace& t, const std::string& label) {
    ++traces;
    std::string why;
    if (!trace_monotone(t, why)) {
      o.pass = false;
      o.detail += fmt::format("[{}: {}] ", label, why);
    }
  };
  for (std::size_t s = 0; s < g_cases.size(); ++s) {
    for (const BoundsTrace& t : g_cases[s].traces) {
      check(t, fmt::format("instance {} {}", s, to_string(t.algorithm)));
    }
  }
  for (std::size_t s = 0; s < g_scale.size(); ++s) {
    check(g_scale[s].first, fmt::format("scale seed {} alg1", s + 1));
    check(g_scale[s].second, fmt::format("scale seed {} alg2", s + 1));
  }
  o.detail += fmt::format("{} traces", traces);
  return o;
}

Outcome singleton_exactness() {
  Outcome o;
  SolverConfig cfg;
  double worst = 0.0;
  for (int s = 0; s < kSingletonInstances; ++s) {
    const GepInstance inst = testing::random_small_instance(2000 + s);
    const SolveResult full = solve_milp(build_full_model(inst), cfg);
    const SolveResult agg =
        solve_milp(build_aggregated_model(inst, Partition::singletons(inst.horizon)), cfg);
    const double err = std::abs(agg.objective - full.objective) / std::abs(full.objective);
    worst = std::max(worst, err);
    if (!full.optimal() || !agg.optimal() || err > cfg.mip_gap) {
      o.pass = false;
      o.detail += fmt::format("[instance {}: {} vs {}] ", s, agg.objective, full.objective);
    }
  }
  o.detail += fmt::format("{} instances, worst rel diff {:.2e} (gap {:.0e})", kSingletonInstances,
                          worst, cfg.mip_gap);
  return o;
}

Outcome exact_tsa() {
  Outcome o;
  GepInstance inst;
  inst.horizon = 24;
  inst.generators.push_back({0, GeneratorKind::kThermal, 50, 1e5, 100, 100});
  inst.capacity_factors = {std::vector<double>(24, 1.0)};
  inst.demand.assign(24, 80.0);
  for (int t = 10; t < 16; ++t) inst.demand[t] = 120.0;
  inst.validate();
  const InvestmentDecision inv{{100.0}, {}, {1}, {}};
  const Partition expected = Partition::from_blocks({{0, 10}, {10, 6}, {16, 8}}, 24);

  const LpProblem full = fix_investments(build_full_model(inst), inv);
  const SolveResult r = solve_lp(full);
  if (!r.optimal()) return {false, "fixed LP not optimal"};
  std::vector<double> duals;
  for (int t = 0; t < inst.horizon; ++t) {
    duals.push_back(r.dual(full, fmt::format("balance[{}]", t)));
    const double want = (t >= 10 && t < 16) ? inst.nse_cost : 50.0;
    if (std::abs(duals.back() - want) > 1e-6 * want) {
      o.pass = false;
      o.detail += fmt::format("[dual {} = {}] ", t, duals.back());
    }
  }
  const Partition part = sliding_window_cluster(FeatureSeries::scalar(duals), 10.0);
  if (!(part == expected)) {
    o.pass = false;
    o.detail += fmt::format("[{} blocks] ", part.size());
  }
  const SolveResult agg = solve_lp(fix_investments(build_aggregated_model(inst, part), inv));
  const double err = std::abs(agg.objective - r.objective) / std::abs(r.objective);
  if (!agg.optimal() || err > kExactTsaRelTol) {
    o.pass = false;
    o.detail += fmt::format("[aggregated {} vs full {}] ", agg.objective, r.objective);
  }
  o.detail += fmt::format("K = {}, objective rel diff {:.2e}", part.size(), err);
  return o;
}

int iterations_to_converge(const BoundsTrace& t) {
  for (const IterationRecord& r : t.iterations) {
    if (r.gap <= kConvergedGap) return r.iteration;
  }
  return kMaxIters + 1;
}

Outcome scale_convergence() {
  Outcome o;
  SynthSpec spec;
  spec.n_generators = 20;
  spec.n_storages = 2;
  spec.horizon = 720;
  spec.seed = kScaleInstanceSeed;
  const BaseProfiles base = synth_profiles(kScaleInstanceSeed, spec.horizon);
  g_scale_instance = generate_instance(spec, base.demand, base.wind, base.solar);

  int both = 0;
  int alg2_not_slower = 0;
  std::string counts;
  for (int seed = 1; seed <= kScaleSeeds; ++seed) {
    AlgoConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(seed);
    cfg.max_iters = kMaxIters;
    g_scale.emplace_back(run_algorithm1(g_scale_instance, cfg),
                         run_algorithm2(g_scale_instance, cfg));
    const auto& [a1, a2] = g_scale.back();
    const int n1 = iterations_to_converge(a1);
    const int n2 = iterations_to_converge(a2);
    if (n1 <= kMaxIters && n2 <= kMaxIters) ++both;
    if (n2 <= n1) ++alg2_not_slower;
    counts += fmt::format(" s{}:{}/{}({:.3g}%/{:.3g}%)", seed, n1 > kMaxIters ? "-" : std::to_string(n1),
                          n2 > kMaxIters ? "-" : std::to_string(n2), a1.gap, a2.gap);
  }
  o.pass = both == kScaleSeeds && alg2_not_slower >= 7;
  o.detail = fmt::format("both converged on {}/{} seeds, alg2 <= alg1 on {}/{}; iterations alg1/alg2:{}",
                         both, kScaleSeeds, alg2_not_slower, kScaleSeeds, counts);
  return o;
}

Outcome dimensionality_reduction() {
  Outcome o;
  const int horizon = g_scale_instance.horizon;
  double min_red = 100.0;
  double max_red = 0.0;
  for (const auto& [a1, a2] : g_scale) {
    for (const BoundsTrace* t : {&a1, &a2}) {
      const int k = t->iterations.back().clusters;
      if (!(k < 0.5 * horizon)) o.pass = false;
      const double red = cli::reduction_percent(k, horizon);
      min_red = std::min(min_red, red);
      max_red = std::max(max_red, red);
    }
  }
  o.detail = fmt::format("final K < {} on all runs: {}; reduction {:.1f}% to {:.1f}%", horizon / 2,
                         o.pass ? "yes" : "no", min_red, max_red);
  return o;
}

Outcome incumbent_feasibility() {
  Outcome o;
  double worst = 0.0;
  int checked = 0;
  auto check = [&](const GepInstance& inst, const BoundsTrace& t, const std::string& label) {
    AlgoConfig cfg;
    for (const IterationRecord& r : t.iterations) {
      const UpperBoundResult ub = upper_bound_step(inst, r.investments, cfg);
      std::string where;
      const double res = testing::full_model_residual(inst, r.investments, ub.dispatch, &where);
      ++checked;
      worst = std::max(worst, res);
      if (res > kResidualTol) {
        o.pass = false;
        o.detail += fmt::format("[{} it {}: {} at {}] ", label, r.iteration, res, where);
      }
    }
    const double res = testing::full_model_residual(inst, t.incumbent, t.incumbent_dispatch);
    worst = std::max(worst, res);
    if (res > kResidualTol) {
      o.pass = false;
      o.detail += fmt::format("[{} final incumbent: {}] ", label, res);
    }
  };
  for (std::size_t s = 0; s < g_cases.size(); ++s) {
    for (const BoundsTrace& t : g_cases[s].traces) {
      check(g_cases[s].inst, t, fmt::format("instance {} {}", s, to_string(t.algorithm)));
    }
  }
  for (std::size_t s = 0; s < g_scale.size(); ++s) {
    check(g_scale_instance, g_scale[s].first, fmt::format("scale seed {} alg1", s + 1));
    check(g_scale_instance, g_scale[s].second, fmt::format("scale seed {} alg2", s + 1));
  }
  o.detail += fmt::format("{} incumbents, worst residual {:.2e}", checked, worst);
  return o;
}

Outcome aggregation_conservation() {
  Outcome o;
  double worst = 0.0;
  int checked = 0;
  auto check = [&](const GepInstance& inst, const Partition& part) {
    const AggregatedSeries agg = aggregate_series(inst, part);
    long double lhs = 0.0L;
    for (int k = 0; k < part.size(); ++k) lhs += static_cast<long double>(agg.demand[k]) * part[k].length;
    long double rhs = 0.0L;
    for (double d : inst.demand) rhs += d;
    const double err = static_cast<double>(std::abs(lhs - rhs) / std::abs(rhs));
    worst = std::max(worst, err);
    ++checked;
    if (err > kConservationTol) o.pass = false;
  };
  for (const OracleCase& c : g_cases) {
    check(c.inst, Partition::single_block(c.inst.horizon));
    for (const BoundsTrace& t : c.traces) {
      for (const IterationRecord& r : t.iterations) check(c.inst, r.partition);
    }
  }
  for (const auto& [a1, a2] : g_scale) {
    for (const BoundsTrace* t : {&a1, &a2}) {
      for (const IterationRecord& r : t->iterations) check(g_scale_instance, r.partition);
    }
  }
  o.detail = fmt::format("{} partitions, worst rel err {:.2e}", checked, worst);
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "gep_acceptance_determinism";
  fs::remove_all(root);
  std::ostringstream sink;
  auto cli = [&](const fs::path& out, std::vector<std::string> args) {
    args.insert(args.begin(), {"--out", out.string()});
    const int code = cli::run(args, sink, sink);
    if (code != cli::kExitOk) {
      o.pass = false;
      o.detail += fmt::format("[exit {} for {}] ", code, args[2]);
    }
  };
  for (const char* run : {"a", "b"}) {
    const fs::path out = root / run;
    cli(out, {"generate", "--generators", "8", "--storages", "1", "--seed", "5", "--horizon",
              "168", "-o", "inst.json"});
    const std::string inst = (out / "inst.json").string();
    for (const char* algo : {"alg1", "alg2"}) {
      cli(out, {"run", "--instance", inst, "--algo", algo, "--seed", "3", "--max-iters", "6"});
    }
  }
  int files = 0;
  for (const char* name : {"inst.json", "alg1_trace.csv", "alg2_trace.csv", "alg1_convergence.csv",
                           "alg2_convergence.csv", "alg1_trace.json", "alg2_trace.json"}) {
    ++files;
    const std::string a = slurp(root / "a" / name);
    if (a.empty() || a != slurp(root / "b" / name)) {
      o.pass = false;
      o.detail += fmt::format("[{} differs] ", name);
    }
  }
  fs::remove_all(root);
  o.detail += fmt::format("{} files compared byte for byte", files);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  // Criteria 3, 7, 8 and 9 inspect the traces produced by 2 and 6, so 6 runs
  // before them.
  const std::vector<Criterion> order = {
      {1, "oracle equivalence", oracle_equivalence},
      {2, "bound sandwich", bound_sandwich},
      {4, "singleton-partition exactness", singleton_exactness},
      {5, "exact TSA realization", exact_tsa},
      {6, "convergence at scale-down", scale_convergence},
      {3, "monotone bounds and gap formula", monotone_bounds},
      {7, "dimensionality reduction", dimensionality_reduction},
      {8, "feasibility of incumbents", incumbent_feasibility},
      {9, "aggregation conservation", aggregation_conservation},
      {10, "determinism", determinism},
  };
  std::vector<std::pair<int, bool>> results;
  for (const Criterion& c : order) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(c.id, c.name, o, secs);
    results.emplace_back(c.id, o.pass);
  }
  std::sort(results.begin(), results.end());
  fmt::print("\nsummary\n");
  bool all = true;
  for (const auto& [id, pass] : results) {
    fmt::print("{} criterion {}\n", pass ? "PASS" : "FAIL", id);
    all = all && pass;
  }
  return all ? 0 : 1;
}
