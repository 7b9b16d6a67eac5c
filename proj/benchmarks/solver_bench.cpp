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

#include <benchmark/benchmark.h>

#include "gep/data.hpp"
#include "gep/model.hpp"
#include "gep/solver.hpp"

namespace gep {
namespace {

GepInstance bench_instance(int generators, int storages, int horizon) {
  SynthSpec spec;
  spec.n_generators = generators;
  spec.n_storages = storages;
  spec.horizon = horizon;
  spec.seed = 42;
  const BaseProfiles base = synth_profiles(spec.seed, horizon);
  return generate_instance(spec, base.demand, base.wind, base.solar);
}

void BM_SolveRelaxedLp(benchmark::State& state) {
  const GepInstance inst = bench_instance(10, 1, static_cast<int>(state.range(0)));
  const LpProblem lp = relax_binaries(build_full_model(inst));
  for (auto _ : state) {
    SolveResult r = solve_lp(lp);
    benchmark::DoNotOptimize(r.objective);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveRelaxedLp)->Arg(24)->Arg(96)->Arg(336)->Unit(benchmark::kMillisecond);

void BM_SolveFixedInvestmentLp(benchmark::State& state) {
  const GepInstance inst = bench_instance(10, 1, static_cast<int>(state.range(0)));
  const LpProblem full = build_full_model(inst);
  const SolveResult opt = solve_lp(relax_binaries(full));
  const LpProblem fixed = fix_investments(full, extract_investments(inst, full, opt.primal));
  for (auto _ : state) {
    SolveResult r = solve_lp(fixed);
    benchmark::DoNotOptimize(r.objective);
  }
}
BENCHMARK(BM_SolveFixedInvestmentLp)->Arg(168)->Arg(720)->Unit(benchmark::kMillisecond);

void BM_SolveMilp(benchmark::State& state) {
  const GepInstance inst = bench_instance(static_cast<int>(state.range(0)), 1, 48);
  const LpProblem p = build_full_model(inst);
  for (auto _ : state) {
    SolveResult r = solve_milp(p);
    benchmark::DoNotOptimize(r.objective);
  }
}
BENCHMARK(BM_SolveMilp)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace gep
