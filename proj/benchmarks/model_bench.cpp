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

namespace gep {
namespace {

void BM_BuildFullModel(benchmark::State& state) {
  SynthSpec spec;
  spec.n_generators = static_cast<int>(state.range(0));
  spec.n_storages = 2;
  spec.horizon = 8760;
  const BaseProfiles base = synth_profiles(3, spec.horizon);
  const GepInstance inst = generate_instance(spec, base.demand, base.wind, base.solar);
  for (auto _ : state) {
    LpProblem p = build_full_model(inst);
    benchmark::DoNotOptimize(p.num_variables());
  }
}
BENCHMARK(BM_BuildFullModel)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace gep
