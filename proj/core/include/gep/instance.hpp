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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace gep {

enum class GeneratorKind { kThermal, kWind, kSolar };

std::string_view to_string(GeneratorKind kind);
GeneratorKind generator_kind_from_string(std::string_view text);

struct GeneratorSpec {
  int id = 0;
  GeneratorKind kind = GeneratorKind::kThermal;
  double op_cost = 0.0;   // EUR/MWh
  double inv_cost = 0.0;  // EUR/MW
  double x_min = 0.0;     // MW
  double x_max = 0.0;     // MW
};

struct StorageSpec {
  int id = 0;
  double charge_cost = 0.0;     // EUR/MWh
  double discharge_cost = 0.0;  // EUR/MWh
  double inv_cost = 0.0;        // EUR/MW
  double x_min = 0.0;           // MW
  double x_max = 0.0;           // MW
  double eta_c = 1.0;
  double eta_d = 1.0;
  double e2p_ratio = 1.0;  // h
  double e0 = 0.0;         // MWh
};

// Every set, parameter and input series of the expansion-planning model.
// Treated as an immutable value once validated.
struct GepInstance {
  std::vector<GeneratorSpec> generators;
  std::vector<StorageSpec> storages;
  int horizon = 0;
  double delta = 1.0;       // h
  double nse_cost = 1e5;    // EUR/MWh
  std::vector<double> demand;  // MWh per step, size horizon
  // capacity_factors[g][t], values in [0, 1]; thermal rows are all ones.
  std::vector<std::vector<double>> capacity_factors;

  int num_generators() const { return static_cast<int>(generators.size()); }
  int num_storages() const { return static_cast<int>(storages.size()); }

  // Throws InvalidArgument on the first violated invariant.
  void validate() const;
};

std::string instance_to_json(const GepInstance& inst);
// Throws IngestionError on malformed documents and InvalidArgument when the
// decoded instance violates its invariants.
GepInstance instance_from_json(std::string_view text);

void save_instance(const GepInstance& inst, const std::filesystem::path& path);
GepInstance load_instance(const std::filesystem::path& path);

}  // namespace gep
