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

#include "gep/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "gep/error.hpp"

namespace gep {
namespace {

using nlohmann::json;

constexpr std::string_view kSchema = "gep-instance/1";

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

template <typename T>
T field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw IngestionError(fmt::format("instance JSON: missing field '{}'", key));
  }
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    throw IngestionError(
        fmt::format("instance JSON: field '{}' has wrong type ({})", key, e.what()));
  }
}

}  // namespace

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kThermal:
      return "thermal";
    case GeneratorKind::kWind:
      return "wind";
    case GeneratorKind::kSolar:
      return "solar";
  }
  return "thermal";
}

GeneratorKind generator_kind_from_string(std::string_view text) {
  if (text == "thermal") return GeneratorKind::kThermal;
  if (text == "wind") return GeneratorKind::kWind;
  if (text == "solar") return GeneratorKind::kSolar;
  throw InvalidArgument(fmt::format("unknown generator kind '{}'", text));
}

void GepInstance::validate() const {
  require(horizon >= 1, "instance: horizon must be positive");
  require(std::isfinite(delta) && delta > 0.0, "instance: delta must be > 0");
  require(demand.size() == static_cast<std::size_t>(horizon),
          fmt::format("instance: demand has {} entries, horizon is {}",
                      demand.size(), horizon));
  for (std::size_t t = 0; t < demand.size(); ++t) {
    require(finite_nonneg(demand[t]),
            fmt::format("instance: demand[{}] must be finite and >= 0", t));
  }
  require(capacity_factors.size() == generators.size(),
          "instance: one capacity-factor row per generator required");

  double max_op = 0.0;
  for (std::size_t g = 0; g < generators.size(); ++g) {
    const GeneratorSpec& spec = generators[g];
    require(spec.id == static_cast<int>(g),
            fmt::format("instance: generator at position {} has id {}", g, spec.id));
    require(finite_nonneg(spec.op_cost) && finite_nonneg(spec.inv_cost),
            fmt::format("instance: generator {} costs must be >= 0", g));
    require(finite_nonneg(spec.x_min) && std::isfinite(spec.x_max) &&
                spec.x_min <= spec.x_max,
            fmt::format("instance: generator {} needs 0 <= x_min <= x_max", g));
    max_op = std::max(max_op, spec.op_cost);

    const auto& row = capacity_factors[g];
    require(row.size() == static_cast<std::size_t>(horizon),
            fmt::format("instance: capacity factors of generator {} have {} "
                        "entries, horizon is {}",
                        g, row.size(), horizon));
    for (std::size_t t = 0; t < row.size(); ++t) {
      require(std::isfinite(row[t]) && row[t] >= 0.0 && row[t] <= 1.0,
              fmt::format("instance: capacity factor [{}][{}] = {} outside [0, 1]",
                          g, t, row[t]));
      if (spec.kind == GeneratorKind::kThermal) {
        require(row[t] == 1.0,
                fmt::format("instance: thermal generator {} must have capacity "
                            "factor 1 at every step",
                            g));
      }
    }
  }

  for (std::size_t n = 0; n < storages.size(); ++n) {
    const StorageSpec& s = storages[n];
    require(s.id == static_cast<int>(n),
            fmt::format("instance: storage at position {} has id {}", n, s.id));
    require(finite_nonneg(s.charge_cost) && finite_nonneg(s.discharge_cost) &&
                finite_nonneg(s.inv_cost),
            fmt::format("instance: storage {} costs must be >= 0", n));
    require(finite_nonneg(s.x_min) && std::isfinite(s.x_max) && s.x_min <= s.x_max,
            fmt::format("instance: storage {} needs 0 <= x_min <= x_max", n));
    require(s.eta_c > 0.0 && s.eta_c <= 1.0,
            fmt::format("instance: storage {} eta_c must lie in (0, 1]", n));
    require(std::isfinite(s.eta_d) && s.eta_d > 0.0 && s.eta_c / s.eta_d <= 1.0 + 1e-12,
            fmt::format("instance: storage {} round-trip efficiency exceeds 1", n));
    require(std::isfinite(s.e2p_ratio) && s.e2p_ratio > 0.0,
            fmt::format("instance: storage {} e2p_ratio must be > 0", n));
    require(finite_nonneg(s.e0), fmt::format("instance: storage {} e0 must be >= 0", n));
  }

  require(std::isfinite(nse_cost) && nse_cost > max_op,
          "instance: nse_cost must exceed every generator operating cost");
}

std::string instance_to_json(const GepInstance& inst) {
  json doc;
  doc["schema"] = kSchema;
  doc["horizon"] = inst.horizon;
  doc["delta"] = inst.delta;
  doc["nse_cost"] = inst.nse_cost;
  doc["demand"] = inst.demand;
  json gens = json::array();
  for (const auto& g : inst.generators) {
    gens.push_back({{"id", g.id},
                    {"kind", std::string(to_string(g.kind))},
                    {"op_cost", g.op_cost},
                    {"inv_cost", g.inv_cost},
                    {"x_min", g.x_min},
                    {"x_max", g.x_max}});
  }
  doc["generators"] = std::move(gens);
  json stores = json::array();
  for (const auto& s : inst.storages) {
    stores.push_back({{"id", s.id},
                      {"charge_cost", s.charge_cost},
                      {"discharge_cost", s.discharge_cost},
                      {"inv_cost", s.inv_cost},
                      {"x_min", s.x_min},
                      {"x_max", s.x_max},
                      {"eta_c", s.eta_c},
                      {"eta_d", s.eta_d},
                      {"e2p_ratio", s.e2p_ratio},
                      {"e0", s.e0}});
  }
  doc["storages"] = std::move(stores);
  doc["capacity_factors"] = inst.capacity_factors;
  return doc.dump(1) + "\n";
}

GepInstance instance_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IngestionError(fmt::format("instance JSON: {}", e.what()));
  }
  if (!doc.is_object()) throw IngestionError("instance JSON: top level must be an object");
  if (auto it = doc.find("schema"); it != doc.end() && *it != kSchema) {
    throw IngestionError(
        fmt::format("instance JSON: unsupported schema {}", it->dump()));
  }

  GepInstance inst;
  inst.horizon = field<int>(doc, "horizon");
  inst.delta = field<double>(doc, "delta");
  inst.nse_cost = field<double>(doc, "nse_cost");
  inst.demand = field<std::vector<double>>(doc, "demand");
  inst.capacity_factors = field<std::vector<std::vector<double>>>(doc, "capacity_factors");
  for (const json& g : field<json>(doc, "generators")) {
    GeneratorSpec spec;
    spec.id = field<int>(g, "id");
    spec.kind = generator_kind_from_string(field<std::string>(g, "kind"));
    spec.op_cost = field<double>(g, "op_cost");
    spec.inv_cost = field<double>(g, "inv_cost");
    spec.x_min = field<double>(g, "x_min");
    spec.x_max = field<double>(g, "x_max");
    inst.generators.push_back(spec);
  }
  for (const json& s : field<json>(doc, "storages")) {
    StorageSpec spec;
    spec.id = field<int>(s, "id");
    spec.charge_cost = field<double>(s, "charge_cost");
    spec.discharge_cost = field<double>(s, "discharge_cost");
    spec.inv_cost = field<double>(s, "inv_cost");
    spec.x_min = field<double>(s, "x_min");
    spec.x_max = field<double>(s, "x_max");
    spec.eta_c = field<double>(s, "eta_c");
    spec.eta_d = field<double>(s, "eta_d");
    spec.e2p_ratio = field<double>(s, "e2p_ratio");
    spec.e0 = field<double>(s, "e0");
    inst.storages.push_back(spec);
  }
  inst.validate();
  return inst;
}

void save_instance(const GepInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IngestionError(fmt::format("cannot write '{}'", path.string()));
  out << instance_to_json(inst);
}

GepInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return instance_from_json(buffer.str());
}

}  // namespace gep
