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

#include <gtest/gtest.h>

#include <filesystem>

#include "gep/error.hpp"
#include "gep/instance.hpp"
#include "support/oracles.hpp"

namespace gep {
namespace {

GepInstance two_step() {
  GepInstance inst;
  inst.horizon = 2;
  inst.generators.push_back({0, GeneratorKind::kThermal, 50, 3e6, 0.5, 1});
  inst.generators.push_back({1, GeneratorKind::kSolar, 1, 5e5, 0.2, 1});
  inst.storages.push_back({0, 5, 6, 5e5, 0.25, 1, 0.9, 1 / 0.9, 2, 0});
  inst.capacity_factors = {{1, 1}, {0, 0.7}};
  inst.demand = {0.4, 0.6};
  return inst;
}

TEST(GepInstance, ValidInstancePasses) { EXPECT_NO_THROW(two_step().validate()); }

TEST(GepInstance, InvariantViolationsAreRejected) {
  auto broken = [](auto&& edit) {
    GepInstance inst = two_step();
    edit(inst);
    return inst;
  };
  EXPECT_THROW(broken([](GepInstance& i) { i.demand.pop_back(); }).validate(), InvalidArgument);
  EXPECT_THROW(broken([](GepInstance& i) { i.capacity_factors[1][0] = 1.2; }).validate(),
               InvalidArgument);
  EXPECT_THROW(broken([](GepInstance& i) { i.capacity_factors[0][1] = 0.9; }).validate(),
               InvalidArgument);
  EXPECT_THROW(broken([](GepInstance& i) { i.delta = 0; }).validate(), InvalidArgument);
  EXPECT_THROW(broken([](GepInstance& i) { i.nse_cost = 50; }).validate(), InvalidArgument);
  EXPECT_THROW(broken([](GepInstance& i) { i.generators[0].x_min = 2; }).validate(),
               InvalidArgument);
  EXPECT_THROW(broken([](GepInstance& i) { i.storages[0].eta_c = 1.5; }).validate(),
               InvalidArgument);
  EXPECT_THROW(broken([](GepInstance& i) { i.storages[0].eta_d = 0.5; }).validate(),
               InvalidArgument);
  EXPECT_THROW(broken([](GepInstance& i) { i.storages[0].e2p_ratio = 0; }).validate(),
               InvalidArgument);
  EXPECT_THROW(broken([](GepInstance& i) { i.generators[1].id = 7; }).validate(),
               InvalidArgument);
}

TEST(GepInstance, JsonRoundTripIsExact) {
  const GepInstance inst = testing::small_instance(9, 5, 2, 48);
  const std::string text = instance_to_json(inst);
  const GepInstance back = instance_from_json(text);
  EXPECT_EQ(instance_to_json(back), text);
  EXPECT_EQ(back.demand, inst.demand);
  EXPECT_EQ(back.capacity_factors, inst.capacity_factors);
  EXPECT_EQ(back.storages[1].eta_d, inst.storages[1].eta_d);
}

TEST(GepInstance, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "gep_instance_test.json";
  const GepInstance inst = two_step();
  save_instance(inst, path);
  EXPECT_EQ(instance_to_json(load_instance(path)), instance_to_json(inst));
  std::filesystem::remove(path);
  EXPECT_THROW(load_instance(path), IngestionError);
}

TEST(GepInstance, MalformedJsonIsIngestionError) {
  EXPECT_THROW(instance_from_json("{"), IngestionError);
  EXPECT_THROW(instance_from_json("[]"), IngestionError);
  EXPECT_THROW(instance_from_json(R"({"schema": "other/9"})"), IngestionError);
  EXPECT_THROW(instance_from_json(R"({"horizon": 2})"), IngestionError);
}

TEST(GeneratorKind, StringRoundTrip) {
  for (auto k : {GeneratorKind::kThermal, GeneratorKind::kWind, GeneratorKind::kSolar}) {
    EXPECT_EQ(generator_kind_from_string(to_string(k)), k);
  }
}

}  // namespace
}  // namespace gep
