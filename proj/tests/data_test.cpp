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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>

#include <fmt/format.h>

#include "gep/data.hpp"
#include "gep/error.hpp"
#include "gep/instance.hpp"

namespace gep {
namespace {

TEST(TechnologyMix, TwentyFortyForty) {
  const TechnologyMix ten = technology_mix(10);
  EXPECT_EQ(ten.thermal, 2);
  EXPECT_EQ(ten.wind, 4);
  EXPECT_EQ(ten.solar, 4);
  // Odd remainders give wind the extra unit.
  const TechnologyMix seven = technology_mix(7);
  EXPECT_EQ(seven.thermal, 1);
  EXPECT_EQ(seven.wind, 3);
  EXPECT_EQ(seven.solar, 3);
  const TechnologyMix six = technology_mix(6);
  EXPECT_EQ(six.thermal, 1);
  EXPECT_EQ(six.wind, 3);
  EXPECT_EQ(six.solar, 2);
  for (int g = 0; g < 50; ++g) {
    const TechnologyMix m = technology_mix(g);
    EXPECT_EQ(m.thermal + m.wind + m.solar, g);
    EXPECT_GE(m.wind, m.solar);
  }
}

TEST(SynthProfiles, ShapesAndRanges) {
  const BaseProfiles b = synth_profiles(3, 24 * 14);
  ASSERT_EQ(b.demand.size(), 24u * 14);
  for (std::size_t t = 0; t < b.demand.size(); ++t) {
    const int hour = static_cast<int>(t % 24);
    EXPECT_GE(b.solar[t], 0.0);
    EXPECT_LE(b.solar[t], 1.0);
    EXPECT_GE(b.wind[t], 0.0);
    EXPECT_LE(b.wind[t], 1.0);
    EXPECT_GT(b.demand[t], 0.0);
    if (hour <= 5 || hour >= 19) EXPECT_EQ(b.solar[t], 0.0) << t;
  }
  // Evening peak above the night trough on average.
  double evening = 0, night = 0;
  for (int d = 0; d < 14; ++d) {
    evening += b.demand[d * 24 + 19];
    night += b.demand[d * 24 + 3];
  }
  EXPECT_GT(evening, night);
  EXPECT_THROW(synth_profiles(1, 25), InvalidArgument);
}

TEST(SynthProfiles, SameSeedSameProfiles) {
  const BaseProfiles a = synth_profiles(42, 96);
  const BaseProfiles b = synth_profiles(42, 96);
  EXPECT_EQ(a.demand, b.demand);
  EXPECT_EQ(a.wind, b.wind);
  EXPECT_EQ(a.solar, b.solar);
  EXPECT_NE(a.demand, synth_profiles(43, 96).demand);
}

GepInstance make(int g, int n, std::uint64_t seed, int horizon = 48) {
  const BaseProfiles b = synth_profiles(seed, horizon);
  return generate_instance({g, n, seed, horizon, 1.0}, b.demand, b.wind, b.solar);
}

TEST(GenerateInstance, ParameterRanges) {
  const GepInstance inst = make(10, 3, 5);
  inst.validate();
  int thermal = 0;
  for (const GeneratorSpec& g : inst.generators) {
    if (g.kind == GeneratorKind::kThermal) {
      ++thermal;
      EXPECT_EQ(g.op_cost, 50);
      EXPECT_GE(g.inv_cost, 3e6);
      EXPECT_LE(g.inv_cost, 4e6);
      EXPECT_EQ(g.x_min, 0.5);
    } else {
      EXPECT_EQ(g.op_cost, 1);
      EXPECT_GE(g.inv_cost, 5e5);
      EXPECT_LE(g.inv_cost, 6e5);
      EXPECT_EQ(g.x_min, 0.2);
    }
    EXPECT_EQ(g.x_max, 1);
  }
  EXPECT_EQ(thermal, 2);
  for (const StorageSpec& s : inst.storages) {
    EXPECT_DOUBLE_EQ(s.eta_c, 0.9);
    EXPECT_DOUBLE_EQ(s.eta_d, 1 / 0.9);
    EXPECT_GE(s.charge_cost, 5);
    EXPECT_LE(s.charge_cost, 15);
    EXPECT_GE(s.discharge_cost, 5);
    EXPECT_LE(s.discharge_cost, 15);
    EXPECT_GE(s.inv_cost, 4.5e5);
    EXPECT_LE(s.inv_cost, 5.5e5);
    EXPECT_EQ(s.x_min, 0.25);
    EXPECT_EQ(s.e0, 0);
    EXPECT_EQ(s.e2p_ratio, 2);
  }
  EXPECT_EQ(inst.nse_cost, 1e5);
}

TEST(GenerateInstance, DemandScaleAndNoise) {
  const BaseProfiles b = synth_profiles(8, 48);
  const GepInstance inst = generate_instance({5, 0, 8, 48, 1.0}, b.demand, b.wind, b.solar);
  for (int t = 0; t < 48; ++t) EXPECT_DOUBLE_EQ(inst.demand[t], 0.25 * b.demand[t]);
  for (int g = 0; g < 5; ++g) {
    const auto kind = inst.generators[g].kind;
    if (kind == GeneratorKind::kThermal) continue;
    const auto& base = kind == GeneratorKind::kWind ? b.wind : b.solar;
    // One multiplier per unit, applied before clipping.
    std::optional<double> ratio;
    for (int t = 0; t < 48; ++t) {
      const double f = inst.capacity_factors[g][t];
      if (base[t] <= 0 || f >= 1.0) continue;
      if (!ratio) ratio = f / base[t];
      EXPECT_NEAR(f / base[t], *ratio, 1e-12);
    }
    if (ratio) {
      EXPECT_GE(*ratio, 0.85);
      EXPECT_LE(*ratio, 1.15);
    }
  }
}

TEST(GenerateInstance, Deterministic) {
  EXPECT_EQ(instance_to_json(make(10, 1, 7)), instance_to_json(make(10, 1, 7)));
  EXPECT_NE(instance_to_json(make(10, 1, 7)), instance_to_json(make(10, 1, 8)));
}

TEST(GenerateInstance, RejectsBadBaseSeries) {
  BaseProfiles b = synth_profiles(1, 24);
  b.wind[3] = 1.2;
  EXPECT_THROW(generate_instance({3, 0, 1, 24, 1.0}, b.demand, b.wind, b.solar), InvalidArgument);
  b = synth_profiles(1, 24);
  b.demand[0] = NAN;
  EXPECT_THROW(generate_instance({3, 0, 1, 24, 1.0}, b.demand, b.wind, b.solar), InvalidArgument);
  b.demand.pop_back();
  EXPECT_THROW(generate_instance({3, 0, 1, 24, 1.0}, b.demand, b.wind, b.solar), InvalidArgument);
}

TEST(SynthSpec, Validation) {
  EXPECT_THROW((SynthSpec{-1, 0, 0, 24, 1.0}.validate()), InvalidArgument);
  EXPECT_THROW((SynthSpec{1, 0, 0, 25, 1.0}.validate()), InvalidArgument);
  EXPECT_THROW((SynthSpec{1, 0, 0, 24, 0.0}.validate()), InvalidArgument);
  EXPECT_NO_THROW((SynthSpec{1, 0, 0, 48, 0.5}.validate()));
}

std::string hourly_csv(int rows, double value = 0.5) {
  std::string s = "timestamp,value\n";
  for (int h = 0; h < rows; ++h) {
    s += fmt::format("2024-01-{:02d}T{:02d}:00:00Z,{}\n", 1 + h / 24, h % 24, value);
  }
  return s;
}

TEST(ParseSeriesCsv, WellFormedFile) {
  const auto v = parse_series_csv(hourly_csv(48), SeriesKind::kFactor);
  EXPECT_EQ(v.size(), 48u);
  EXPECT_EQ(v[0], 0.5);
}

TEST(ParseSeriesCsv, FullYear) {
  std::string s = "timestamp,value\n";
  std::int64_t t0 = 0;
  ASSERT_TRUE(parse_iso8601("2023-01-01T00:00:00Z", t0));
  for (int h = 0; h < 8760; ++h) {
    const std::int64_t t = t0 + 3600LL * h;
    const std::int64_t day = t / 86400;
    // Civil date from days since the epoch.
    std::int64_t z = day + 719468, era = z / 146097, doe = z - era * 146097;
    std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100), mp = (5 * doy + 2) / 153;
    const int d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    const int m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
    const int y = static_cast<int>(yoe + era * 400 + (m <= 2));
    s += fmt::format("{:04d}-{:02d}-{:02d} {:02d}:00,{}\n", y, m, d, (t / 3600) % 24, 1.0 + h % 7);
  }
  EXPECT_EQ(parse_series_csv(s, SeriesKind::kValue).size(), 8760u);
}

TEST(ParseSeriesCsv, ErrorsNameTheOffendingRows) {
  std::string dup = hourly_csv(3);
  dup += "2024-01-01T02:00:00Z,0.3\n";
  try {
    parse_series_csv(dup, SeriesKind::kValue, "dup.csv");
    FAIL() << "duplicate accepted";
  } catch (const IngestionError& e) {
    EXPECT_NE(std::string(e.what()).find("line 5"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_series_csv(hourly_csv(3, 1.2), SeriesKind::kFactor), IngestionError);
  EXPECT_NO_THROW(parse_series_csv(hourly_csv(3, 1.2), SeriesKind::kValue));
  EXPECT_THROW(parse_series_csv("time,value\n", SeriesKind::kValue), IngestionError);
  EXPECT_THROW(parse_series_csv("timestamp,value\n2024-01-01T00:00Z,1\n2024-01-01T02:00Z,1\n",
                                SeriesKind::kValue),
               IngestionError);
  EXPECT_THROW(parse_series_csv("timestamp,value\n2024-01-01T02:00Z,1\n2024-01-01T01:00Z,1\n",
                                SeriesKind::kValue),
               IngestionError);
  EXPECT_THROW(parse_series_csv("timestamp,value\nyesterday,1\n", SeriesKind::kValue),
               IngestionError);
  EXPECT_THROW(parse_series_csv("timestamp,value\n", SeriesKind::kValue), IngestionError);
}

TEST(LoadSeriesCsv, ReadsFilesAndReportsMissingOnes) {
  const auto path = std::filesystem::temp_directory_path() / "gep_series_test.csv";
  {
    std::ofstream out(path);
    out << hourly_csv(24);
  }
  EXPECT_EQ(load_series_csv(path, SeriesKind::kFactor).size(), 24u);
  std::filesystem::remove(path);
  EXPECT_THROW(load_series_csv(path, SeriesKind::kFactor), IngestionError);
}

TEST(ParseIso8601, OffsetsAndSeparators) {
  std::int64_t a = 0, b = 0, c = 0;
  ASSERT_TRUE(parse_iso8601("2024-03-01T12:00:00Z", a));
  ASSERT_TRUE(parse_iso8601("2024-03-01 13:00+01:00", b));
  ASSERT_TRUE(parse_iso8601("2024-03-01T12:00", c));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  std::int64_t feb = 0;
  ASSERT_TRUE(parse_iso8601("2024-02-29T12:00:00Z", feb));
  EXPECT_EQ(a - feb, 86400);
  EXPECT_FALSE(parse_iso8601("2023-02-29T00:00Z", feb));
  EXPECT_FALSE(parse_iso8601("2024-13-01T00:00Z", feb));
}

}  // namespace
}  // namespace gep
