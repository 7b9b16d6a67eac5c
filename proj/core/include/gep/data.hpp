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
#include <filesystem>
#include <string_view>
#include <vector>

#include "gep/instance.hpp"

namespace gep {

struct SynthSpec {
  int n_generators = 10;
  int n_storages = 1;
  std::uint64_t seed = 0;
  int horizon = 8760;
  double delta = 1.0;  // h

  void validate() const;
};

struct TechnologyMix {
  int thermal = 0;
  int wind = 0;
  int solar = 0;
};

// 20% thermal (rounded to nearest), the rest split between wind and solar
// with wind taking the odd unit.
TechnologyMix technology_mix(int n_generators);

// Draws unit parameters from the synthetic distributions and scales the base
// series. Generators are ordered thermal, wind, solar.
GepInstance generate_instance(const SynthSpec& spec, const std::vector<double>& base_demand,
                              const std::vector<double>& base_wind,
                              const std::vector<double>& base_solar);

struct BaseProfiles {
  std::vector<double> demand;
  std::vector<double> wind;
  std::vector<double> solar;
};

// Hourly diurnal profiles: demand with a morning shoulder and an evening
// peak, a midday solar bell that is zero at night, and autocorrelated wind.
BaseProfiles synth_profiles(std::uint64_t seed, int horizon);

enum class SeriesKind { kValue, kFactor };

// `timestamp,value` CSV with ISO-8601 timestamps at hourly cadence. Throws
// IngestionError listing every offending row.
std::vector<double> parse_series_csv(std::string_view text, SeriesKind kind,
                                     std::string_view source = "<memory>");
std::vector<double> load_series_csv(const std::filesystem::path& path, SeriesKind kind);

// Seconds since 1970-01-01T00:00:00Z. Accepts `YYYY-MM-DD[T ]hh:mm[:ss]`
// followed by an optional `Z` or `+hh:mm` / `-hh:mm` offset.
bool parse_iso8601(std::string_view text, std::int64_t& seconds);

}  // namespace gep
