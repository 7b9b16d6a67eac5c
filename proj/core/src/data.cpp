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

#include "gep/data.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "gep/error.hpp"
#include "gep/rng.hpp"

namespace gep {
namespace {

enum StreamTag : std::uint64_t { kUnits = 1, kDemand = 2, kWind = 3, kSolar = 4 };

void check_base(const std::vector<double>& series, int horizon, std::string_view name,
                bool factor) {
  if (static_cast<int>(series.size()) != horizon) {
    throw InvalidArgument(fmt::format("{} series has {} entries, expected {}", name,
                                      series.size(), horizon));
  }
  for (std::size_t t = 0; t < series.size(); ++t) {
    const double v = series[t];
    if (!std::isfinite(v)) {
      throw InvalidArgument(fmt::format("{} series: entry {} is not finite", name, t));
    }
    if (factor && (v < 0.0 || v > 1.0)) {
      throw InvalidArgument(
          fmt::format("{} series: capacity factor {} at entry {} outside [0, 1]", name, v, t));
    }
    if (!factor && v < 0.0) {
      throw InvalidArgument(fmt::format("{} series: negative value at entry {}", name, t));
    }
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' ||
                        s.front() == '\n')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n')) {
    s.remove_suffix(1);
  }
  return s;
}

bool read_digits(std::string_view s, std::size_t pos, std::size_t count, int& out) {
  if (pos + count > s.size()) return false;
  out = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
    out = out * 10 + (s[i] - '0');
  }
  return true;
}

}  // namespace

void SynthSpec::validate() const {
  if (n_generators < 0 || n_storages < 0) {
    throw InvalidArgument("synth spec: unit counts must be >= 0");
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw InvalidArgument("synth spec: delta must be positive");
  }
  const double steps_per_day = 24.0 / delta;
  if (std::abs(steps_per_day - std::round(steps_per_day)) > 1e-9) {
    throw InvalidArgument("synth spec: 24 h must be a whole number of steps");
  }
  const int per_day = static_cast<int>(std::lround(steps_per_day));
  if (horizon < per_day || horizon % per_day != 0) {
    throw InvalidArgument(
        fmt::format("synth spec: horizon {} is not a positive multiple of {}", horizon, per_day));
  }
}

TechnologyMix technology_mix(int n_generators) {
  if (n_generators < 0) throw InvalidArgument("technology_mix: negative generator count");
  TechnologyMix mix;
  mix.thermal = static_cast<int>(std::lround(0.2 * n_generators));
  const int rest = n_generators - mix.thermal;
  mix.solar = rest / 2;
  mix.wind = rest - mix.solar;
  return mix;
}

GepInstance generate_instance(const SynthSpec& spec, const std::vector<double>& base_demand,
                              const std::vector<double>& base_wind,
                              const std::vector<double>& base_solar) {
  spec.validate();
  check_base(base_demand, spec.horizon, "demand", false);
  check_base(base_wind, spec.horizon, "wind", true);
  check_base(base_solar, spec.horizon, "solar", true);

  Rng rng(derive_seed(spec.seed, {kUnits}));
  GepInstance inst;
  inst.horizon = spec.horizon;
  inst.delta = spec.delta;
  inst.nse_cost = 1e5;

  for (int n = 0; n < spec.n_storages; ++n) {
    StorageSpec s;
    s.id = n;
    s.eta_c = 0.9;
    s.eta_d = 1.0 / 0.9;
    s.charge_cost = rng.uniform(5.0, 15.0);
    s.discharge_cost = rng.uniform(5.0, 15.0);
    s.inv_cost = rng.uniform(4.5e5, 5.5e5);
    s.x_min = 0.25;
    s.x_max = 1.0;
    s.e0 = 0.0;
    s.e2p_ratio = 2.0;
    inst.storages.push_back(s);
  }

  const TechnologyMix mix = technology_mix(spec.n_generators);
  auto add_unit = [&](GeneratorKind kind, const std::vector<double>* base) {
    GeneratorSpec g;
    g.id = inst.num_generators();
    g.kind = kind;
    if (kind == GeneratorKind::kThermal) {
      g.op_cost = 50.0;
      g.inv_cost = rng.uniform(3e6, 4e6);
      g.x_min = 0.5;
      g.x_max = 1.0;
      inst.capacity_factors.emplace_back(static_cast<std::size_t>(spec.horizon), 1.0);
    } else {
      g.op_cost = 1.0;
      g.inv_cost = rng.uniform(5e5, 6e5);
      g.x_min = 0.2;
      g.x_max = 1.0;
      const double noise = rng.uniform(0.85, 1.15);
      std::vector<double> cf(base->size());
      for (std::size_t t = 0; t < cf.size(); ++t) cf[t] = std::clamp((*base)[t] * noise, 0.0, 1.0);
      inst.capacity_factors.push_back(std::move(cf));
    }
    inst.generators.push_back(g);
  };
  for (int i = 0; i < mix.thermal; ++i) add_unit(GeneratorKind::kThermal, nullptr);
  for (int i = 0; i < mix.wind; ++i) add_unit(GeneratorKind::kWind, &base_wind);
  for (int i = 0; i < mix.solar; ++i) add_unit(GeneratorKind::kSolar, &base_solar);

  const double scale = 0.05 * (spec.n_generators + spec.n_storages);
  inst.demand.resize(base_demand.size());
  for (std::size_t t = 0; t < base_demand.size(); ++t) inst.demand[t] = base_demand[t] * scale;

  inst.validate();
  return inst;
}

BaseProfiles synth_profiles(std::uint64_t seed, int horizon) {
  if (horizon < 24 || horizon % 24 != 0) {
    throw InvalidArgument(fmt::format("synth_profiles: horizon {} is not a multiple of 24", horizon));
  }
  const int days = horizon / 24;
  BaseProfiles out;
  out.demand.resize(static_cast<std::size_t>(horizon));
  out.wind.resize(static_cast<std::size_t>(horizon));
  out.solar.resize(static_cast<std::size_t>(horizon));

  Rng demand_rng(derive_seed(seed, {kDemand}));
  for (int d = 0; d < days; ++d) {
    const double level = demand_rng.uniform(0.9, 1.05);
    for (int h = 0; h < 24; ++h) {
      const double morning = 0.15 * std::exp(-0.5 * std::pow((h - 8.0) / 1.8, 2));
      const double evening = 0.3 * std::exp(-0.5 * std::pow((h - 19.0) / 2.0, 2));
      const double v = (0.55 + morning + evening) * level + demand_rng.uniform(-0.02, 0.02);
      out.demand[d * 24 + h] = std::max(v, 0.05);
    }
  }

  Rng solar_rng(derive_seed(seed, {kSolar}));
  for (int d = 0; d < days; ++d) {
    const double clearness = solar_rng.uniform(0.3, 1.0);
    for (int h = 0; h < 24; ++h) {
      double v = 0.0;
      if (h > 6 && h < 18) {
        v = clearness * 0.85 * std::sin(std::numbers::pi * (h - 6) / 12.0);
      }
      out.solar[d * 24 + h] = std::clamp(v, 0.0, 1.0);
    }
  }

  Rng wind_rng(derive_seed(seed, {kWind}));
  double w = wind_rng.uniform(0.1, 0.6);
  for (int t = 0; t < horizon; ++t) {
    w = 0.92 * w + 0.08 * 0.35 + wind_rng.uniform(-0.08, 0.08);
    w = std::clamp(w, 0.0, 1.0);
    out.wind[t] = w;
  }
  return out;
}

bool parse_iso8601(std::string_view s, std::int64_t& seconds) {
  int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
  if (!read_digits(s, 0, 4, year) || s.size() < 16 || s[4] != '-' ||
      !read_digits(s, 5, 2, month) || s[7] != '-' || !read_digits(s, 8, 2, day) ||
      (s[10] != 'T' && s[10] != ' ') || !read_digits(s, 11, 2, hour) || s[13] != ':' ||
      !read_digits(s, 14, 2, minute)) {
    return false;
  }
  std::size_t pos = 16;
  if (pos < s.size() && s[pos] == ':') {
    if (!read_digits(s, pos + 1, 2, second)) return false;
    pos += 3;
  }
  int offset = 0;
  if (pos < s.size()) {
    if (s[pos] == 'Z' && pos + 1 == s.size()) {
      pos += 1;
    } else if ((s[pos] == '+' || s[pos] == '-') && s.size() == pos + 6 && s[pos + 3] == ':') {
      int oh = 0, om = 0;
      if (!read_digits(s, pos + 1, 2, oh) || !read_digits(s, pos + 4, 2, om)) return false;
      offset = (oh * 60 + om) * 60 * (s[pos] == '+' ? 1 : -1);
      pos += 6;
    } else {
      return false;
    }
  }
  if (pos != s.size() || hour > 23 || minute > 59 || second > 59) return false;
  const std::chrono::year_month_day ymd{std::chrono::year{year},
                                        std::chrono::month{static_cast<unsigned>(month)},
                                        std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) return false;
  const auto days = std::chrono::sys_days{ymd}.time_since_epoch().count();
  seconds = static_cast<std::int64_t>(days) * 86400 + hour * 3600 + minute * 60 + second - offset;
  return true;
}

std::vector<double> parse_series_csv(std::string_view text, SeriesKind kind,
                                     std::string_view source) {
  std::vector<std::string> problems;
  std::vector<double> values;
  std::int64_t previous = 0;
  bool have_previous = false;
  bool header_seen = false;
  int line_no = 0;

  std::size_t pos = 0;
  if (text.substr(0, 3) == "\xEF\xBB\xBF") pos = 3;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      if (line != "timestamp,value") {
        throw IngestionError(fmt::format("{}: line {}: expected header 'timestamp,value', got '{}'",
                                         source, line_no, line));
      }
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      problems.push_back(fmt::format("line {}: expected two columns", line_no));
      continue;
    }
    const std::string_view stamp = trim(line.substr(0, comma));
    const std::string_view field = trim(line.substr(comma + 1));
    std::int64_t seconds = 0;
    if (!parse_iso8601(stamp, seconds)) {
      problems.push_back(fmt::format("line {}: bad timestamp '{}'", line_no, stamp));
      continue;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value)) {
      problems.push_back(fmt::format("line {}: bad value '{}'", line_no, field));
      continue;
    }
    if (kind == SeriesKind::kFactor && (value < 0.0 || value > 1.0)) {
      problems.push_back(
          fmt::format("line {}: capacity factor {} outside [0, 1]", line_no, field));
    }
    if (have_previous) {
      const std::int64_t step = seconds - previous;
      if (step == 0) {
        problems.push_back(fmt::format("line {}: duplicate timestamp {}", line_no, stamp));
      } else if (step < 0) {
        problems.push_back(fmt::format("line {}: timestamp {} goes backwards", line_no, stamp));
      } else if (step != 3600) {
        problems.push_back(fmt::format("line {}: gap of {} s before {} (expected 3600 s)", line_no,
                                       step, stamp));
      }
    }
    if (!have_previous || seconds > previous) previous = seconds;
    have_previous = true;
    values.push_back(value);
  }
  if (!header_seen) throw IngestionError(fmt::format("{}: empty file", source));
  if (!problems.empty()) {
    std::string msg = fmt::format("{}: {} invalid row(s)", source, problems.size());
    const std::size_t shown = std::min<std::size_t>(problems.size(), 20);
    for (std::size_t i = 0; i < shown; ++i) msg += "\n  " + problems[i];
    if (shown < problems.size()) msg += fmt::format("\n  ... {} more", problems.size() - shown);
    throw IngestionError(msg);
  }
  if (values.empty()) throw IngestionError(fmt::format("{}: no data rows", source));
  return values;
}

std::vector<double> load_series_csv(const std::filesystem::path& path, SeriesKind kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_series_csv(buf.str(), kind, path.string());
}

}  // namespace gep
