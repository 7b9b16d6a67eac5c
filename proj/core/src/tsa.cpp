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

#include "gep/tsa.hpp"

#include <cmath>

#include <fmt/format.h>

#include "gep/error.hpp"

namespace gep {

FeatureSeries::FeatureSeries(int dimension, std::vector<double> values)
    : dimension_(dimension), values_(std::move(values)) {
  if (dimension_ < 1) throw InvalidArgument("features: dimension must be >= 1");
  if (values_.size() % static_cast<std::size_t>(dimension_) != 0) {
    throw InvalidArgument("features: value count is not a multiple of the dimension");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw InvalidArgument(fmt::format("features: entry {} is not finite", i));
    }
  }
}

FeatureSeries FeatureSeries::scalar(std::vector<double> values) {
  return FeatureSeries(1, std::move(values));
}

AggregatedSeries aggregate_series(const GepInstance& inst, const Partition& part) {
  if (part.horizon() != inst.horizon) {
    throw InvalidArgument("aggregate_series: partition does not cover the instance horizon");
  }
  AggregatedSeries out;
  out.demand.reserve(part.blocks().size());
  out.capacity_factors.assign(inst.generators.size(), {});
  for (const Block& b : part.blocks()) {
    double sum = 0.0;
    for (int t = b.start; t < b.end(); ++t) sum += inst.demand[t];
    out.demand.push_back(sum / b.length);
  }
  for (std::size_t g = 0; g < inst.generators.size(); ++g) {
    const auto& row = inst.capacity_factors[g];
    auto& agg = out.capacity_factors[g];
    agg.reserve(part.blocks().size());
    for (const Block& b : part.blocks()) {
      double sum = 0.0;
      for (int t = b.start; t < b.end(); ++t) sum += row[t];
      agg.push_back(sum / b.length);
    }
  }
  return out;
}

Partition sliding_window_cluster(const FeatureSeries& features, double zeta) {
  if (!(zeta >= 0.0)) throw InvalidArgument("sliding_window_cluster: zeta must be >= 0");
  const int T = features.size();
  if (T == 0) throw InvalidArgument("sliding_window_cluster: empty feature series");
  const int d = features.dimension();

  std::vector<Block> blocks;
  std::vector<double> centroid(features.point(0).begin(), features.point(0).end());
  Block open{0, 1};
  for (int t = 1; t < T; ++t) {
    const auto a = features.point(t);
    double dist2 = 0.0;
    for (int i = 0; i < d; ++i) {
      const double diff = a[i] - centroid[i];
      dist2 += diff * diff;
    }
    if (std::sqrt(dist2) <= zeta) {
      ++open.length;
      const double inv = 1.0 / open.length;
      for (int i = 0; i < d; ++i) centroid[i] += (a[i] - centroid[i]) * inv;
    } else {
      blocks.push_back(open);
      open = {t, 1};
      centroid.assign(a.begin(), a.end());
    }
  }
  blocks.push_back(open);
  return Partition::from_blocks(std::move(blocks), T);
}

DispatchSchedule lift_solution(const GepInstance& inst, const Partition& part,
                               const DispatchSchedule& agg) {
  if (agg.steps != part.size() || agg.e_ns.size() != static_cast<std::size_t>(part.size())) {
    throw StructuralError(fmt::format(
        "lift_solution: schedule has {} steps, partition has {} blocks", agg.steps,
        part.size()));
  }
  const int G = static_cast<int>(agg.p_g.size());
  const int N = static_cast<int>(agg.e_s.size());
  if (G != inst.num_generators() || N != inst.num_storages() ||
      part.horizon() != inst.horizon) {
    throw StructuralError("lift_solution: schedule does not match the instance");
  }
  DispatchSchedule full = DispatchSchedule::zeros(G, N, part.horizon());
  for (int k = 0; k < part.size(); ++k) {
    const Block& b = part[k];
    for (int t = b.start; t < b.end(); ++t) {
      full.e_ns[t] = agg.e_ns[k];
      for (int g = 0; g < G; ++g) full.p_g[g][t] = agg.p_g[g][k];
      for (int n = 0; n < N; ++n) {
        const StorageSpec& s = inst.storages[n];
        const double rate =
            (s.eta_c * agg.p_c[n][k] - s.eta_d * agg.p_d[n][k]) * inst.delta;
        full.p_c[n][t] = agg.p_c[n][k];
        full.p_d[n][t] = agg.p_d[n][k];
        full.e_s[n][t] = agg.e_s[n][k] + (t - b.start) * rate;
      }
    }
  }
  return full;
}

}  // namespace gep
