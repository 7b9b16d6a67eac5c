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

#include <span>
#include <vector>

#include "gep/instance.hpp"
#include "gep/model.hpp"
#include "gep/partition.hpp"

namespace gep {

// Clustering features a_t, one point of dimension d per time step.
class FeatureSeries {
 public:
  FeatureSeries(int dimension, std::vector<double> values);
  static FeatureSeries scalar(std::vector<double> values);

  int dimension() const { return dimension_; }
  int size() const { return static_cast<int>(values_.size()) / dimension_; }
  std::span<const double> point(int t) const {
    return {values_.data() + static_cast<std::size_t>(t) * dimension_,
            static_cast<std::size_t>(dimension_)};
  }

 private:
  int dimension_ = 1;
  std::vector<double> values_;
};

// Per-step marginal-cost estimates (EUR/MWh).
struct MarginalCostSeries {
  std::vector<double> lambda;

  int size() const { return static_cast<int>(lambda.size()); }
  FeatureSeries as_features() const { return FeatureSeries::scalar(lambda); }
};

struct AggregatedSeries {
  std::vector<std::vector<double>> capacity_factors;  // [g][k]
  std::vector<double> demand;                         // [k]
};

// Block means of the capacity factors and demand.
AggregatedSeries aggregate_series(const GepInstance& inst, const Partition& part);

// One pass over t: t joins the open block when its distance to the block's
// running centroid is at most zeta, otherwise it opens a new block.
Partition sliding_window_cluster(const FeatureSeries& features, double zeta);

// Expands an aggregated schedule to full resolution. Power and NSE values are
// replicated across each block; stored energy follows the block's net
// charging rate from the block's initial level.
DispatchSchedule lift_solution(const GepInstance& inst, const Partition& part,
                               const DispatchSchedule& aggregated);

}  // namespace gep
