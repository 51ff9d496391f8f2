// Copyright 2026 The seqtail Authors
//
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
#include <string>
#include <vector>

#include "seqtail/gp.hpp"
#include "seqtail/input_models.hpp"
#include "seqtail/types.hpp"

namespace seqtail {

/// Per-dimension design box in simulator units. Exponential-transform
/// dimensions carry bounds that came from exponentiating a log-scale box;
/// Latin hypercube construction happens on the log scale there.
struct DesignRegion {
  Vector lower;
  Vector upper;
  std::vector<AxisTransform> transform;

  Index dim() const { return lower.size(); }
  void validate() const;

  static DesignRegion from_model(const InputModel& model);

  /// Affine raw-to-[0,1] map over the region, used for kernel scaling.
  InputScaler scaler() const;
};

/// n0 points drawn at random from the input distributions.
Matrix random_design(const InputModel& model, Index n0, std::uint64_t seed);

/// Random Latin hypercube: per column one point per equal bin, uniform
/// within bins, mapped onto the region (log scale for exponential dims).
Matrix uniform_lhd(const DesignRegion& region, Index n0, std::uint64_t seed);

/// Large i.i.d. sample used for estimation, generated once per experiment.
Matrix mc_set(const InputModel& model, Index n, std::uint64_t seed);

/// Stratified sample over all 2^d stratum combinations of two-stratum
/// mixture marginals, with equal per-stratum counts and natural-probability
/// product weights.
struct StratifiedSet {
  Matrix points;                 ///< N x d, N = 2^d * per_stratum
  std::vector<int> stratum_id;   ///< length N, in [0, 2^d)
  Vector weights;                ///< per stratum, sums to 1
  Index per_stratum = 0;

  Index n_strata() const { return weights.size(); }
  void validate() const;
};

StratifiedSet stratified_mc_set(const InputModel& model, Index per_stratum, std::uint64_t seed,
                                Index cap = 1000000);

void write_design_csv(const std::string& path, const Matrix& points,
                      const std::vector<std::string>& names);
Matrix read_design_csv(const std::string& path);
void write_stratified_csv(const std::string& path, const StratifiedSet& set,
                          const std::vector<std::string>& names);

}  // namespace seqtail
