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
#include <vector>

#include "seqtail/gp.hpp"
#include "seqtail/posterior.hpp"
#include "seqtail/types.hpp"

namespace seqtail {

// Batch prediction over large point sets (the MC and candidate sets).
// Points are processed in blocks: per block the per-dimension log-distances
// to the training points are computed once and every posterior draw then
// costs one vectorized exp pass per dimension.

struct BatchPrediction {
  Vector mean;      ///< mixture mean per point
  Vector variance;  ///< mixture variance per point; empty unless requested
};

BatchPrediction mixture_predict_batch(const Matrix& scaled_points_big,
                                      const Matrix& scaled_train,
                                      const std::vector<DrawState>& states, bool with_variance);

/// One fitted surrogate: training snapshot, posterior sample, and solved
/// per-draw states, behind the input scaling.
class Surrogate {
 public:
  static Surrogate fit(const TrainingSet& train, const InputScaler& scaler,
                       const CorrelationPrior& prior, const McmcConfig& cfg, std::uint64_t seed);

  MixturePrediction predict(const Vector& x_raw) const;
  BatchPrediction predict_batch(const Matrix& points_raw, bool with_variance) const;
  BatchPrediction predict_batch_scaled(const Matrix& points_scaled, bool with_variance) const;

  const PosteriorSample& sample() const { return sample_; }
  const std::vector<DrawState>& states() const { return states_; }
  const InputScaler& scaler() const { return scaler_; }
  const Matrix& scaled_points() const { return scaled_points_; }
  const Vector& outputs() const { return outputs_; }
  double max_jitter() const;

 private:
  InputScaler scaler_;
  Matrix scaled_points_;
  Vector outputs_;
  PosteriorSample sample_;
  std::vector<DrawState> states_;
};

}  // namespace seqtail
