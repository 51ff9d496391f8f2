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

#include "seqtail/predictor.hpp"

#include <algorithm>
#include <cmath>

namespace seqtail {

namespace {
constexpr Index kBlock = 4096;
}

BatchPrediction mixture_predict_batch(const Matrix& scaled_points_big,
                                      const Matrix& scaled_train,
                                      const std::vector<DrawState>& states, bool with_variance) {
  if (states.empty()) throw std::invalid_argument("mixture_predict_batch: no posterior draws");
  if (scaled_points_big.cols() != scaled_train.cols()) {
    throw std::invalid_argument("mixture_predict_batch: dimension mismatch");
  }
  const Index big_n = scaled_points_big.rows();
  const Index n = scaled_train.rows();
  const Index d = scaled_train.cols();
  const Index m = static_cast<Index>(states.size());

  Vector sum_mean = Vector::Zero(big_n);
  Vector sum_sq = Vector::Zero(big_n);
  Vector sum_var = with_variance ? Vector::Zero(big_n) : Vector();

  std::vector<Matrix> log_dist(d, Matrix(kBlock, n));
  Matrix cross(kBlock, n);
  Matrix half(n, kBlock);

  for (Index start = 0; start < big_n; start += kBlock) {
    const Index len = std::min(kBlock, big_n - start);

    // log 0 = -inf encodes a coinciding coordinate; exp(p * -inf) = 0 is
    // exactly the wanted |0|^p term.
    for (Index j = 0; j < d; ++j) {
      log_dist[j].topRows(len).array() =
          ((-scaled_train.col(j).transpose()).replicate(len, 1).colwise() +
           scaled_points_big.col(j).segment(start, len))
              .array()
              .abs()
              .log();
    }

    auto cross_blk = cross.topRows(len);
    for (Index mi = 0; mi < m; ++mi) {
      const DrawState& st = states[mi];
      cross_blk.array() =
          (log_dist[0].topRows(len).array() * st.psi.power(0)).exp() * st.psi.theta(0);
      for (Index j = 1; j < d; ++j) {
        cross_blk.array() +=
            (log_dist[j].topRows(len).array() * st.psi.power(j)).exp() * st.psi.theta(j);
      }
      cross_blk.array() = (-cross_blk.array()).exp();

      Vector means = cross_blk * st.resid_solve;
      means.array() += st.mean;
      sum_mean.segment(start, len) += means;
      sum_sq.segment(start, len) += means.cwiseProduct(means);

      if (with_variance) {
        auto half_blk = half.leftCols(len);
        half_blk = cross_blk.transpose();
        st.chol.triangularView<Eigen::Lower>().solveInPlace(half_blk);
        Eigen::ArrayXd quad = half_blk.colwise().squaredNorm().transpose().array();
        Eigen::ArrayXd ones_cross = (half_blk.transpose() * st.ones_solve).array();
        Eigen::ArrayXd v = 1.0 - quad + (1.0 - ones_cross).square() / st.ones_quad;
        sum_var.segment(start, len) += (st.sigma2 * v.max(0.0)).matrix();
      }
    }
  }

  BatchPrediction out;
  const double dm = static_cast<double>(m);
  out.mean = sum_mean / dm;
  if (with_variance) {
    out.variance = sum_var / dm;
    if (m > 1) {
      Vector between =
          (sum_sq - sum_mean.cwiseProduct(sum_mean) / dm) / static_cast<double>(m - 1);
      out.variance += between.cwiseMax(0.0);
    }
  }
  return out;
}

Surrogate Surrogate::fit(const TrainingSet& train, const InputScaler& scaler,
                         const CorrelationPrior& prior, const McmcConfig& cfg,
                         std::uint64_t seed) {
  validate_training_set(train, scaler);
  Surrogate s;
  s.scaler_ = scaler;
  s.scaled_points_ = scaler.to_unit_rows(train.points);
  s.outputs_ = train.outputs;
  s.sample_ = sample_posterior(s.scaled_points_, s.outputs_, prior, cfg, seed);
  s.states_.reserve(s.sample_.draws.size());
  for (const auto& psi : s.sample_.draws) {
    s.states_.push_back(make_draw_state(s.scaled_points_, s.outputs_, psi));
  }
  return s;
}

MixturePrediction Surrogate::predict(const Vector& x_raw) const {
  return mixture_predict_states(scaler_.to_unit(x_raw), scaled_points_, states_);
}

BatchPrediction Surrogate::predict_batch(const Matrix& points_raw, bool with_variance) const {
  return mixture_predict_batch(scaler_.to_unit_rows(points_raw), scaled_points_, states_,
                               with_variance);
}

BatchPrediction Surrogate::predict_batch_scaled(const Matrix& points_scaled,
                                                bool with_variance) const {
  return mixture_predict_batch(points_scaled, scaled_points_, states_, with_variance);
}

double Surrogate::max_jitter() const {
  double j = 0.0;
  for (const auto& st : states_) j = std::max(j, st.jitter);
  return j;
}

}  // namespace seqtail
