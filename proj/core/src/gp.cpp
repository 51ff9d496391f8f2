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

#include "seqtail/gp.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <limits>
#include <string>

namespace seqtail {

void CorrelationParams::validate() const {
  if (theta.size() != power.size() || theta.size() == 0) {
    throw std::invalid_argument("correlation params: theta and power must have equal, nonzero length");
  }
  for (Index j = 0; j < theta.size(); ++j) {
    if (!(theta(j) >= 0.0) || !std::isfinite(theta(j))) {
      throw std::invalid_argument("correlation params: theta[" + std::to_string(j) +
                                  "] must be finite and nonnegative");
    }
    if (!(power(j) >= 1.0 && power(j) <= 2.0)) {
      throw std::invalid_argument("correlation params: power[" + std::to_string(j) +
                                  "] must lie in [1, 2]");
    }
  }
}

double correlation(const Vector& a, const Vector& b, const CorrelationParams& psi) {
  if (a.size() != b.size() || a.size() != psi.dim()) {
    throw std::invalid_argument("correlation: dimension mismatch");
  }
  if (!a.allFinite() || !b.allFinite()) {
    throw std::invalid_argument("correlation: non-finite input");
  }
  double s = 0.0;
  for (Index j = 0; j < a.size(); ++j) {
    s += psi.theta(j) * std::pow(std::abs(a(j) - b(j)), psi.power(j));
  }
  return std::exp(-s);
}

std::pair<std::pair<Index, Index>, double> closest_pair(const Matrix& points) {
  const Index n = points.rows();
  double best = std::numeric_limits<double>::infinity();
  std::pair<Index, Index> pair{0, 0};
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      double d = (points.row(i) - points.row(j)).norm();
      if (d < best) {
        best = d;
        pair = {i, j};
      }
    }
  }
  return {pair, best};
}

void validate_training_set(const TrainingSet& train, const InputScaler& scaler, double tol) {
  if (train.size() < 2) throw std::invalid_argument("training set: need at least 2 points");
  if (train.outputs.size() != train.size()) {
    throw std::invalid_argument("training set: points/outputs size mismatch");
  }
  if (!train.points.allFinite() || !train.outputs.allFinite()) {
    throw std::invalid_argument("training set: non-finite entries");
  }
  Matrix scaled = scaler.to_unit_rows(train.points);
  auto [pair, dist] = closest_pair(scaled);
  if (dist <= tol) {
    throw std::invalid_argument("training set: rows " + std::to_string(pair.first) + " and " +
                                std::to_string(pair.second) +
                                " coincide within tolerance (scaled distance " +
                                std::to_string(dist) + ")");
  }
}

namespace {

Matrix correlation_matrix(const Matrix& scaled_points, const CorrelationParams& psi) {
  const Index n = scaled_points.rows();
  Matrix r(n, n);
  for (Index i = 0; i < n; ++i) {
    r(i, i) = 1.0;
    for (Index j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (Index k = 0; k < psi.dim(); ++k) {
        s += psi.theta(k) *
             std::pow(std::abs(scaled_points(i, k) - scaled_points(j, k)), psi.power(k));
      }
      r(i, j) = r(j, i) = std::exp(-s);
    }
  }
  return r;
}

}  // namespace

KernelFactorization factorize(const Matrix& scaled_points, const CorrelationParams& psi) {
  psi.validate();
  if (scaled_points.cols() != psi.dim()) {
    throw std::invalid_argument("factorize: dimension mismatch between points and params");
  }
  KernelFactorization fac;
  fac.corr = correlation_matrix(scaled_points, psi);

  // Jitter ladder: 0, then 1e-12 up to 1e-6 in factors of 100.
  static constexpr double kLadder[] = {0.0, 1e-12, 1e-10, 1e-8, 1e-6};
  for (double jitter : kLadder) {
    Matrix work = fac.corr;
    if (jitter > 0.0) work.diagonal().array() += jitter;
    Eigen::LLT<Matrix> llt(work);
    if (llt.info() == Eigen::Success) {
      fac.chol = llt.matrixL();
      fac.jitter = jitter;
      return fac;
    }
  }
  auto [pair, dist] = closest_pair(scaled_points);
  throw IllConditionedKernelError(
      "kernel factorization failed at maximum jitter; closest points are rows " +
          std::to_string(pair.first) + " and " + std::to_string(pair.second) +
          " at scaled distance " + std::to_string(dist),
      pair.first, pair.second, dist);
}

double gls_mean(const Vector& y, const KernelFactorization& fac) {
  const Index n = y.size();
  const Vector ones = Vector::Ones(n);
  Vector ri_y = fac.chol.triangularView<Eigen::Lower>().solve(y);
  Vector ri_1 = fac.chol.triangularView<Eigen::Lower>().solve(ones);
  return ri_1.dot(ri_y) / ri_1.squaredNorm();
}

double residual_variance(const Vector& y, const KernelFactorization& fac, double mean) {
  const Index n = y.size();
  Vector resid = y.array() - mean;
  Vector half = fac.chol.triangularView<Eigen::Lower>().solve(resid);
  double q = half.squaredNorm() / static_cast<double>(n - 1);
  return q < 0.0 ? 0.0 : q;
}

DrawState make_draw_state(const Matrix& scaled_points, const Vector& y,
                          const CorrelationParams& psi) {
  DrawState st;
  st.psi = psi;
  KernelFactorization fac = factorize(scaled_points, psi);
  st.jitter = fac.jitter;
  st.chol = std::move(fac.chol);
  st.mean = 0.0;

  const Index n = y.size();
  const Vector ones = Vector::Ones(n);
  st.ones_solve = st.chol.triangularView<Eigen::Lower>().solve(ones);
  st.ones_quad = st.ones_solve.squaredNorm();

  Vector half_y = st.chol.triangularView<Eigen::Lower>().solve(y);
  st.mean = st.ones_solve.dot(half_y) / st.ones_quad;

  Vector half_resid = half_y - st.mean * st.ones_solve;
  st.sigma2 = half_resid.squaredNorm() / static_cast<double>(n - 1);
  if (st.sigma2 < 0.0) st.sigma2 = 0.0;
  st.resid_solve = st.chol.triangularView<Eigen::Lower>().transpose().solve(half_resid);
  return st;
}

Prediction predict_with_state(const Vector& xstar_scaled, const Matrix& scaled_points,
                              const DrawState& state) {
  const Index n = scaled_points.rows();
  Vector r(n);
  for (Index i = 0; i < n; ++i) {
    double s = 0.0;
    for (Index k = 0; k < state.psi.dim(); ++k) {
      s += state.psi.theta(k) *
           std::pow(std::abs(xstar_scaled(k) - scaled_points(i, k)), state.psi.power(k));
    }
    r(i) = std::exp(-s);
  }
  Prediction pred;
  pred.dof = static_cast<int>(n - 1);
  pred.mean = state.mean + state.resid_solve.dot(r);

  Vector half = state.chol.triangularView<Eigen::Lower>().solve(r);
  double quad = half.squaredNorm();
  double ones_cross = state.ones_solve.dot(half);
  double u = 1.0 - ones_cross;
  double v = state.sigma2 * (1.0 - quad + u * u / state.ones_quad);
  pred.variance = v < 0.0 ? 0.0 : v;
  return pred;
}

Prediction conditional_predict(const Vector& xstar_scaled, const Matrix& scaled_points,
                               const Vector& y, const CorrelationParams& psi,
                               const KernelFactorization& fac) {
  DrawState st;
  st.psi = psi;
  st.jitter = fac.jitter;
  st.chol = fac.chol;
  const Index n = y.size();
  const Vector ones = Vector::Ones(n);
  st.ones_solve = st.chol.triangularView<Eigen::Lower>().solve(ones);
  st.ones_quad = st.ones_solve.squaredNorm();
  Vector half_y = st.chol.triangularView<Eigen::Lower>().solve(y);
  st.mean = st.ones_solve.dot(half_y) / st.ones_quad;
  Vector half_resid = half_y - st.mean * st.ones_solve;
  st.sigma2 = half_resid.squaredNorm() / static_cast<double>(n - 1);
  if (st.sigma2 < 0.0) st.sigma2 = 0.0;
  st.resid_solve = st.chol.triangularView<Eigen::Lower>().transpose().solve(half_resid);
  return predict_with_state(xstar_scaled, scaled_points, st);
}

}  // namespace seqtail
