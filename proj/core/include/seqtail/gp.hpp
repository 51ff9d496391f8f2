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

#include <utility>

#include "seqtail/types.hpp"

namespace seqtail {

// Deterministic Gaussian-process machinery conditional on fixed correlation
// parameters. All kernel-facing operations work in scaled coordinates: each
// input dimension is affinely mapped to [0, 1] over its design region so
// that the range parameters are dimension-free.

/// Power-exponential correlation parameters on scaled inputs:
/// corr(a, b) = exp(-sum_j theta_j |a_j - b_j|^power_j).
struct CorrelationParams {
  Vector theta;  ///< per-dimension inverse range, > 0
  Vector power;  ///< per-dimension exponent, in [1, 2]

  Index dim() const { return theta.size(); }
  void validate() const;
};

/// Evaluated design points and their outputs, in simulator units.
struct TrainingSet {
  Matrix points;   ///< n x d
  Vector outputs;  ///< n

  Index size() const { return points.rows(); }
  Index dim() const { return points.cols(); }
};

/// Per-dimension affine map from simulator units to the model's internal
/// [0, 1] coordinates.
struct InputScaler {
  Vector lower;
  Vector width;

  Index dim() const { return lower.size(); }
  Vector to_unit(const Vector& x) const {
    return (x - lower).cwiseQuotient(width);
  }
  Matrix to_unit_rows(const Matrix& x) const {
    return (x.rowwise() - lower.transpose()).array().rowwise() /
           width.transpose().array();
  }
  static InputScaler identity(Index d) {
    return InputScaler{Vector::Zero(d), Vector::Ones(d)};
  }
};

/// Correlation matrix of a training set together with its Cholesky factor.
/// `jitter` is the diagonal nugget that made the factorization succeed
/// (0 when none was needed).
struct KernelFactorization {
  Matrix corr;   ///< R, symmetric with unit diagonal (before jitter)
  Matrix chol;   ///< lower-triangular L with L L^T = R + jitter I
  double jitter = 0.0;
};

/// Predictive distribution at one untried point: a shifted and scaled
/// t with `dof` degrees of freedom.
struct Prediction {
  double mean = 0.0;
  double variance = 0.0;
  int dof = 1;
};

/// Power-exponential correlation between two scaled points. Equals 1 iff
/// the points coincide (or all theta vanish in the limit case).
double correlation(const Vector& a, const Vector& b, const CorrelationParams& psi);

/// Throws std::invalid_argument when n < 2, outputs are non-finite, or two
/// scaled rows coincide within `tol` (Euclidean distance).
void validate_training_set(const TrainingSet& train, const InputScaler& scaler,
                           double tol = 1e-12);

/// Builds R for scaled points and factorizes it, escalating the diagonal
/// jitter through 1e-12, 1e-10, ..., 1e-6 until the Cholesky succeeds.
/// Throws IllConditionedKernelError (naming the closest pair) when even the
/// largest jitter fails.
KernelFactorization factorize(const Matrix& scaled_points, const CorrelationParams& psi);

/// Generalized-least-squares estimate of the constant mean:
/// (1^T R^-1 y) / (1^T R^-1 1).
double gls_mean(const Vector& y, const KernelFactorization& fac);

/// Residual variance (y - 1 mu)^T R^-1 (y - 1 mu) / (n - 1), nonnegative.
double residual_variance(const Vector& y, const KernelFactorization& fac, double mean);

/// Conditional predictive distribution at a scaled point: the t(n-1) mean
/// and variance, the variance including the mean-estimation term
/// (1 - 1^T R^-1 r)^2 / (1^T R^-1 1). Variance is clamped at 0.
Prediction conditional_predict(const Vector& xstar_scaled, const Matrix& scaled_points,
                               const Vector& y, const CorrelationParams& psi,
                               const KernelFactorization& fac);

/// Solved quantities for one set of correlation parameters, reused across
/// many predictions.
struct DrawState {
  CorrelationParams psi;
  double mean = 0.0;         ///< GLS mean
  double sigma2 = 0.0;       ///< residual variance
  double jitter = 0.0;
  Matrix chol;               ///< L
  Vector resid_solve;        ///< R^-1 (y - 1 mean)
  Vector ones_solve;         ///< L^-1 1
  double ones_quad = 0.0;    ///< 1^T R^-1 1
};

DrawState make_draw_state(const Matrix& scaled_points, const Vector& y,
                          const CorrelationParams& psi);

Prediction predict_with_state(const Vector& xstar_scaled, const Matrix& scaled_points,
                              const DrawState& state);

/// Closest pair of rows by Euclidean distance; returns ((i, j), distance).
std::pair<std::pair<Index, Index>, double> closest_pair(const Matrix& points);

}  // namespace seqtail
