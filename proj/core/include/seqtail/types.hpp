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

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace seqtail {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Base class for seqtail-specific failures. Contract violations use
/// std::invalid_argument / std::domain_error directly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Kernel matrix could not be factorized even at the maximum jitter.
/// Carries the closest pair of training points, the usual culprit.
class IllConditionedKernelError : public Error {
 public:
  IllConditionedKernelError(const std::string& msg, Index i, Index j, double distance)
      : Error(msg), pair_first(i), pair_second(j), pair_distance(distance) {}
  Index pair_first;
  Index pair_second;
  double pair_distance;
};

/// Black-box evaluation failed: subprocess error, timeout, non-finite or
/// unparsable output.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// A likelihood optimizer failed to converge; carries the best point found.
class FitFailureError : public Error {
 public:
  FitFailureError(const std::string& msg, Vector best, double best_value)
      : Error(msg), best_params(std::move(best)), best_log_likelihood(best_value) {}
  Vector best_params;
  double best_log_likelihood;
};

/// No admissible candidate remained for acquisition.
class SelectionError : public Error {
 public:
  using Error::Error;
};

}  // namespace seqtail
