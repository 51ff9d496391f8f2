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
#include <optional>
#include <string>
#include <utility>

#include "seqtail/blackbox.hpp"
#include "seqtail/estimation.hpp"
#include "seqtail/input_models.hpp"
#include "seqtail/sequential.hpp"
#include "seqtail/types.hpp"

namespace seqtail {

// Built-in benchmark problems and brute-force truth oracles.

/// Cross-section of the short column benchmark, in mm.
struct ShortColumnSpec {
  double width = 3.0;  ///< b
  double depth = 10.0; ///< h
};

/// Limit state of a short column under bending moment x(0), axial force
/// x(1), and yield stress x(2):
///   1 - 4 x_m / (b h^2 x_z) - x_p^2 / (b^2 h^2 x_z^2).
/// Negative values mean failure. Throws std::domain_error for x_z <= 0.
double short_column(const Vector& x, const ShortColumnSpec& spec = {});

/// The benchmark's input distribution: bending moment N(2000, 400), axial
/// force N(500, 100), yield stress lognormal with log-scale parameters
/// (5, 0.5).
InputModel short_column_model();

BlackBox short_column_blackbox(const ShortColumnSpec& spec = {});

/// Coordinates (x_m / x_z, (x_p / x_z)^2) in which the short-column failure
/// boundary is a straight line; emitted with traces for boundary plots.
std::pair<double, double> stress_ratio_coords(const Vector& x);

struct TruthEstimate {
  double value = 0.0;
  double std_error = 0.0;
  Index n = 0;
};

/// Direct Monte Carlo truth at N_big evaluations: tail probability with
/// binomial standard error, or quantile with an order-statistic (spacing)
/// standard error.
TruthEstimate brute_force_truth(const BlackBox& box, const InputModel& model,
                                const TailSpec& tail, EstimateMode mode, Index n_big,
                                std::uint64_t seed);

/// Problem registry for the CLI: "short_column" (built-in model) or
/// "external:<command>" (model supplied separately).
struct Problem {
  BlackBox box;
  std::optional<InputModel> model;
};

Problem make_problem(const std::string& name, Index dim = 0, double timeout_s = 300.0,
                     const ShortColumnSpec& spec = {});

}  // namespace seqtail
