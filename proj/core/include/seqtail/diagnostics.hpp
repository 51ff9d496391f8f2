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

#include <string>
#include <vector>

#include "seqtail/types.hpp"

namespace seqtail {

// Convergence diagnostic: the distribution over the MC set of the negative
// absolute standardized discrepancy s(x) = -|m(x) - y_f| / sqrt(v(x)),
// summarized per iteration. Values grow more negative as the surrogate
// pins down the contour.

struct DiagnosticStep {
  double min = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double max = 0.0;
  Index n_excluded = 0;  ///< points with variance at/below the floor
};

struct DiagnosticTrace {
  std::vector<DiagnosticStep> steps;
};

/// Five-number summary of s(x) over one iteration's MC predictions.
/// Points with variance <= variance_floor (typically points coinciding
/// with training points) are excluded and counted.
DiagnosticStep diagnostic_step(const Vector& means, const Vector& variances, double y_f,
                               double variance_floor = 1e-14);

struct ConvergenceFlag {
  bool converged = false;
  std::string note;  ///< set when the trace is shorter than the window
};

/// Advisory flag: true when the median has stayed below `threshold` for the
/// last `window` iterations. Never used to halt a run.
ConvergenceFlag convergence_flag(const DiagnosticTrace& trace, double threshold = -10.0,
                                 int window = 2);

}  // namespace seqtail
