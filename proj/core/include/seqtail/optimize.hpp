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

#include <functional>

#include "seqtail/types.hpp"

namespace seqtail {

struct SimplexResult {
  Vector x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Nelder-Mead simplex minimization. `scale` sets the initial simplex edge
/// length per coordinate. Convergence when the simplex value spread falls
/// below `tol` (absolute) or `max_iter` is reached.
SimplexResult nelder_mead(const std::function<double(const Vector&)>& f, const Vector& x0,
                          double scale = 0.5, int max_iter = 400, double tol = 1e-10);

}  // namespace seqtail
