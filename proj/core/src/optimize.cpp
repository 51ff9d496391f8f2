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

#include "seqtail/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace seqtail {

SimplexResult nelder_mead(const std::function<double(const Vector&)>& f, const Vector& x0,
                          double scale, int max_iter, double tol) {
  const Index n = x0.size();
  const double reflect = 1.0, expand = 2.0, contract = 0.5, shrink = 0.5;

  std::vector<Vector> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (Index i = 0; i < n; ++i) pts[i + 1](i) += scale;
  for (Index i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  std::vector<Index> order(n + 1);
  SimplexResult result;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) { return vals[a] < vals[b]; });
    const Index best = order[0], worst = order[n], second_worst = order[n - 1];

    if (std::abs(vals[worst] - vals[best]) < tol) {
      result.converged = true;
      break;
    }

    Vector centroid = Vector::Zero(n);
    for (Index i = 0; i <= n; ++i)
      if (i != worst) centroid += pts[i];
    centroid /= static_cast<double>(n);

    Vector xr = centroid + reflect * (centroid - pts[worst]);
    double fr = f(xr);
    if (fr < vals[best]) {
      Vector xe = centroid + expand * (xr - centroid);
      double fe = f(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
    } else if (fr < vals[second_worst]) {
      pts[worst] = xr;
      vals[worst] = fr;
    } else {
      const bool outside = fr < vals[worst];
      Vector xc = outside ? centroid + contract * (xr - centroid)
                          : centroid - contract * (centroid - pts[worst]);
      double fc = f(xc);
      if (fc < std::min(fr, vals[worst])) {
        pts[worst] = xc;
        vals[worst] = fc;
      } else {
        for (Index i = 0; i <= n; ++i) {
          if (i == best) continue;
          pts[i] = pts[best] + shrink * (pts[i] - pts[best]);
          vals[i] = f(pts[i]);
        }
      }
    }
  }

  Index best = 0;
  for (Index i = 1; i <= n; ++i)
    if (vals[i] < vals[best]) best = i;
  result.x = pts[best];
  result.value = vals[best];
  result.iterations = iter;
  return result;
}

}  // namespace seqtail
