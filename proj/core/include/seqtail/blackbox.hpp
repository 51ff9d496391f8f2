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
#include <string>

#include "seqtail/types.hpp"

namespace seqtail {

/// Deterministic simulator handle: either an in-process function or an
/// external command speaking the line protocol (one comma-separated input
/// line on stdin, one decimal output line on stdout, exit 0).
struct BlackBox {
  std::function<double(const Vector&)> fn;
  Index dim = 0;
  std::string description;
};

BlackBox make_function_blackbox(std::function<double(const Vector&)> fn, Index dim,
                                std::string description);

/// Wraps an external command. Each evaluation spawns `sh -c command`.
/// Non-zero exit, unparsable output, or exceeding `timeout_s` raises
/// EvaluationError.
BlackBox make_external_blackbox(const std::string& command, Index dim, double timeout_s = 300.0);

/// Evaluates the black box, checking inputs and output for finiteness.
/// Throws EvaluationError on any failure.
double evaluate(const BlackBox& box, const Vector& x);

}  // namespace seqtail
