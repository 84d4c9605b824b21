// Copyright 2026 The conekit Authors
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
#include <optional>
#include <vector>

#include "conekit/linalg.hpp"

namespace conekit {

/** Least-squares solution of min ‖A x − b‖ by Householder QR (A full column rank). */
DVec least_squares(const DMat& a, const DVec& b);

/** Lawson–Hanson nonnegative least squares over the columns of A. */
DVec nnls(const DMat& a, const DVec& b);

struct FitResult {
  bool converged = false;
  std::vector<DVec> atoms;
  DVec weights;
  double residual = 0;  // ‖target − Σ w a‖
  /** Best oracle gain ⟨r, atom⟩ seen at the last round. */
  double last_gain = 0;
  DVec last_residual;
};

/**
 * Fully corrective conic fitting: atoms are added by `oracle(residual)`
 * (which should return a unit atom approximately maximizing ⟨residual, atom⟩)
 * and the weights are refit by NNLS after every addition. Converged when
 * ‖residual‖ ≤ rel_tol·max(1, ‖target‖).
 */
FitResult conic_fit(const DVec& target, std::vector<DVec> atoms,
                    const std::function<std::optional<DVec>(const DVec&)>& oracle,
                    int max_rounds, double rel_tol);

}  // namespace conekit
