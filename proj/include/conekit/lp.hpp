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

#include <optional>
#include <utility>
#include <vector>

#include "conekit/linalg.hpp"

namespace conekit {

/** Standard-form problem over {x : A x = b, x ≥ 0}, optionally minimizing c·x. */
struct LpProblem {
  QMat a;
  QVec b;
  std::optional<QVec> c;
};

enum class LpStatus { Feasible, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  QVec x;       // feasible (optimal when c is given) point
  QVec farkas;  // yᵀA ≤ 0 and yᵀb > 0 when infeasible
  QVec ray;     // A r = 0, r ≥ 0, c·r < 0 when unbounded
  Rational objective;
};

/** Exact two-phase simplex with Bland's rule. */
LpResult lp_solve(const LpProblem& p);

bool check_feasible(const QMat& a, const QVec& b, const QVec& x);
bool check_farkas(const QMat& a, const QVec& b, const QVec& y);

/**
 * Convenience layer over lp_solve for problems with free variables and
 * inequality rows. Infeasibility multipliers are expressed per row:
 * y_r ≥ 0 on `>=` rows, Σ y_r a_r is ≤ 0 on nonnegative variables and 0 on
 * free ones, and Σ y_r rhs_r > 0.
 */
class LpBuilder {
 public:
  enum class Sense { Eq, Ge };
  using Terms = std::vector<std::pair<std::size_t, Rational>>;

  std::size_t add_variable(bool free_var);
  std::size_t add_variables(std::size_t count, bool free_var);
  void add_row(Terms terms, Sense sense, const Rational& rhs);
  void set_objective(Terms terms);  // minimize

  std::size_t num_variables() const { return free_.size(); }
  std::size_t num_rows() const { return rows_.size(); }

  struct Solution {
    LpStatus status = LpStatus::Infeasible;
    QVec values;       // per variable
    QVec multipliers;  // per row, when infeasible
    Rational objective;
  };
  Solution solve() const;
  bool check_values(const QVec& values) const;
  bool check_multipliers(const QVec& y) const;

  /** Dense row data for certificates: coefficient rows, senses, rhs. */
  QMat row_matrix() const;
  const std::vector<Sense>& senses() const { return sense_; }
  const QVec& rhs() const { return rhs_; }
  const std::vector<bool>& free_flags() const { return free_; }

 private:
  std::vector<bool> free_;
  std::vector<Terms> rows_;
  std::vector<Sense> sense_;
  QVec rhs_;
  Terms objective_;
};

/** Check of builder-form infeasibility multipliers against explicit data. */
bool check_row_multipliers(const QMat& rows, const std::vector<LpBuilder::Sense>& senses,
                           const QVec& rhs, const std::vector<bool>& free_vars,
                           const QVec& y);

}  // namespace conekit
