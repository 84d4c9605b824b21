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

#include <doctest.h>

#include "conekit/lp.hpp"
#include "conekit/parallel.hpp"
#include "oracles.hpp"

using namespace conekit;

TEST_CASE("identity system is feasible at b") {
  LpProblem p{QMat::identity(2), QVec{1, 2}, std::nullopt};
  auto r = lp_solve(p);
  REQUIRE(r.status == LpStatus::Feasible);
  CHECK(r.x == QVec{1, 2});
  CHECK(check_feasible(p.a, p.b, r.x));
}

TEST_CASE("cone membership LP with a Farkas certificate") {
  // Columns are the generators (1,0) and (0,1); target (-1,0).
  LpProblem p{QMat::identity(2), QVec{-1, 0}, std::nullopt};
  auto r = lp_solve(p);
  REQUIRE(r.status == LpStatus::Infeasible);
  CHECK(check_farkas(p.a, p.b, r.farkas));
  CHECK(dot(r.farkas, p.b) > 0);
  CHECK(r.farkas[0] < 0);
}

TEST_CASE("random feasible 5x8 systems") {
  auto rng = rng_stream(23, 0);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<QVec> rows;
    for (int i = 0; i < 5; ++i) rows.push_back(oracle::rand_qv(rng, 8, -5, 5));
    QMat a = QMat::from_rows(rows);
    QVec x0 = oracle::rand_qv(rng, 8, 0, 4);
    QVec b = matvec(a, x0);
    auto r = lp_solve({a, b, std::nullopt});
    REQUIRE(r.status == LpStatus::Feasible);
    CHECK(matvec(a, r.x) == b);
    for (const auto& v : r.x) CHECK(v >= 0);
  }
}

TEST_CASE("optimization reaches the optimum") {
  // min -x0 - x1 subject to x0 + x1 + s = 4.
  QMat a = QMat::from_rows({QVec{1, 1, 1}});
  auto r = lp_solve({a, QVec{4}, QVec{-1, -1, 0}});
  REQUIRE(r.status == LpStatus::Feasible);
  CHECK(r.objective == -4);
}

TEST_CASE("unbounded objective returns a ray") {
  QMat a = QMat::from_rows({QVec{1, -1}});
  auto r = lp_solve({a, QVec{0}, QVec{-1, 0}});
  REQUIRE(r.status == LpStatus::Unbounded);
  CHECK(is_zero(matvec(a, r.ray)));
  CHECK(-r.ray[0] < 0);
}

TEST_CASE("builder with free variables and inequality rows") {
  LpBuilder b;
  auto x = b.add_variable(true);
  auto y = b.add_variable(false);
  b.add_row({{x, 1}, {y, 1}}, LpBuilder::Sense::Eq, 3);
  b.add_row({{x, 1}}, LpBuilder::Sense::Ge, -2);
  auto s = b.solve();
  REQUIRE(s.status == LpStatus::Feasible);
  CHECK(b.check_values(s.values));

  LpBuilder bad;
  auto u = bad.add_variable(false);
  bad.add_row({{u, 1}}, LpBuilder::Sense::Eq, -1);
  auto t = bad.solve();
  REQUIRE(t.status == LpStatus::Infeasible);
  CHECK(bad.check_multipliers(t.multipliers));
  CHECK(check_row_multipliers(bad.row_matrix(), bad.senses(), bad.rhs(), bad.free_flags(),
                              t.multipliers));
}
