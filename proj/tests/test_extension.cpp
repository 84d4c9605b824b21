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

#include "conekit/extension.hpp"
#include "conekit/parallel.hpp"
#include "oracles.hpp"

using namespace conekit;

namespace {

ExtProblem scalar_problem(const ConePtr& c, const std::vector<QVec>& u, const QVec& psi) {
  ExtProblem p;
  p.c = c;
  p.d = Cone::orthant(1);
  p.u = u;
  for (const auto& v : psi) p.psi.push_back(QVec{v});
  return p;
}

QMat swap2() { return QMat::from_rows({QVec{0, 1}, QVec{1, 0}}); }

oracle::CMat to_eigen(const DCMat& m) {
  oracle::CMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = oracle::Cx(m.re(i, j), m.im(i, j));
  return r;
}

}  // namespace

TEST_CASE("scalar extension from the diagonal") {
  auto r = riesz_extend(Cone::orthant(2), {{1, 1}}, {2});
  REQUIRE(r.cert.kind == ExtKind::Extension);
  CHECK(dot(r.cert.phi.row(0), QVec{1, 1}) == 2);
  for (const auto& v : r.cert.phi.row(0)) CHECK(v >= 0);
  CHECK(r.hypotheses.meets_interior);
  CHECK(check_ext_cert(scalar_problem(Cone::orthant(2), {{1, 1}}, {2}), r.cert));
}

TEST_CASE("scalar extension obstructed on the boundary") {
  auto r = riesz_extend(Cone::orthant(2), {{1, 0}}, {-1});
  CHECK(r.cert.kind == ExtKind::Obstruction);
  CHECK_FALSE(r.hypotheses.meets_interior);
  CHECK(check_ext_cert(scalar_problem(Cone::orthant(2), {{1, 0}}, {-1}), r.cert));
}

TEST_CASE("random scalar problems through interior points always extend") {
  auto rng = rng_stream(401, 0);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 3 + trial % 2;
    std::vector<QVec> g;
    for (std::size_t i = 0; i < n + 2; ++i) {
      QVec v = oracle::rand_qv(rng, n, -3, 3);
      v[0] = oracle::rand_q(rng, 1, 3);
      g.push_back(v);
    }
    auto c = Cone::poly_v(n, g);
    // φ0 = (10n, small) is strictly positive on every generator.
    QVec phi0 = oracle::rand_qv(rng, n, -1, 1);
    phi0[0] = 10 * static_cast<long>(n);
    QVec interior(n, 0);
    for (const auto& v : g) interior = axpy(Rational(oracle::rand_q(rng, 1, 3)), v, interior);
    std::vector<QVec> u{interior, oracle::rand_qv(rng, n, -2, 2)};
    if (rank(u, n) < 2) u.pop_back();
    QVec psi;
    for (const auto& v : u) psi.push_back(dot(phi0, v));
    auto r = riesz_extend(c, u, psi);
    CHECK(r.cert.kind == ExtKind::Extension);
    CHECK(check_ext_cert(scalar_problem(c, u, psi), r.cert));
  }
}

TEST_CASE("vector extension into the orthant") {
  ExtProblem p;
  p.c = Cone::orthant(3);
  p.d = Cone::orthant(2);
  p.u = {{1, 1, 1}};
  p.psi = {{1, 1}};
  auto r = riesz_extend_vector(p);
  REQUIRE(r.cert.kind == ExtKind::Extension);
  CHECK(check_ext_cert(p, r.cert));
  CHECK(matvec(r.cert.phi, QVec{1, 1, 1}) == QVec{1, 1});
}

TEST_CASE("vector extension obstructed by a generator in U") {
  ExtProblem p;
  p.c = Cone::orthant(3);
  p.d = Cone::orthant(2);
  p.u = {{1, 1, 1}, {1, 0, 0}};
  p.psi = {{1, 1}, {-1, 0}};
  auto r = riesz_extend_vector(p);
  REQUIRE(r.cert.kind == ExtKind::Obstruction);
  CHECK(check_ext_cert(p, r.cert));
  CHECK(r.criterion.evaluated);
  CHECK_FALSE(r.criterion.holds);
  CHECK_FALSE(r.criterion.violation.empty());
  auto lp = extension_lp(p);
  CHECK(lp.check_multipliers(r.cert.multipliers));
}

TEST_CASE("vector extension preconditions") {
  ExtProblem p;
  p.c = Cone::orthant(3);
  p.d = Cone::poly_h(2, {{1, 0}});
  p.u = {{1, 1, 1}};
  p.psi = {{1, 1}};
  CHECK_THROWS_AS(riesz_extend_vector(p), PreconditionError);
  p.d = Cone::orthant(2);
  p.u = {{1, 0, 0}};
  CHECK_THROWS_AS(riesz_extend_vector(p), PreconditionError);
}

TEST_CASE("invariant extension under the coordinate swap") {
  ExtProblem p;
  p.c = Cone::orthant(2);
  p.d = Cone::orthant(1);
  p.u = {{1, 1}};
  p.psi = {{1}};
  p.rho = {QMat::identity(2), swap2()};
  p.sigma = {QMat::identity(1), QMat::identity(1)};
  auto r = invariant_extend(p);
  REQUIRE(r.cert.kind == ExtKind::Extension);
  CHECK(r.cert.phi.row(0) == QVec{Rational(1, 2), Rational(1, 2)});
  CHECK(multiply(r.cert.phi, swap2()) == r.cert.phi);
  CHECK(check_ext_cert(p, r.cert));
  REQUIRE(r.fix_basis.size() == 1);
  CHECK(r.fix_basis[0][0] == r.fix_basis[0][1]);
}

TEST_CASE("invariant extension obstructed by parity") {
  ExtProblem p;
  p.c = Cone::orthant(2);
  p.d = Cone::orthant(1);
  p.u = {{1, -1}};
  p.psi = {{1}};
  p.rho = {QMat::identity(2), swap2()};
  p.sigma = {QMat::identity(1), QMat::identity(1)};
  auto r = invariant_extend(p);
  REQUIRE(r.cert.kind == ExtKind::Obstruction);
  CHECK(check_ext_cert(p, r.cert));
  CHECK(extension_lp(p).check_multipliers(r.cert.multipliers));
}

TEST_CASE("the trivial group reduces to the plain problem") {
  ExtProblem p;
  p.c = Cone::orthant(3);
  p.d = Cone::orthant(2);
  p.u = {{1, 1, 1}};
  p.psi = {{1, 1}};
  auto plain = riesz_extend_vector(p);
  auto inv = invariant_extend(p);
  CHECK(plain.cert.kind == inv.cert.kind);
  p.psi = {{-1, 1}};
  CHECK(riesz_extend_vector(p).cert.kind == invariant_extend(p).cert.kind);
}

TEST_CASE("group validation") {
  std::vector<QMat> not_closed{QMat::identity(2), QMat::from_rows({QVec{0, 1}, QVec{1, 1}})};
  CHECK_THROWS_AS(validate_group(not_closed, Cone::orthant(2)), PreconditionError);
  std::vector<QMat> flip{QMat::identity(2), QMat::from_rows({QVec{-1, 0}, QVec{0, 1}})};
  CHECK_THROWS_AS(validate_group(flip, Cone::orthant(2)), PreconditionError);
  CHECK_NOTHROW(validate_group({QMat::identity(2), swap2()}, Cone::orthant(2)));
}

TEST_CASE("operator extension from the diagonal subalgebra") {
  ArvesonProblem p;
  p.d = p.t = 2;
  p.theta = QMat(4, 2);
  p.theta(0, 0) = 1;
  p.theta(1, 1) = 1;
  p.psi = p.theta;
  auto r = arveson_extend(p, 5000, 1e-9);
  REQUIRE(r.outcome == Outcome::Yes);
  CHECK(r.residual < 1e-9);
  CHECK(arveson_residual(p, r.kraus) < 1e-9);
  CHECK(oracle::min_eig(to_eigen(r.choi)) > -1e-9);
}

TEST_CASE("operator extension of the identity converges fast") {
  ArvesonProblem p;
  p.d = p.t = 2;
  p.theta = QMat::identity(4);
  p.psi = QMat::identity(4);
  auto r = arveson_extend(p, 100, 1e-12);
  REQUIRE(r.outcome == Outcome::Yes);
  CHECK(r.residual < 1e-12);
  CHECK(r.iterations <= 100);
}

TEST_CASE("operator extension of the transpose stays unknown") {
  ArvesonProblem p;
  p.d = p.t = 2;
  p.theta = QMat::identity(4);
  p.psi = transpose_map(2).matrix;
  auto r = arveson_extend(p, 300, 1e-9);
  CHECK(r.outcome == Outcome::Unknown);
  CHECK(r.residual > 1e-3);
}

TEST_CASE("extension shape errors") {
  CHECK_THROWS_AS(riesz_extend(Cone::orthant(2), {{1, 1}}, {1, 2}), DimensionError);
  CHECK_THROWS_AS(riesz_extend(Cone::lorentz(2), {{1, 0, 0}}, {1}), Unsupported);
  ArvesonProblem p;
  p.d = 2;
  p.t = 2;
  p.theta = QMat(3, 1);
  p.psi = QMat(4, 1);
  CHECK_THROWS_AS(arveson_extend(p), DimensionError);
}
