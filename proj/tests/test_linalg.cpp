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

#include "conekit/hermitian.hpp"
#include "conekit/linalg.hpp"
#include "conekit/lp.hpp"
#include "conekit/parallel.hpp"
#include "oracles.hpp"

using namespace conekit;

namespace {

QMat qm(std::vector<std::vector<int>> rows) {
  std::vector<QVec> r;
  for (auto& row : rows) {
    QVec v;
    for (int x : row) v.push_back(x);
    r.push_back(v);
  }
  return QMat::from_rows(r);
}

oracle::RMat to_eigen(const DMat& m) {
  oracle::RMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

}  // namespace

TEST_CASE("kron of identities") { CHECK(kron(QMat::identity(2), QMat::identity(2)) == QMat::identity(4)); }

TEST_CASE("kron with a scalar block") {
  CHECK(kron(qm({{2}}), qm({{3, 0}, {0, 3}})) == qm({{6, 0}, {0, 6}}));
}

TEST_CASE("kron of flip and identity moves e1 x e1 to e2 x e1") {
  QMat k = kron(qm({{0, 1}, {1, 0}}), QMat::identity(2));
  QVec e11 = kron(QVec{1, 0}, QVec{1, 0});
  CHECK(matvec(k, e11) == kron(QVec{0, 1}, QVec{1, 0}));
}

TEST_CASE("kron is associative and bilinear on samples") {
  auto rng = rng_stream(7, 0);
  for (int trial = 0; trial < 20; ++trial) {
    QMat a = QMat::from_rows({oracle::rand_qv(rng, 2, -3, 3), oracle::rand_qv(rng, 2, -3, 3)});
    QMat b = QMat::from_rows({oracle::rand_qv(rng, 3, -3, 3)});
    QMat c = QMat::from_rows({oracle::rand_qv(rng, 2, -3, 3), oracle::rand_qv(rng, 2, -3, 3)});
    CHECK(kron(kron(a, b), c) == kron(a, kron(b, c)));
    CHECK(kron(add(a, c), b) == add(kron(a, b), kron(c, b)));
    CHECK(kron(scale(a, Rational(3, 2)), b) == scale(kron(a, b), Rational(3, 2)));
  }
}

TEST_CASE("real embedding of E11") {
  QMat e = herm_real_embed(QVec{1, 0, 0, 0}, 2);
  QMat want(4, 4);
  want(0, 0) = 1;
  want(2, 2) = 1;
  CHECK(e == want);
}

TEST_CASE("real embedding of i(E12 - E21) has eigenvalues plus and minus one") {
  QMat e = herm_real_embed(QVec{0, 0, 0, 1}, 2);
  CHECK(is_symmetric(e));
  auto ev = oracle::eigenvalues(to_eigen(to_double(e)));
  CHECK(ev(0) == doctest::Approx(-1));
  CHECK(ev(1) == doctest::Approx(-1));
  CHECK(ev(2) == doctest::Approx(1));
  CHECK(ev(3) == doctest::Approx(1));
}

TEST_CASE("real embedding of the maximally entangled state is psd of rank two") {
  QCVec v(4);
  v.re[0] = 1;
  v.re[3] = 1;
  QCMat m = outer(v);
  QVec coords = HermSpace(4).vectorize(m);
  QMat e = herm_real_embed(coords, 4);
  CHECK(exact_psd_test(e));
  CHECK(rank(e) == 2);
  auto ev = oracle::eigenvalues(to_eigen(to_double(e)));
  CHECK(ev.minCoeff() > -1e-12);
}

TEST_CASE("exact psd test examples") {
  CHECK(exact_psd_test(qm({{2, 1}, {1, 1}})));
  CHECK_FALSE(exact_psd_test(qm({{1, 2}, {2, 1}})));
  CHECK_FALSE(exact_psd_test(qm({{0, 1}, {1, 0}})));
  auto c = exact_psd_check(qm({{1, 2}, {2, 1}}));
  REQUIRE_FALSE(c.psd);
  CHECK(dot(c.witness, matvec(qm({{1, 2}, {2, 1}}), c.witness)) < 0);
}

TEST_CASE("exact psd test rejects non-symmetric input") {
  CHECK_THROWS_AS(exact_psd_test(qm({{1, 2}, {0, 1}})), DimensionError);
}

TEST_CASE("sym_eig examples") {
  DMat d(2, 2);
  d(0, 0) = 3;
  d(1, 1) = 1;
  auto e = sym_eig(d);
  CHECK(e.values[0] == doctest::Approx(3));
  CHECK(e.values[1] == doctest::Approx(1));
  CHECK(std::abs(e.vectors(0, 0)) == doctest::Approx(1));

  DMat f(2, 2);
  f(0, 1) = f(1, 0) = 1;
  auto g = sym_eig(f);
  CHECK(g.values[0] == doctest::Approx(1));
  CHECK(g.values[1] == doctest::Approx(-1));
  CHECK(std::abs(g.vectors(0, 0)) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(g.vectors(0, 0) * g.vectors(1, 0) > 0);
  CHECK(g.vectors(0, 1) * g.vectors(1, 1) < 0);
}

TEST_CASE("sym_eig of the swap has spectrum (1,1,1,-1)") {
  DMat s(4, 4);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) s(y * 2 + x, x * 2 + y) = 1;
  auto e = sym_eig(s);
  CHECK(e.values[0] == doctest::Approx(1));
  CHECK(e.values[2] == doctest::Approx(1));
  CHECK(e.values[3] == doctest::Approx(-1));
}

TEST_CASE("sym_eig reconstructs random matrices") {
  auto rng = rng_stream(11, 0);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + trial % 6;
    DMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = g(rng);
    auto e = sym_eig(m);
    DMat lam(n, n);
    for (std::size_t i = 0; i < n; ++i) lam(i, i) = e.values[i];
    DMat back = multiply(multiply(e.vectors, lam), transpose(e.vectors));
    CHECK(frobenius_norm(subtract(back, m)) <= 1e-9 * frobenius_norm(m));
    auto ref = oracle::eigenvalues(to_eigen(m));
    for (std::size_t i = 0; i < n; ++i) CHECK(e.values[n - 1 - i] == doctest::Approx(ref(i)).epsilon(1e-9));
  }
}

TEST_CASE("exact psd test agrees with float eigenvalues on random 5x5") {
  auto rng = rng_stream(13, 0);
  int agreed = 0, compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    // Mix of Gram matrices (psd) and perturbed ones.
    std::vector<QVec> cols;
    for (int c = 0; c < 3 + trial % 3; ++c) cols.push_back(oracle::rand_qv(rng, 5, -3, 3));
    QMat g(5, 5);
    for (const auto& v : cols)
      for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) g(i, j) += v[i] * v[j];
    if (trial % 2) {
      Rational shift = oracle::rand_q(rng, 1, 4);
      for (std::size_t i = 0; i < 5; ++i) g(i, i) -= shift;
    }
    double lmin = oracle::eigenvalues(to_eigen(to_double(g))).minCoeff();
    if (std::abs(lmin) <= 1e-6) continue;
    ++compared;
    if (exact_psd_test(g) == (lmin > 0)) ++agreed;
  }
  CHECK(compared > 100);
  CHECK(agreed == compared);
}

TEST_CASE("Hermitian coordinates round trip and Gram weights") {
  HermSpace h(3);
  auto rng = rng_stream(17, 0);
  for (int trial = 0; trial < 10; ++trial) {
    QVec x = oracle::rand_qv(rng, 9, -5, 5);
    CHECK(h.vectorize(h.devectorize(x)) == x);
  }
  for (std::size_t k = 0; k < 9; ++k) {
    QCMat b = h.basis(k);
    CHECK(trace_product_re(b, b) == h.gram(k));
  }
}

TEST_CASE("real embedding agrees with exact and float psd checks on random Hermitian") {
  auto rng = rng_stream(19, 0);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t d = 2 + trial % 3;
    QVec x = oracle::rand_qv(rng, d * d, -3, 3);
    for (std::size_t i = 0; i < d; ++i) x[i] += 4;
    QMat e = herm_real_embed(x, d);
    bool exact = exact_psd_test(e);
    CHECK(exact == exact_herm_psd_check(HermSpace(d).devectorize(x)).psd);
    std::vector<double> xd(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) xd[i] = x[i].get_d();
    double lmin = oracle::min_eig(oracle::herm_matrix(xd, d));
    if (std::abs(lmin) > 1e-6) CHECK(exact == (lmin >= -1e-9));
  }
}

TEST_CASE("rationals stay canonical") {
  Rational a(6, 4);
  a.canonicalize();
  Rational b = a * Rational(2, 3) + Rational(1, 2);
  CHECK(b.get_num() == 3);
  CHECK(b.get_den() == 2);
}

TEST_CASE("nullspace and solve") {
  QMat a = qm({{1, 2, 3}, {2, 4, 6}});
  auto ns = nullspace(a);
  CHECK(ns.size() == 2);
  for (const auto& v : ns) CHECK(is_zero(matvec(a, v)));
  QVec x;
  CHECK(solve(a, QVec{1, 2}, x));
  CHECK(matvec(a, x) == QVec{1, 2});
  CHECK_FALSE(solve(a, QVec{1, 3}, x));
}
