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

#include "conekit/cpmaps.hpp"
#include "conekit/parallel.hpp"
#include "oracles.hpp"

using namespace conekit;

namespace {

oracle::RMat to_eigen(const QMat& m) {
  oracle::RMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).get_d();
  return r;
}

template <typename M>
oracle::CMat to_eigen_c(const M& m) {
  oracle::CMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<M, QCMat>)
        r(i, j) = oracle::Cx(m.re(i, j).get_d(), m.im(i, j).get_d());
      else
        r(i, j) = oracle::Cx(m.re(i, j), m.im(i, j));
    }
  return r;
}

QCVec rand_cvec(std::mt19937_64& rng, std::size_t n) {
  QCVec v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v.re[i] = oracle::rand_q(rng, -3, 3);
    v.im[i] = oracle::rand_q(rng, -3, 3);
  }
  return v;
}

QCMat rand_cmat(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  QCMat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      m.re(i, j) = oracle::rand_q(rng, -2, 2);
      m.im(i, j) = oracle::rand_q(rng, -2, 2);
    }
  return m;
}

LinMap rand_map(std::mt19937_64& rng, std::size_t d, std::size_t t) {
  std::vector<QVec> rows;
  for (std::size_t i = 0; i < t * t; ++i) rows.push_back(oracle::rand_qv(rng, d * d, -3, 3));
  return LinMap(d, t, QMat::from_rows(rows));
}

LinMap rand_cp_map(std::mt19937_64& rng, std::size_t d, std::size_t t, int terms) {
  LinMap sum(d, t, QMat(t * t, d * d));
  for (int k = 0; k < terms; ++k) sum = add_maps(sum, compression_map(rand_cmat(rng, d, t)));
  return sum;
}

QCVec max_ent_vec(std::size_t d) {
  QCVec v(d * d);
  for (std::size_t i = 0; i < d; ++i) v.re[i * d + i] = 1;
  return v;
}

}  // namespace

TEST_CASE("Choi matrix of the identity is the maximally entangled state") {
  auto c = choi(identity_map(2));
  auto want = outer(max_ent_vec(2));
  CHECK(c.re == want.re);
  CHECK(c.im == want.im);
  auto ev = oracle::eigenvalues(to_eigen_c(c));
  CHECK(ev(3) == doctest::Approx(2));
  CHECK(std::abs(ev(2)) < 1e-12);
}

TEST_CASE("Choi matrix of a compression has rank one") {
  auto rng = rng_stream(301, 0);
  QCMat m = rand_cmat(rng, 2, 3);
  auto c = to_eigen_c(choi(compression_map(m)));
  auto ev = oracle::eigenvalues(c);
  CHECK(ev(ev.size() - 2) == doctest::Approx(0).epsilon(1e-9));
  CHECK(ev.minCoeff() > -1e-9);
  CHECK(ev.maxCoeff() > 0.5);
}

TEST_CASE("Choi matrix of the transpose is the swap") {
  auto c = choi(transpose_map(2));
  auto ev = oracle::eigenvalues(to_eigen_c(c));
  CHECK(ev(0) == doctest::Approx(-1));
  CHECK(ev(1) == doctest::Approx(1));
  CHECK(ev(3) == doctest::Approx(1));
}

TEST_CASE("Choi matrices agree with the reference construction") {
  auto rng = rng_stream(303, 0);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t d = 2, t = 2 + trial % 2;
    auto psi = rand_map(rng, d, t);
    auto ref = oracle::choi_matrix(to_eigen(psi.matrix), d, t);
    auto got = to_eigen_c(choi(psi));
    CHECK((ref - got).norm() < 1e-9);
    CHECK(reshuffle(choi(psi), d, t).matrix == psi.matrix);
  }
}

TEST_CASE("cp_check examples") {
  auto id = cp_check(identity_map(2));
  CHECK(id.cp);
  REQUIRE(id.kraus.size() == 1);
  const auto& k = id.kraus[0];
  CHECK(std::abs(k.re(0, 1)) + std::abs(k.im(0, 1)) < 1e-9);
  CHECK(std::hypot(k.re(0, 0), k.im(0, 0)) == doctest::Approx(std::hypot(k.re(1, 1), k.im(1, 1))));

  auto tr = cp_check(transpose_map(2));
  CHECK_FALSE(tr.cp);
  CHECK(tr.lambda_min == doctest::Approx(-1));
  CHECK(quadratic_form(choi(transpose_map(2)), tr.witness) < 0);
  // Antisymmetric: z = c (e1⊗e2 - e2⊗e1).
  CHECK(tr.witness.re[0] == 0);
  CHECK(tr.witness.re[3] == 0);
  CHECK(tr.witness.re[1] == -tr.witness.re[2]);

  QCMat half = QCMat::identity(2);
  half.re(0, 0) = half.re(1, 1) = Rational(1, 2);
  auto dep = cp_check(trace_map(2, half));
  CHECK(dep.cp);
  CHECK(dep.kraus.size() == 4);
}

TEST_CASE("cp_check decisions match the reference spectrum") {
  auto rng = rng_stream(305, 0);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t t = 2 + trial % 2;
    auto psi = trial % 2 ? rand_cp_map(rng, 2, t, 2) : rand_map(rng, 2, t);
    double lmin = oracle::min_eig(oracle::choi_matrix(to_eigen(psi.matrix), 2, t));
    auto r = cp_check(psi);
    if (std::abs(lmin) < 1e-9) continue;
    CHECK(r.cp == (lmin > 0));
    if (r.cp) {
      CHECK(kraus_reconstruction_error(psi, r.kraus) < 1e-9);
    } else {
      CHECK(quadratic_form(choi(psi), r.witness) < 0);
    }
  }
}

TEST_CASE("Kraus decomposition examples") {
  auto rng = rng_stream(307, 0);
  QCMat m = rand_cmat(rng, 2, 2);
  auto kc = kraus(compression_map(m));
  REQUIRE(kc.size() == 1);
  // Proportional to M up to a phase: |<K, M>| = |K| |M|.
  double ip_re = 0, ip_im = 0, nk = 0, nm = 0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      double kr = kc[0].re(i, j), ki = kc[0].im(i, j);
      double mr = m.re(i, j).get_d(), mi = m.im(i, j).get_d();
      ip_re += kr * mr + ki * mi;
      ip_im += kr * mi - ki * mr;
      nk += kr * kr + ki * ki;
      nm += mr * mr + mi * mi;
    }
  CHECK(std::hypot(ip_re, ip_im) == doctest::Approx(std::sqrt(nk * nm)).epsilon(1e-9));
  CHECK(nk == doctest::Approx(nm).epsilon(1e-9));

  CHECK(kraus(identity_map(3)).size() == 1);
  QCMat half = QCMat::identity(2);
  half.re(0, 0) = half.re(1, 1) = Rational(1, 2);
  auto kd = kraus(trace_map(2, half));
  CHECK(kd.size() == 4);
  CHECK(kraus_reconstruction_error(trace_map(2, half), kd) < 1e-12);
  CHECK_THROWS_AS(kraus(transpose_map(2)), PreconditionError);
}

TEST_CASE("Kraus operators act like the map on random inputs") {
  auto rng = rng_stream(309, 0);
  for (int trial = 0; trial < 10; ++trial) {
    auto psi = rand_cp_map(rng, 2, 3, 3);
    auto ks = kraus(psi);
    QCMat a = rand_cmat(rng, 2, 2);
    DCMat want = to_double(psi.apply(a));
    DCMat got = kraus_apply(ks, to_double(a));
    CHECK(frobenius_norm(csubtract(want, got)) < 1e-9 * std::max(1.0, frobenius_norm(want)));
  }
}

TEST_CASE("k-positivity of the transpose") {
  auto t2 = transpose_map(2);
  auto k1 = k_positivity(t2, 1);
  CHECK(k1.outcome != Outcome::No);
  auto k2 = k_positivity(t2, 2);
  REQUIRE(k2.outcome == Outcome::No);
  CHECK(check_kpos_witness(t2, 2, k2.a, k2.b));
  CHECK(k2.value < 0);
}

TEST_CASE("the identity is k-positive for every k") {
  for (std::size_t k = 1; k <= 2; ++k) CHECK(k_positivity(identity_map(2), k).outcome != Outcome::No);
  CHECK(k_positivity(identity_map(2), 2).outcome == Outcome::Yes);
}

TEST_CASE("k-positivity witnesses map a psd input outside the psd cone") {
  auto t2 = transpose_map(2);
  auto r = k_positivity(t2, 2);
  REQUIRE(r.outcome == Outcome::No);
  // Rebuild the input and output with the reference lifted map.
  std::size_t k = 2, d = 2, t = 2;
  oracle::CMat in = oracle::CMat::Zero(d * k, d * k);
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t q = 0; q < k; ++q)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          in(i * k + p, j * k + q) = std::conj(oracle::Cx(r.b[p].re[i].get_d(), r.b[p].im[i].get_d())) *
                                     oracle::Cx(r.b[q].re[j].get_d(), r.b[q].im[j].get_d());
  CHECK(oracle::min_eig(in) > -1e-9);
  auto out = oracle::apply_lifted(to_eigen(t2.matrix), d, t, k, in);
  CHECK(oracle::min_eig(out) < -1e-9);
}

TEST_CASE("entanglement breaking examples") {
  auto rng = rng_stream(311, 0);
  QCMat rho = outer(rand_cvec(rng, 2));
  auto tr = eb_check(trace_map(2, rho));
  CHECK(tr.outcome == Outcome::Yes);
  CHECK(check_eb_factorization(trace_map(2, rho), tr.factorization));

  auto id = eb_check(identity_map(2));
  CHECK(id.outcome == Outcome::No);

  // Measure-prepare: A ↦ Σ_i <e_i|A|e_i> σ_i.
  std::vector<QCMat> sig{outer(rand_cvec(rng, 2)), cadd(outer(rand_cvec(rng, 2)), outer(rand_cvec(rng, 2)))};
  auto mp = map_from_function(2, 2, [&](const QCMat& a) {
    return cadd(cscale(sig[0], a.re(0, 0)), cscale(sig[1], a.re(1, 1)));
  });
  auto r = eb_check(mp);
  CHECK(r.outcome == Outcome::Yes);
  if (r.outcome == Outcome::Yes && !r.factorization.measure.empty())
    CHECK(check_eb_factorization(mp, r.factorization));
}

TEST_CASE("maps between systems") {
  auto g = min_system(Stem{StemKind::Operator, 0}, Cone::psd(2), {1, 2});
  auto e = max_system(Stem{StemKind::Operator, 0}, Cone::psd(2), {1, 2});
  auto t2 = transpose_map(2);
  auto yes = cp_between_systems(t2, g, e);
  CHECK(yes.outcome == Outcome::Yes);
  CHECK(check_cp_between(t2, g, e, yes));

  auto p = psd_system(2, {1, 2});
  auto q = psd_system(2, {1, 2});
  auto no = cp_between_systems(t2, p, q);
  CHECK(no.outcome == Outcome::No);
  CHECK(no.level == 2);
  CHECK(check_cp_between(t2, p, q, no));

  auto id = cp_between_systems(identity_map(2), p, q);
  CHECK(id.outcome == Outcome::Yes);
  CHECK(check_cp_between(identity_map(2), p, q, id));
}

TEST_CASE("entanglement breaking implies completely positive implies k-positive") {
  auto rng = rng_stream(313, 0);
  for (int trial = 0; trial < 12; ++trial) {
    auto psi = trial % 3 == 0 ? rand_map(rng, 2, 2) : rand_cp_map(rng, 2, 2, 1 + trial % 3);
    auto eb = eb_check(psi);
    auto cp = cp_check(psi);
    if (eb.outcome == Outcome::Yes) CHECK(cp.cp);
    if (cp.cp) {
      CHECK(k_positivity(psi, 1).outcome != Outcome::No);
      CHECK(k_positivity(psi, 2).outcome != Outcome::No);
    }
  }
}

TEST_CASE("factorization through a small matrix algebra") {
  auto rng = rng_stream(315, 0);
  QCMat rho = outer(rand_cvec(rng, 2));
  auto f = cp_factorization(trace_map(2, rho), 1);
  CHECK(f.outcome == Outcome::Yes);
  if (f.outcome == Outcome::Yes) CHECK(compose(f.second, f.first).matrix == trace_map(2, rho).matrix);
  CHECK(cp_factorization(transpose_map(2), 2).outcome == Outcome::No);
  auto id = cp_factorization(identity_map(2), 2);
  CHECK(id.outcome == Outcome::Yes);
}

TEST_CASE("shape errors") {
  CHECK_THROWS_AS(LinMap(2, 2, QMat(3, 4)), DimensionError);
  CHECK_THROWS_AS(compose(identity_map(2), identity_map(3)), DimensionError);
}
