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

#include "conekit/cones.hpp"
#include "conekit/parallel.hpp"
#include "oracles.hpp"

using namespace conekit;

namespace {

std::vector<QVec> square_gens() { return {{1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {1, -1, -1}}; }

bool same_ray_set(std::vector<QVec> a, std::vector<QVec> b) {
  auto norm = [](std::vector<QVec>& v) {
    for (auto& x : v) x = oracle::normalize_ray(x);
    std::sort(v.begin(), v.end());
  };
  norm(a);
  norm(b);
  return a == b;
}

/** Random pointed polyhedral cone: generators with a positive first coordinate. */
ConePtr random_pointed(std::mt19937_64& rng, std::size_t n, std::size_t count) {
  std::vector<QVec> g;
  for (std::size_t i = 0; i < count; ++i) {
    QVec v = oracle::rand_qv(rng, n, -3, 3);
    v[0] = oracle::rand_q(rng, 1, 4);
    g.push_back(v);
  }
  return Cone::poly_v(n, g);
}

QCMat m_her2() {
  QCMat m(4, 4);
  m.re(0, 0) = m.re(0, 3) = m.re(3, 0) = m.re(3, 3) = 1;
  return m;
}

}  // namespace

TEST_CASE("dual of the orthant swaps generators to halfspaces") {
  auto c = Cone::poly_v(2, {{1, 0}, {0, 1}});
  auto d = dual(c);
  CHECK(d->kind() == ConeKind::PolyH);
  CHECK(d->vectors() == std::vector<QVec>{{1, 0}, {0, 1}});
  CHECK(cones_equal(d, Cone::orthant(2)) == Outcome::Yes);
}

TEST_CASE("the Lorentz cone is self-dual") {
  auto d = dual(Cone::lorentz(2));
  CHECK(d->kind() == ConeKind::Lorentz);
  CHECK(d->d() == 2);
}

TEST_CASE("dual of the square cone has four generators") {
  auto c = Cone::poly_v(3, square_gens());
  auto d = dual_explicit(c);
  CHECK(same_ray_set(generators_of(d), {{1, 1, 0}, {1, -1, 0}, {1, 0, 1}, {1, 0, -1}}));
  // Brute force over halfspace subsets of the dual description.
  CHECK(same_ray_set(oracle::brute_extreme_rays(square_gens(), 3), generators_of(d)));
  CHECK(cones_equal(dual_explicit(d), c) == Outcome::Yes);
}

TEST_CASE("double description examples") {
  auto v = double_description(2, {{1, 0}, {0, 1}});
  CHECK(same_ray_set(v.rays, {{1, 0}, {0, 1}}));
  CHECK(v.lineality.empty());

  auto e = double_description(2, {});
  CHECK(e.rays.empty());
  CHECK(e.lineality.size() == 2);
  CHECK(rank(e.lineality, 2) == 2);

  std::vector<QVec> facets = {{1, 1, 0}, {1, -1, 0}, {1, 0, 1}, {1, 0, -1}};
  auto sq = double_description(3, facets);
  CHECK(same_ray_set(sq.rays, square_gens()));
  CHECK(same_ray_set(sq.rays, oracle::brute_extreme_rays(facets, 3)));
}

TEST_CASE("double description matches brute force on random pointed cones") {
  auto rng = rng_stream(101, 0);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t n = 3 + trial % 2;
    std::vector<QVec> hs;
    for (std::size_t i = 0; i < n + 2; ++i) hs.push_back(oracle::rand_qv(rng, n, -3, 3));
    // Pointedness: add the coordinate halfspaces of an orthant.
    for (std::size_t i = 0; i < n; ++i) {
      QVec e(n, 0);
      e[i] = 1;
      hs.push_back(e);
    }
    auto v = double_description(n, hs);
    CHECK(v.lineality.empty());
    CHECK(same_ray_set(v.rays, oracle::brute_extreme_rays(hs, n)));
  }
}

TEST_CASE("membership examples with certificates") {
  auto r2 = Cone::poly_v(2, {{1, 0}, {0, 1}});
  auto yes = member(r2, {1, 2});
  CHECK(yes.outcome == Outcome::Yes);
  CHECK(yes.cert.type == MemberCert::Type::Combination);
  CHECK(check_member_cert(r2, {1, 2}, yes.outcome, yes.cert));

  auto no = member(r2, {-1, 0});
  CHECK(no.outcome == Outcome::No);
  CHECK(no.cert.type == MemberCert::Type::Separator);
  CHECK(no.cert.functional == QVec{1, 0});
  CHECK(dot(no.cert.functional, QVec{-1, 0}) == -1);
  CHECK(check_member_cert(r2, {-1, 0}, no.outcome, no.cert));

  QCMat h(2, 2);
  h.re(0, 0) = 2;
  h.re(0, 1) = h.re(1, 0) = 1;
  h.re(1, 1) = 1;
  auto x = HermSpace(2).vectorize(h);
  auto p = member(Cone::psd(2), x);
  CHECK(p.outcome == Outcome::Yes);
  CHECK(check_member_cert(Cone::psd(2), x, p.outcome, p.cert));
}

TEST_CASE("Lorentz membership") {
  auto l = Cone::lorentz(2);
  CHECK(member(l, {2, 1, 1}).outcome == Outcome::Yes);
  auto r = member(l, {1, 1, 1});
  CHECK(r.outcome == Outcome::No);
  CHECK(check_member_cert(l, {1, 1, 1}, r.outcome, r.cert));
}

TEST_CASE("tensor products of orthants collapse") {
  auto o = Cone::orthant(2);
  auto mn = min_tensor(o, o);
  CHECK(generators_of(mn).size() == 4);
  CHECK(cones_equal(mn, Cone::orthant(4)) == Outcome::Yes);
  CHECK(cones_equal(max_tensor(o, o), Cone::orthant(4)) == Outcome::Yes);
}

TEST_CASE("min tensor with a ray embeds the cone") {
  auto c = Cone::poly_v(3, square_gens());
  auto ray = Cone::poly_v(1, {{1}});
  CHECK(cones_equal(min_tensor(c, ray), c) == Outcome::Yes);
}

TEST_CASE("square tensor square: 16 extreme generators and strict inclusion") {
  auto c = Cone::poly_v(3, square_gens());
  auto mn = min_tensor(c, c);
  CHECK(extreme_rays(mn)->vectors().size() == 16);
  auto mx = max_tensor(c, c);
  auto in = cone_contains(mx, mn);
  CHECK(in.outcome == Outcome::Yes);
  auto out = cone_contains(mn, mx);
  REQUIRE(out.outcome == Outcome::No);
  auto r_min = member(mn, out.witness);
  CHECK(r_min.outcome == Outcome::No);
  CHECK(check_member_cert(mn, out.witness, r_min.outcome, r_min.cert));
  auto r_max = member(mx, out.witness);
  CHECK(r_max.outcome == Outcome::Yes);
  CHECK(check_member_cert(mx, out.witness, r_max.outcome, r_max.cert));
}

TEST_CASE("separability of small two-qubit states") {
  auto mn = Cone::min_node(Cone::psd(2), Cone::psd(2));
  auto id = matrix_to_product_coords(QCMat::identity(4), 2, 2);
  auto r = member(mn, id);
  CHECK(r.outcome == Outcome::Yes);
  CHECK(check_member_cert(mn, id, r.outcome, r.cert));

  auto m = matrix_to_product_coords(m_her2(), 2, 2);
  auto e = member(mn, m);
  CHECK(e.outcome == Outcome::No);
  CHECK(e.cert.partial_transpose);
  CHECK(check_member_cert(mn, m, e.outcome, e.cert));
  // The partial transpose of m is the swap: spectrum (1,1,1,-1).
  auto pt = to_double(partial_transpose(m_her2(), 2, 2));
  oracle::CMat ptm(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) ptm(i, j) = oracle::Cx(pt.re(i, j), pt.im(i, j));
  CHECK(oracle::min_eig(ptm) == doctest::Approx(-1));

  auto mx = Cone::max_node(Cone::psd(2), Cone::psd(2));
  auto b = member(mx, m);
  CHECK(b.outcome == Outcome::Yes);
  CHECK(check_member_cert(mx, m, b.outcome, b.cert));
}

TEST_CASE("separable states built from product terms are accepted") {
  auto rng = rng_stream(103, 0);
  auto mn = Cone::min_node(Cone::psd(2), Cone::psd(2));
  for (int trial = 0; trial < 10; ++trial) {
    QCMat sum(4, 4);
    for (int k = 0; k < 3; ++k) {
      QCVec a(2), b(2);
      for (std::size_t i = 0; i < 2; ++i) {
        a.re[i] = oracle::rand_q(rng, -3, 3);
        a.im[i] = oracle::rand_q(rng, -3, 3);
        b.re[i] = oracle::rand_q(rng, -3, 3);
        b.im[i] = oracle::rand_q(rng, -3, 3);
      }
      sum = cadd(sum, ckron(outer(a), outer(b)));
    }
    auto x = matrix_to_product_coords(sum, 2, 2);
    auto r = member(mn, x);
    CHECK(r.outcome == Outcome::Yes);
    CHECK(check_member_cert(mn, x, r.outcome, r.cert));
  }
}

TEST_CASE("extreme rays drop redundant generators") {
  auto c = Cone::poly_v(2, {{1, 0}, {0, 1}, {1, 1}});
  CHECK(same_ray_set(extreme_rays(c)->vectors(), {{1, 0}, {0, 1}}));
  auto s = Cone::simplex({{1, 0}, {1, 1}});
  CHECK(same_ray_set(extreme_rays(s)->vectors(), {{1, 0}, {1, 1}}));
}

TEST_CASE("containment examples") {
  auto half = Cone::poly_h(2, {{1, 1}});
  CHECK(cone_contains(half, Cone::orthant(2)).outcome == Outcome::Yes);
  auto r = cone_contains(Cone::orthant(2), half);
  REQUIRE(r.outcome == Outcome::No);
  CHECK(member(Cone::orthant(2), r.witness).outcome == Outcome::No);
  CHECK(member(half, r.witness).outcome == Outcome::Yes);
}

TEST_CASE("biduality on random cones") {
  auto rng = rng_stream(107, 0);
  for (int trial = 0; trial < 15; ++trial) {
    auto c = random_pointed(rng, 3, 5);
    auto cc = dual_explicit(dual_explicit(c));
    CHECK(cone_contains(cc, c).outcome == Outcome::Yes);
    CHECK(cone_contains(c, cc).outcome == Outcome::Yes);
  }
}

TEST_CASE("duality swaps min and max tensor products") {
  auto rng = rng_stream(109, 0);
  for (int trial = 0; trial < 6; ++trial) {
    auto c = random_pointed(rng, 2, 3);
    auto d = random_pointed(rng, 3, 4);
    auto lhs = dual_explicit(min_tensor(c, d));
    auto rhs = to_poly_v(max_tensor(dual_explicit(c), dual_explicit(d)));
    CHECK(cones_equal(lhs, rhs) == Outcome::Yes);
  }
}

TEST_CASE("min and max agree when one factor is a simplex cone") {
  auto rng = rng_stream(113, 0);
  for (int trial = 0; trial < 6; ++trial) {
    auto c = random_pointed(rng, 3, 5);
    auto s = Cone::simplex({{1, 0}, {1, 2}});
    CHECK(cones_equal(min_tensor(c, s), max_tensor(c, s)) == Outcome::Yes);
  }
}

TEST_CASE("membership certificates replay on random points") {
  auto rng = rng_stream(127, 0);
  for (int trial = 0; trial < 30; ++trial) {
    auto c = random_pointed(rng, 3, 4);
    QVec x = oracle::rand_qv(rng, 3, -4, 4);
    auto r = member(c, x);
    REQUIRE(r.outcome != Outcome::Unknown);
    CHECK(check_member_cert(c, x, r.outcome, r.cert));
    // Independent check against the halfspace description.
    bool inside = true;
    for (const auto& h : halfspaces_of(c)) inside = inside && dot(h, x) >= 0;
    CHECK(inside == (r.outcome == Outcome::Yes));
  }
}

TEST_CASE("forged certificates are rejected") {
  auto r2 = Cone::poly_v(2, {{1, 0}, {0, 1}});
  auto r = member(r2, {1, 2});
  auto bad = r.cert;
  bad.coefficients[0] += 1;
  CHECK_FALSE(check_member_cert(r2, {1, 2}, Outcome::Yes, bad));
  auto n = member(r2, {-1, 0});
  CHECK_FALSE(check_member_cert(r2, {1, 0}, Outcome::No, n.cert));
}

TEST_CASE("malformed cones throw") {
  CHECK_THROWS_AS(Cone::poly_v(2, {{1, 0, 0}}), DimensionError);
  CHECK_THROWS_AS(member(Cone::orthant(2), {1, 2, 3}), DimensionError);
}
