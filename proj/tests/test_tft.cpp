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

#include <functional>

#include "conekit/parallel.hpp"
#include "conekit/tft.hpp"
#include "oracles.hpp"

using namespace conekit;

namespace {

std::size_t factorial(std::size_t k) { return k <= 1 ? 1 : k * factorial(k - 1); }

/** Level-1 element of a 2×2 matrix, row-major: V-index first. */
QVec level1(const std::vector<std::vector<int>>& m) {
  QVec x;
  for (const auto& row : m)
    for (int v : row) x.push_back(v);
  return x;
}

/**
 * Inclusion of a system on level k into the intrinsic system there, decided at
 * level k alone: G(k) ⊆ A(2k) forces G(l) ⊆ A(k+l) for every l.
 */
bool inside_intrinsic_at_dual_level(const std::function<ConePtr(std::size_t)>& g, std::size_t k) {
  return cone_contains(a_cone({2, 2 * k}), g(k)).outcome == Outcome::Yes;
}

}  // namespace

TEST_CASE("level zero is the ray") {
  auto b = b_cone({2, 0});
  CHECK(b->ambient() == 1);
  CHECK(member(b, {1}).outcome == Outcome::Yes);
  CHECK(member(b, {-1}).outcome == Outcome::No);
}

TEST_CASE("level one: B is the ray through the identity, A the trace halfspace") {
  auto b = b_cone({2, 1});
  auto gens = generators_of(b);
  REQUIRE(gens.size() == 1);
  CHECK(gens[0] == QVec{1, 0, 0, 1});
  auto a = a_cone({2, 1});
  auto hs = halfspaces_of(a);
  REQUIRE(hs.size() == 1);
  CHECK(hs[0] == QVec{1, 0, 0, 1});
  CHECK(member(a, level1({{3, 7}, {-2, -1}})).outcome == Outcome::Yes);
  CHECK(member(a, level1({{1, 0}, {0, -2}})).outcome == Outcome::No);
}

TEST_CASE("B(k) has k! extreme rays") {
  for (std::size_t k = 1; k <= 4; ++k) {
    auto b = b_cone({2, k});
    CHECK(extreme_rays(b)->vectors().size() == factorial(k));
  }
}

TEST_CASE("pairing vectors evaluate as contractions") {
  auto rng = rng_stream(501, 0);
  for (std::size_t k = 1; k <= 3; ++k)
    for (const auto& sigma : permutations(k)) {
      QVec x = oracle::rand_qv(rng, TftLevel{2, k}.ambient(), -3, 3);
      CHECK(dot(pairing_vector(2, sigma), x) == oracle::contract_pairing(2, sigma, x));
    }
}

TEST_CASE("permutations are listed in lexicographic order") {
  auto p = permutations(3);
  REQUIRE(p.size() == 6);
  CHECK(p.front() == std::vector<std::size_t>{0, 1, 2});
  CHECK(p.back() == std::vector<std::size_t>{2, 1, 0});
  CHECK(std::is_sorted(p.begin(), p.end()));
}

TEST_CASE("A(k) is the dual of B(k) and contains it") {
  for (std::size_t k = 1; k <= 3; ++k) {
    auto a = a_cone({2, k});
    auto b = b_cone({2, k});
    CHECK(cones_equal(dual_explicit(b), a) == Outcome::Yes);
    CHECK(cone_contains(a, b).outcome == Outcome::Yes);
  }
}

TEST_CASE("duality reports pass for small levels") {
  for (std::size_t k = 1; k <= 3; ++k) {
    auto r = verify_tft_duality({2, k});
    CHECK(r.all_pass());
    CHECK(r.generators == factorial(k));
    CHECK(r.extreme == factorial(k));
    CHECK(r.b_in_a);
    CHECK(r.dual_a_is_b);
    CHECK(r.dual_b_is_a);
    if (k >= 2) CHECK(r.lineality > 0);
    CHECK_FALSE(r.text().empty());
  }
}

TEST_CASE("merged levels follow the reference index convention") {
  auto rng = rng_stream(503, 0);
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t k = 1 + trial % 2, l = 1 + (trial / 2) % 2;
    QVec x = oracle::rand_qv(rng, TftLevel{2, k}.ambient(), -3, 3);
    QVec y = oracle::rand_qv(rng, TftLevel{2, l}.ambient(), -3, 3);
    CHECK(merge_levels(2, k, l, x, y) == oracle::merge(2, k, l, x, y));
  }
}

TEST_CASE("products of B elements stay in B") {
  for (std::size_t k = 1; k <= 2; ++k)
    for (std::size_t l = 1; l <= 2; ++l) {
      auto big = b_cone({2, k + l});
      for (const auto& x : generators_of(b_cone({2, k})))
        for (const auto& y : generators_of(b_cone({2, l}))) {
          auto r = member(big, merge_levels(2, k, l, x, y));
          CHECK(r.outcome == Outcome::Yes);
        }
    }
}

TEST_CASE("the product of A elements can leave A") {
  // S = diag(2,-1), T = diag(-1,2): traces 1 and 1, tr(ST) = -4.
  QVec s = level1({{2, 0}, {0, -1}});
  QVec t = level1({{-1, 0}, {0, 2}});
  CHECK(member(a_cone({2, 1}), s).outcome == Outcome::Yes);
  CHECK(member(a_cone({2, 1}), t).outcome == Outcome::Yes);
  QVec x = merge_levels(2, 1, 1, s, t);
  CHECK(oracle::contract_pairing(2, {1, 0}, x) == -4);
  CHECK(oracle::contract_pairing(2, {0, 1}, x) == 1);
  CHECK(member(a_cone({2, 2}), x).outcome == Outcome::No);

  // Negative control: S = T = diag(1,-1) has trace zero and tr(ST) = 2.
  QVec z = level1({{1, 0}, {0, -1}});
  QVec zz = merge_levels(2, 1, 1, z, z);
  CHECK(oracle::contract_pairing(2, {1, 0}, zz) == 2);
  CHECK(member(a_cone({2, 2}), zz).outcome == Outcome::Yes);
}

TEST_CASE("random search finds a certified witness") {
  auto w = assumption_failure_witness(2, 1, 1);
  REQUIRE(w.found);
  CHECK(check_assumption_witness(w));
  CHECK(w.value < 0);
  CHECK(oracle::contract_pairing(2, w.sigma, w.x) == w.value);
  CHECK(w.x == oracle::merge(2, 1, 1, w.s, w.t));
  auto forged = w;
  forged.value = -w.value;
  CHECK_FALSE(check_assumption_witness(forged));
}

TEST_CASE("level caps are enforced") {
  TftCaps caps;
  caps.max_k = 2;
  CHECK_THROWS(b_cone({2, 3}, caps));
}

TEST_CASE("inclusion into the intrinsic system is decided at the dual level") {
  // The cointrinsic system on level 1 has B(1+l) at level l.
  auto cointrinsic = [](std::size_t l) { return b_cone({2, 1 + l}); };
  REQUIRE(inside_intrinsic_at_dual_level(cointrinsic, 1));
  for (std::size_t l = 0; l <= 2; ++l) CHECK(cone_contains(a_cone({2, 1 + l}), cointrinsic(l)).outcome == Outcome::Yes);

  // Negated B levels fail at the dual level and at level zero alike.
  auto negated = [](std::size_t l) {
    std::vector<QVec> gens;
    for (auto v : generators_of(b_cone({2, 1 + l}))) {
      for (auto& x : v) x = -x;
      gens.push_back(v);
    }
    return Cone::poly_v(b_cone({2, 1 + l})->ambient(), gens);
  };
  CHECK_FALSE(inside_intrinsic_at_dual_level(negated, 1));
  CHECK(cone_contains(a_cone({2, 1}), negated(0)).outcome == Outcome::No);
}
