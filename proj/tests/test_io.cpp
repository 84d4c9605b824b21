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

#include <string>

#include "conekit/parallel.hpp"
#include "conekit/report.hpp"
#include "oracles.hpp"

using namespace conekit;

namespace {

ConePtr random_cone(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 7 : 4);
  std::size_t n = 2 + rng() % 2;
  auto vecs = [&](std::size_t count) {
    std::vector<QVec> v;
    for (std::size_t i = 0; i < count; ++i) {
      QVec x = oracle::rand_qv(rng, n, -4, 4);
      x[0] = Rational(oracle::rand_q(rng, 1, 5)) / oracle::rand_q(rng, 1, 3);
      v.push_back(x);
    }
    return v;
  };
  switch (pick(rng)) {
    case 0:
      return Cone::poly_v(n, vecs(3));
    case 1:
      return Cone::poly_h(n, vecs(2));
    case 2:
      return Cone::simplex({{1, 0}, {1, 3}});
    case 3:
      return Cone::lorentz(n);
    case 4:
      return Cone::psd(2, rng() % 2);
    case 5:
      return Cone::min_node(random_cone(rng, depth - 1), random_cone(rng, depth - 1));
    case 6:
      return Cone::max_node(random_cone(rng, depth - 1), random_cone(rng, depth - 1));
    default: {
      auto inner = random_cone(rng, depth - 1);
      std::vector<QVec> rows;
      for (std::size_t i = 0; i < inner->ambient(); ++i) rows.push_back(oracle::rand_qv(rng, 2, -2, 2));
      return Cone::preimage(QMat::from_rows(rows), inner);
    }
  }
}

QCMat rand_cmat(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  QCMat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      m.re(i, j) = Rational(oracle::rand_q(rng, -5, 5)) / oracle::rand_q(rng, 1, 4);
      m.im(i, j) = oracle::rand_q(rng, -5, 5);
    }
  return m;
}

Json redigest(Json j) {
  j.erase("report_digest");
  j["report_digest"] = json_digest(j);
  return j;
}

}  // namespace

TEST_CASE("rationals serialize canonically and reject floats") {
  CHECK(to_json(Rational(6, 4)) == Json("3/2"));
  CHECK(to_json(Rational(-4, 2)) == Json("-2"));
  CHECK(rational_from_json(Json("3/2"), "q") == Rational(3, 2));
  CHECK(rational_from_json(Json(7), "q") == 7);
  try {
    qvec_from_json(Json::parse("[\"1\", 1.5]"), "x");
    FAIL("float accepted");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("x[1]") != std::string::npos);
  }
  CHECK_THROWS_AS(rational_from_json(Json("1/0"), "q"), ParseError);
  CHECK_THROWS_AS(rational_from_json(Json("abc"), "q"), ParseError);
}

TEST_CASE("cones round trip") {
  auto rng = rng_stream(601, 0);
  for (int trial = 0; trial < 60; ++trial) {
    auto c = random_cone(rng, 2);
    Json j = cone_to_json(c);
    Json k = cone_to_json(cone_from_json(Json::parse(j.dump())));
    CHECK(j == k);
  }
}

TEST_CASE("cone parse errors carry the path") {
  try {
    cone_from_json(Json::parse(R"({"kind":"poly_v","ambient":2,"generators":[["1","2","3"]]})"));
    FAIL("bad cone accepted");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("cone") != std::string::npos);
  }
  CHECK_THROWS_AS(cone_from_json(Json::parse(R"({"kind":"nonsense"})")), ParseError);
}

TEST_CASE("membership certificates round trip") {
  auto rng = rng_stream(603, 0);
  for (int trial = 0; trial < 40; ++trial) {
    auto c = random_cone(rng, trial % 2);
    QVec x = oracle::rand_qv(rng, c->ambient(), -3, 3);
    MemberResult r;
    try {
      r = member(c, x);
    } catch (const Error&) {
      continue;
    }
    Json j = member_cert_to_json(r.cert);
    auto back = member_cert_from_json(Json::parse(j.dump()));
    CHECK(member_cert_to_json(back) == j);
    if (r.outcome != Outcome::Unknown) CHECK(check_member_cert(c, x, r.outcome, back));
  }
}

TEST_CASE("maps, Kraus lists and complex matrices round trip") {
  auto rng = rng_stream(605, 0);
  for (int trial = 0; trial < 20; ++trial) {
    auto m = compression_map(rand_cmat(rng, 2, 2));
    CHECK(map_from_json(map_to_json(m)).matrix == m.matrix);
    QCMat c = rand_cmat(rng, 2, 3);
    auto back = qcmat_from_json(to_json(c), "m");
    CHECK(back.re == c.re);
    CHECK(back.im == c.im);
    auto ks = kraus(m);
    Json kj = kraus_to_json(ks);
    CHECK(kraus_to_json(kraus_from_json(Json::parse(kj.dump()))) == kj);
  }
}

TEST_CASE("systems round trip") {
  auto s = min_system(Stem{StemKind::Simplex, 4}, Cone::orthant(2), {1, 2});
  Json j = system_to_json(s);
  CHECK(system_to_json(system_from_json(Json::parse(j.dump()))) == j);
  auto t = max_system(Stem{StemKind::Tft, 4}, Cone::orthant(1), {1, 2});
  Json tj = system_to_json(t);
  CHECK(system_to_json(system_from_json(tj)) == tj);
  std::vector<LevelElement> gens{{1, QVec{1, 1}}};
  auto g = generated_system(Stem{StemKind::Simplex, 4}, 2, gens, {1, 2});
  Json gj = system_to_json(g);
  CHECK(system_to_json(system_from_json(gj)) == gj);
}

TEST_CASE("extension, generated and witness certificates round trip") {
  ExtProblem p;
  p.c = Cone::orthant(3);
  p.d = Cone::orthant(2);
  p.u = {{1, 1, 1}, {1, 0, 0}};
  p.psi = {{1, 1}, {-1, 0}};
  auto r = riesz_extend_vector(p);
  Json ej = ext_cert_to_json(r.cert);
  auto back = ext_cert_from_json(Json::parse(ej.dump()));
  CHECK(ext_cert_to_json(back) == ej);
  CHECK(check_ext_cert(p, back));

  std::vector<LevelElement> gens{{1, QVec{1, 1}}};
  auto v = generated_membership(Stem{StemKind::Simplex, 4}, 2, gens, 2, {1, 2, 1, 2});
  Json vj = generated_to_json(v);
  CHECK(generated_to_json(generated_from_json(vj)) == vj);

  auto w = assumption_failure_witness(2, 1, 1);
  Json wj = assumption_to_json(w);
  auto wb = assumption_from_json(Json::parse(wj.dump()));
  CHECK(assumption_to_json(wb) == wj);
  CHECK(check_assumption_witness(wb));
}

TEST_CASE("reports verify and reject tampering") {
  Json in = Json::parse(R"({"cone":{"kind":"orthant","ambient":2},"x":["1","2"]})");
  auto rep = run_command("cone member", in, {});
  CHECK(rep.verdict == Outcome::Yes);
  Json j = Json::parse(rep.to_json().dump());
  CHECK(verify_report(j).ok);

  // A corrupted coefficient with a fresh digest fails the certificate replay.
  Json bad = j;
  bad["certificate"]["cert"]["coefficients"][0] = "2";
  bad = redigest(bad);
  auto v = verify_report(bad);
  CHECK_FALSE(v.ok);
  CHECK(v.digest_ok);
  CHECK_FALSE(v.certificate_ok);

  // Without a fresh digest the digest check fails first.
  Json raw = j;
  raw["verdict"] = "no";
  CHECK_FALSE(verify_report(raw).ok);
  CHECK_FALSE(verify_report(raw).digest_ok);
}

TEST_CASE("float Kraus reports replay within tolerance") {
  Json in;
  in["map"] = map_to_json(trace_map(2, QCMat::identity(2)));
  auto rep = run_command("map kraus", in, {});
  CHECK(rep.verdict == Outcome::Yes);
  CHECK(verify_report(Json::parse(rep.to_json().dump())).ok);
}

TEST_CASE("every command produces a verifiable report on a small input") {
  std::vector<std::pair<std::string, std::string>> cases = {
      {"cone dual", R"({"cone":{"kind":"poly_v","ambient":2,"generators":[["1","0"],["1","1"]]}})"},
      {"cone extreme", R"({"cone":{"kind":"poly_v","ambient":2,"generators":[["1","0"],["0","1"],["1","1"]]}})"},
      {"cone contains", R"({"outer":{"kind":"poly_h","ambient":2,"halfspaces":[["1","1"]]},"inner":{"kind":"orthant","ambient":2}})"},
      {"cone tensor", R"({"left":{"kind":"orthant","ambient":2},"right":{"kind":"orthant","ambient":2},"kind":"min","x":["1","0","0","1"]})"},
      {"tft verify", R"({"m":2,"k":2})"},
      {"tft build", R"({"m":2,"k":2})"},
      {"tft witness", R"({"m":2,"k":1,"l":1})"},
      {"extend riesz", R"({"cone":{"kind":"orthant","ambient":2},"u":[["1","1"]],"psi":["2"]})"},
  };
  for (const auto& [cmd, text] : cases) {
    CAPTURE(cmd);
    auto rep = run_command(cmd, Json::parse(text), {});
    auto j = Json::parse(rep.to_json().dump());
    CHECK(verify_report(j).ok);
    CHECK(j["report_digest"] == redigest(j)["report_digest"]);
  }
}

TEST_CASE("unknown commands and malformed inputs are errors") {
  CHECK_THROWS_AS(run_command("cone frobnicate", Json::object(), {}), Error);
  CHECK_THROWS_AS(run_command("cone member", Json::parse(R"({"x":["1"]})"), {}), ParseError);
}
