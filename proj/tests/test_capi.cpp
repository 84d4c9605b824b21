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

#include <cstring>
#include <string>

#include "conekit.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  ck_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version, commands and schema") {
  CHECK(std::string(ck_version()) == "0.3.0");
  CHECK(ck_command_count() == 20);
  bool found = false;
  for (size_t i = 0; i < ck_command_count(); ++i) found = found || std::string(ck_command_name(i)) == "cone member";
  CHECK(found);
  CHECK(ck_command_name(ck_command_count()) == nullptr);
  char* schema = nullptr;
  REQUIRE(ck_schema_text(&schema) == CK_OK);
  CHECK(take(schema).find("cone member") != std::string::npos);
}

TEST_CASE("default options") {
  ck_options o;
  ck_options_default(&o);
  CHECK(o.exact == 1);
  CHECK(o.tol == doctest::Approx(1e-9));
  CHECK(o.restarts == 32);
  CHECK(o.dd_cap == 12);
}

TEST_CASE("run a command and verify its report") {
  ck_options o;
  ck_options_default(&o);
  ck_report* r = nullptr;
  REQUIRE(ck_run("cone member", R"({"cone":{"kind":"orthant","ambient":2},"x":["1","2"]})", &o, &r) == CK_OK);
  CHECK(ck_report_verdict(r) == CK_YES);
  CHECK(ck_report_exit_code(r) == 0);
  char* text = nullptr;
  REQUIRE(ck_report_to_json(r, -1, &text) == CK_OK);
  std::string json = take(text);
  int ok = 0;
  char* reason = nullptr;
  REQUIRE(ck_verify_report_json(json.c_str(), &ok, &reason) == CK_OK);
  CHECK(ok == 1);
  take(reason);

  std::string tampered = json;
  auto pos = tampered.find("\"verdict\":\"yes\"");
  REQUIRE(pos != std::string::npos);
  tampered.replace(pos, std::strlen("\"verdict\":\"yes\""), "\"verdict\":\"no\"");
  REQUIRE(ck_verify_report_json(tampered.c_str(), &ok, &reason) == CK_OK);
  CHECK(ok == 0);
  take(reason);
  ck_report_free(r);
}

TEST_CASE("errors map to status codes") {
  ck_report* r = nullptr;
  CHECK(ck_run("cone member", "{not json", nullptr, &r) == CK_ERR_PARSE);
  CHECK(r == nullptr);
  CHECK(std::string(ck_last_error()).size() > 0);
  CHECK(ck_run("cone member", R"({"cone":{"kind":"orthant","ambient":2},"x":["1"]})", nullptr, &r) ==
        CK_ERR_DIMENSION);
  CHECK(ck_run(nullptr, "{}", nullptr, &r) == CK_ERR_ARGUMENT);
  CHECK(ck_run("cone member", R"({"cone":{"kind":"orthant","ambient":2},"x":[0.5,1]})", nullptr, &r) ==
        CK_ERR_PARSE);
  ck_cone* c = nullptr;
  CHECK(ck_cone_from_json(R"({"kind":"poly_v"})", &c) == CK_ERR_PARSE);
  CHECK(c == nullptr);
}

TEST_CASE("cone handles") {
  ck_cone* c = nullptr;
  REQUIRE(ck_cone_from_json(R"({"kind":"poly_v","ambient":2,"generators":[["1","0"],["0","1"]]})", &c) == CK_OK);
  size_t n = 0;
  CHECK(ck_cone_ambient(c, &n) == CK_OK);
  CHECK(n == 2);
  ck_verdict v;
  char* cert = nullptr;
  REQUIRE(ck_cone_member(c, R"(["1","2"])", nullptr, &v, &cert) == CK_OK);
  CHECK(v == CK_YES);
  CHECK(take(cert).find("combination") != std::string::npos);
  REQUIRE(ck_cone_member(c, R"(["-1","0"])", nullptr, &v, &cert) == CK_OK);
  CHECK(v == CK_NO);
  CHECK(take(cert).find("separator") != std::string::npos);

  ck_cone* d = nullptr;
  REQUIRE(ck_cone_dual(c, &d) == CK_OK);
  char* text = nullptr;
  REQUIRE(ck_cone_to_json(d, &text) == CK_OK);
  CHECK(take(text).find("poly_h") != std::string::npos);

  ck_cone* t = nullptr;
  REQUIRE(ck_cone_min_tensor(c, c, nullptr, &t) == CK_OK);
  CHECK(ck_cone_ambient(t, &n) == CK_OK);
  CHECK(n == 4);
  ck_cone* mx = nullptr;
  REQUIRE(ck_cone_max_tensor(c, c, nullptr, &mx) == CK_OK);
  REQUIRE(ck_cone_member(mx, R"(["1","0","0","1"])", nullptr, &v, nullptr) == CK_OK);
  CHECK(v == CK_YES);
  ck_cone_free(mx);
  ck_cone_free(t);
  ck_cone_free(d);
  ck_cone_free(c);
}

TEST_CASE("system handles") {
  ck_system* s = nullptr;
  REQUIRE(ck_system_from_json(
              R"({"stem":"simplex","base_dim":2,"mode":"min","base_cone":{"kind":"orthant","ambient":2},"levels":[1,2]})",
              &s) == CK_OK);
  ck_system* d = nullptr;
  REQUIRE(ck_system_dual(s, &d) == CK_OK);
  char* text = nullptr;
  REQUIRE(ck_system_to_json(d, &text) == CK_OK);
  CHECK(take(text).find("\"max\"") != std::string::npos);
  ck_system_free(d);
  ck_system_free(s);
}

TEST_CASE("map handles") {
  // Transpose on Her_2 in Hermitian coordinates: fixes the symmetric part, negates the imaginary one.
  const char* tr = R"({"dom_d":2,"cod_d":2,"matrix":[["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","-1"]]})";
  ck_map* m = nullptr;
  REQUIRE(ck_map_from_json(tr, &m) == CK_OK);
  ck_verdict v;
  char* cert = nullptr;
  REQUIRE(ck_map_cp(m, nullptr, &v, &cert) == CK_OK);
  CHECK(v == CK_NO);
  CHECK(take(cert).find("witness") != std::string::npos);
  char* choi = nullptr;
  REQUIRE(ck_map_choi_json(m, &choi) == CK_OK);
  CHECK(!take(choi).empty());
  char* back = nullptr;
  REQUIRE(ck_map_to_json(m, &back) == CK_OK);
  CHECK(take(back).find("dom_d") != std::string::npos);
  ck_map_free(m);

  ck_map* id = nullptr;
  REQUIRE(ck_map_from_json(R"({"dom_d":2,"cod_d":2,"matrix":[["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]]})", &id) == CK_OK);
  REQUIRE(ck_map_cp(id, nullptr, &v, nullptr) == CK_OK);
  CHECK(v == CK_YES);
  ck_map_free(id);
}

TEST_CASE("null arguments are rejected") {
  CHECK(ck_cone_ambient(nullptr, nullptr) == CK_ERR_ARGUMENT);
  CHECK(ck_report_exit_code(nullptr) == 3);
  ck_cone_free(nullptr);
  ck_report_free(nullptr);
  ck_string_free(nullptr);
}
