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

#include "conekit.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "conekit/report.hpp"

struct ck_cone {
  conekit::ConePtr cone;
};
struct ck_system {
  conekit::System system;
};
struct ck_map {
  conekit::LinMap map;
};
struct ck_report {
  conekit::RunReport report;
};

namespace {

thread_local std::string g_last_error;

ck_status set_error(ck_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

/** Runs f, translating exceptions into status codes. */
template <typename F>
ck_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return CK_OK;
  } catch (const conekit::Error& e) {
    return set_error(static_cast<ck_status>(e.code()), e.what());
  } catch (const nlohmann::json::parse_error& e) {
    return set_error(CK_ERR_PARSE, std::string("json: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    return set_error(CK_ERR_PARSE, std::string("json: ") + e.what());
  } catch (const std::bad_alloc&) {
    return set_error(CK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(CK_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(CK_ERR_INTERNAL, "unknown failure");
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

conekit::SolveOptions to_options(const ck_options* o) {
  conekit::SolveOptions s;
  if (!o) return s;
  s.exact = o->exact != 0;
  s.tol = o->tol;
  s.seed = o->seed;
  s.restarts = o->restarts;
  s.iterations = o->iterations;
  s.budget = o->budget;
  s.dd_cap = o->dd_cap;
  s.samples = o->samples;
  return s;
}

conekit::Json parse(const char* text, const char* what) {
  if (!text) throw conekit::ParseError(std::string(what) + ": null input");
  try {
    return conekit::Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw conekit::ParseError(std::string(what) + ": " + e.what());
  }
}

#define CK_REQUIRE(cond, msg) \
  if (!(cond)) return set_error(CK_ERR_ARGUMENT, msg)

}  // namespace

extern "C" {

void ck_options_default(ck_options* opt) {
  if (!opt) return;
  conekit::SolveOptions s;
  opt->exact = s.exact ? 1 : 0;
  opt->tol = s.tol;
  opt->seed = s.seed;
  opt->restarts = s.restarts;
  opt->iterations = s.iterations;
  opt->budget = s.budget;
  opt->dd_cap = s.dd_cap;
  opt->samples = s.samples;
}

const char* ck_version(void) { return conekit::kVersion; }

const char* ck_last_error(void) { return g_last_error.c_str(); }

void ck_string_free(char* s) { std::free(s); }

ck_status ck_schema_text(char** out) {
  CK_REQUIRE(out, "null output pointer");
  return guarded([&] { *out = dup(conekit::schema_text()); });
}

size_t ck_command_count(void) { return conekit::command_names().size(); }

const char* ck_command_name(size_t i) {
  const auto& n = conekit::command_names();
  return i < n.size() ? n[i].c_str() : nullptr;
}

ck_status ck_run(const char* command, const char* inputs_json, const ck_options* opt,
                 ck_report** out) {
  CK_REQUIRE(command && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto in = parse(inputs_json, "inputs");
    auto r = conekit::run_command(command, in, to_options(opt));
    *out = new ck_report{std::move(r)};
  });
}

ck_status ck_report_to_json(const ck_report* r, int indent, char** out) {
  CK_REQUIRE(r && out, "null argument");
  return guarded([&] { *out = dup(r->report.to_json().dump(indent < 0 ? -1 : indent)); });
}

ck_verdict ck_report_verdict(const ck_report* r) {
  if (!r) return CK_UNKNOWN;
  return static_cast<ck_verdict>(conekit::exit_code(r->report.verdict));
}

int ck_report_exit_code(const ck_report* r) {
  return r ? conekit::exit_code(r->report.verdict) : conekit::kExitError;
}

void ck_report_free(ck_report* r) { delete r; }

ck_status ck_verify_report_json(const char* report_json, int* ok, char** reason) {
  CK_REQUIRE(ok, "null argument");
  *ok = 0;
  if (reason) *reason = nullptr;
  return guarded([&] {
    auto v = conekit::verify_report(parse(report_json, "report"));
    *ok = v.ok ? 1 : 0;
    if (reason) *reason = dup(v.reason);
  });
}

// ---- cones ----

ck_status ck_cone_from_json(const char* json, ck_cone** out) {
  CK_REQUIRE(out, "null output pointer");
  *out = nullptr;
  return guarded([&] { *out = new ck_cone{conekit::cone_from_json(parse(json, "cone"))}; });
}

ck_status ck_cone_to_json(const ck_cone* c, char** out) {
  CK_REQUIRE(c && out, "null argument");
  return guarded([&] { *out = dup(conekit::cone_to_json(c->cone).dump()); });
}

ck_status ck_cone_ambient(const ck_cone* c, size_t* out) {
  CK_REQUIRE(c && out, "null argument");
  *out = c->cone->ambient();
  return CK_OK;
}

ck_status ck_cone_dual(const ck_cone* c, ck_cone** out) {
  CK_REQUIRE(c && out, "null argument");
  return guarded([&] { *out = new ck_cone{conekit::dual(c->cone)}; });
}

ck_status ck_cone_min_tensor(const ck_cone* a, const ck_cone* b, const ck_options* opt,
                             ck_cone** out) {
  CK_REQUIRE(a && b && out, "null argument");
  return guarded([&] {
    *out = new ck_cone{conekit::min_tensor(a->cone, b->cone, to_options(opt).dd_cap)};
  });
}

ck_status ck_cone_max_tensor(const ck_cone* a, const ck_cone* b, const ck_options* opt,
                             ck_cone** out) {
  CK_REQUIRE(a && b && out, "null argument");
  return guarded([&] {
    *out = new ck_cone{conekit::max_tensor(a->cone, b->cone, to_options(opt).dd_cap)};
  });
}

ck_status ck_cone_member(const ck_cone* c, const char* x_json, const ck_options* opt,
                         ck_verdict* verdict, char** cert_json) {
  CK_REQUIRE(c && verdict, "null argument");
  return guarded([&] {
    auto x = conekit::qvec_from_json(parse(x_json, "x"), "x");
    auto r = conekit::member(c->cone, x, to_options(opt));
    *verdict = static_cast<ck_verdict>(conekit::exit_code(r.outcome));
    if (cert_json) *cert_json = dup(conekit::member_cert_to_json(r.cert).dump());
  });
}

void ck_cone_free(ck_cone* c) { delete c; }

// ---- systems ----

ck_status ck_system_from_json(const char* json, ck_system** out) {
  CK_REQUIRE(out, "null output pointer");
  *out = nullptr;
  return guarded([&] { *out = new ck_system{conekit::system_from_json(parse(json, "system"))}; });
}

ck_status ck_system_to_json(const ck_system* s, char** out) {
  CK_REQUIRE(s && out, "null argument");
  return guarded([&] { *out = dup(conekit::system_to_json(s->system).dump()); });
}

ck_status ck_system_dual(const ck_system* s, ck_system** out) {
  CK_REQUIRE(s && out, "null argument");
  return guarded([&] { *out = new ck_system{conekit::dual_system(s->system)}; });
}

void ck_system_free(ck_system* s) { delete s; }

// ---- maps ----

ck_status ck_map_from_json(const char* json, ck_map** out) {
  CK_REQUIRE(out, "null output pointer");
  *out = nullptr;
  return guarded([&] { *out = new ck_map{conekit::map_from_json(parse(json, "map"))}; });
}

ck_status ck_map_to_json(const ck_map* m, char** out) {
  CK_REQUIRE(m && out, "null argument");
  return guarded([&] { *out = dup(conekit::map_to_json(m->map).dump()); });
}

ck_status ck_map_cp(const ck_map* m, const ck_options* opt, ck_verdict* verdict, char** cert_json) {
  CK_REQUIRE(m && verdict, "null argument");
  return guarded([&] {
    auto r = conekit::cp_check(m->map, to_options(opt));
    *verdict = r.cp ? CK_YES : CK_NO;
    if (cert_json) {
      conekit::Json j{{"lambda_min", r.lambda_min}};
      if (r.cp)
        j["kraus"] = conekit::kraus_to_json(r.kraus);
      else
        j["witness"] = conekit::to_json(r.witness);
      *cert_json = dup(j.dump());
    }
  });
}

ck_status ck_map_choi_json(const ck_map* m, char** out) {
  CK_REQUIRE(m && out, "null argument");
  return guarded([&] { *out = dup(conekit::to_json(conekit::choi(m->map)).dump()); });
}

void ck_map_free(ck_map* m) { delete m; }

}  // extern "C"
