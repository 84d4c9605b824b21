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

#include "conekit/report.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>

namespace conekit {

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "cone dual",     "cone member",   "cone tensor",      "cone extreme",   "cone contains",
      "sys build",     "sys dual",      "sys op",           "map choi",       "map cp",
      "map kraus",     "map kpos",      "map eb",           "extend riesz",   "extend vector",
      "extend invariant", "extend arveson", "tft build",    "tft verify",     "tft witness"};
  return names;
}

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string json_digest(const Json& j) { return fnv1a_hex(j.dump()); }

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Yes:
      return 0;
    case Outcome::No:
      return 1;
    default:
      return 2;
  }
}

// ---- report (de)serialization ----

namespace {

Json options_json(const SolveOptions& o) {
  return Json{{"exact", o.exact},     {"tol", o.tol},         {"seed", o.seed},
              {"restarts", o.restarts}, {"iterations", o.iterations}, {"budget", o.budget},
              {"dd_cap", o.dd_cap},   {"samples", o.samples}};
}

SolveOptions options_from(const Json& j) {
  SolveOptions o;
  const std::string p = "options";
  auto num = [&](const char* k) -> const Json& {
    const Json& v = field(j, k, p);
    if (!v.is_number()) throw ParseError(p + "." + k + ": expected a number");
    return v;
  };
  const Json& ex = field(j, "exact", p);
  if (!ex.is_boolean()) throw ParseError("options.exact: expected a boolean");
  o.exact = ex.get<bool>();
  o.tol = num("tol").get<double>();
  o.seed = num("seed").get<std::uint64_t>();
  o.restarts = num("restarts").get<int>();
  o.iterations = num("iterations").get<int>();
  o.budget = num("budget").get<int>();
  o.dd_cap = size_field(j, "dd_cap", p);
  o.samples = num("samples").get<int>();
  return o;
}

Outcome verdict_from(const Json& j) {
  if (!j.is_string()) throw ParseError("verdict: expected a string");
  auto s = j.get<std::string>();
  for (Outcome o : {Outcome::Yes, Outcome::No, Outcome::Unknown})
    if (s == outcome_name(o)) return o;
  throw ParseError("verdict: unknown value \"" + s + "\"");
}

Json body_json(const RunReport& r) {
  return Json{{"tool", "conekit"},
              {"version", kVersion},
              {"command", r.command},
              {"mode", r.options.exact ? "exact" : "float"},
              {"seed", r.options.seed},
              {"options", options_json(r.options)},
              {"inputs", r.inputs},
              {"inputs_digest", json_digest(r.inputs)},
              {"verdict", outcome_name(r.verdict)},
              {"result", r.result},
              {"certificate", r.certificate},
              {"timing_ms", r.timing_ms}};
}

}  // namespace

Json RunReport::to_json() const {
  Json j = body_json(*this);
  j["report_digest"] = json_digest(j);
  return j;
}

RunReport RunReport::from_json(const Json& j) {
  RunReport r;
  const std::string p = "report";
  const Json& c = field(j, "command", p);
  if (!c.is_string()) throw ParseError("report.command: expected a string");
  r.command = c.get<std::string>();
  r.options = options_from(field(j, "options", p));
  r.inputs = field(j, "inputs", p);
  r.verdict = verdict_from(field(j, "verdict", p));
  r.result = field(j, "result", p);
  r.certificate = field(j, "certificate", p);
  const Json& t = field(j, "timing_ms", p);
  if (!t.is_number()) throw ParseError("report.timing_ms: expected a number");
  r.timing_ms = t.get<double>();
  return r;
}

// ---- input helpers ----

namespace {

struct Outcomes {
  Outcome verdict = Outcome::Yes;
  Json result = Json::object();
  Json certificate = Json{{"type", "construction"}};
};

std::size_t size_or(const Json& in, const char* key, std::size_t dflt) {
  return in.contains(key) ? size_field(in, key, "inputs") : dflt;
}

std::vector<std::size_t> levels_from(const Json& in) {
  std::vector<std::size_t> out;
  if (!in.contains("levels")) return out;
  const Json& l = in["levels"];
  if (!l.is_array()) throw ParseError("inputs.levels: expected an array");
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (!l[i].is_number_integer() || l[i].get<long long>() < 0)
      throw ParseError("inputs.levels[" + std::to_string(i) + "]: expected a nonnegative integer");
    out.push_back(l[i].get<std::size_t>());
  }
  return out;
}

/** Parses inputs.system and materializes the extra levels named in inputs.levels. */
System system_input(const Json& in, const char* key, std::size_t cap) {
  System s = system_from_json(field(in, key, "inputs"), std::string("inputs.") + key);
  s.cap = cap;
  for (auto c : levels_from(in)) s.level(c);
  return s;
}

Json member_json(const MemberResult& m) {
  Json j{{"verdict", outcome_name(m.outcome)}, {"cert", member_cert_to_json(m.cert)}};
  if (!m.oracle.empty()) j["oracle"] = m.oracle;
  if (!m.reason.empty()) j["reason"] = m.reason;
  return j;
}

void set_membership(Outcomes& o, const MemberResult& m) {
  o.verdict = m.outcome;
  o.result["oracle"] = m.oracle;
  o.result["reason"] = m.reason;
  o.certificate = Json{{"type", "membership"}, {"cert", member_cert_to_json(m.cert)}};
}

ConePtr tensor_input(const Json& in, std::size_t cap) {
  auto l = cone_from_json(field(in, "left", "inputs"), "inputs.left");
  auto r = cone_from_json(field(in, "right", "inputs"), "inputs.right");
  std::string kind = in.contains("kind") ? in["kind"].get<std::string>() : "min";
  if (kind == "min") return min_tensor(l, r, cap);
  if (kind == "max") return max_tensor(l, r, cap);
  throw ParseError("inputs.kind: expected \"min\" or \"max\"");
}

struct LevelTarget {
  std::size_t level = 0;
  QVec x;
};

LevelTarget target_input(const Json& in) {
  const Json& t = field(in, "target", "inputs");
  return {size_field(t, "level", "inputs.target"),
          qvec_from_json(field(t, "element", "inputs.target"), "inputs.target.element")};
}

ExtProblem ext_problem(const std::string& cmd, const Json& in) {
  ExtProblem p;
  if (cmd == "extend riesz") {
    p.c = cone_from_json(field(in, "cone", "inputs"), "inputs.cone");
    p.d = Cone::orthant(1);
    p.u = qvecs_from_json(field(in, "u", "inputs"), "inputs.u");
    for (const auto& v : qvec_from_json(field(in, "psi", "inputs"), "inputs.psi"))
      p.psi.push_back(QVec{v});
    return p;
  }
  p.c = cone_from_json(field(in, "c", "inputs"), "inputs.c");
  p.d = cone_from_json(field(in, "d", "inputs"), "inputs.d");
  p.u = qvecs_from_json(field(in, "u", "inputs"), "inputs.u");
  p.psi = qvecs_from_json(field(in, "psi", "inputs"), "inputs.psi");
  if (p.u.size() != p.psi.size()) throw DimensionError("inputs.psi: one value per vector of u");
  for (std::size_t i = 0; i < p.u.size(); ++i) {
    if (p.u[i].size() != p.c->ambient()) throw DimensionError("inputs.u: vectors must lie in V");
    if (p.psi[i].size() != p.d->ambient()) throw DimensionError("inputs.psi: vectors must lie in W");
  }
  if (cmd == "extend invariant") {
    auto mats = [&](const char* key) {
      std::vector<QMat> out;
      const Json& a = field(in, key, "inputs");
      if (!a.is_array()) throw ParseError(std::string("inputs.") + key + ": expected an array");
      for (std::size_t i = 0; i < a.size(); ++i)
        out.push_back(qmat_from_json(a[i], std::string("inputs.") + key + "[" + std::to_string(i) + "]"));
      return out;
    };
    p.rho = mats("rho");
    p.sigma = mats("sigma");
  }
  return p;
}

ArvesonProblem arveson_problem(const Json& in) {
  ArvesonProblem p;
  p.d = size_field(in, "d", "inputs");
  p.t = size_field(in, "t", "inputs");
  p.theta = qmat_from_json(field(in, "theta", "inputs"), "inputs.theta");
  p.psi = qmat_from_json(field(in, "psi", "inputs"), "inputs.psi");
  if (p.theta.rows() != p.d * p.d) throw DimensionError("inputs.theta: expected d^2 rows");
  if (p.psi.rows() != p.t * p.t) throw DimensionError("inputs.psi: expected t^2 rows");
  if (p.theta.cols() != p.psi.cols()) throw DimensionError("inputs: theta and psi differ in columns");
  return p;
}

Json tft_report_json(const TftDualityReport& r) {
  return Json{{"m", r.level.m},
              {"k", r.level.k},
              {"generators", r.generators},
              {"extreme", r.extreme},
              {"rank", r.rank},
              {"lineality", r.lineality},
              {"b_in_a", r.b_in_a},
              {"dual_a_is_b", r.dual_a_is_b},
              {"dual_b_is_a", r.dual_b_is_a},
              {"b_not_full", r.b_not_full},
              {"a_not_sharp", r.a_not_sharp}};
}

TftLevel tft_level(const Json& in) {
  TftLevel l;
  l.m = size_or(in, "m", 2);
  l.k = size_or(in, "k", 1);
  return l;
}

Outcome ext_outcome(ExtKind k) {
  return k == ExtKind::Extension ? Outcome::Yes
         : k == ExtKind::Obstruction ? Outcome::No
                                     : Outcome::Unknown;
}

Json ext_result_json(const ExtResult& r) {
  Json j{{"meets_interior", r.hypotheses.meets_interior}, {"d_sharp", r.hypotheses.d_sharp}};
  if (!r.hypotheses.interior_point.empty()) j["interior_point"] = to_json(r.hypotheses.interior_point);
  Json crit{{"evaluated", r.criterion.evaluated},
            {"tested", r.criterion.tested},
            {"holds", r.criterion.holds},
            {"reason", r.criterion.reason}};
  if (!r.criterion.violation.empty()) crit["violation"] = to_json(r.criterion.violation);
  j["criterion"] = crit;
  if (!r.fix_basis.empty() || r.b_rho) {
    j["fix_basis"] = to_json(r.fix_basis);
    j["b_rho"] = cone_to_json(r.b_rho);
    j["a_rho"] = cone_to_json(r.a_rho);
  }
  return j;
}

Json kraus_cert(const KrausList& k, double tol) {
  return Json{{"type", "kraus"}, {"kraus", kraus_to_json(k)}, {"tol", tol}};
}

using Handler = std::function<Outcomes(const Json&, const SolveOptions&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"cone dual",
       [](const Json& in, const SolveOptions& opt) {
         Outcomes o;
         auto c = cone_from_json(field(in, "cone", "inputs"), "inputs.cone");
         o.result["dual"] = cone_to_json(dual(c));
         if (c->is_polyhedral()) o.result["explicit"] = cone_to_json(dual_explicit(c, opt.dd_cap));
         return o;
       }},
      {"cone member",
       [](const Json& in, const SolveOptions& opt) {
         Outcomes o;
         auto c = cone_from_json(field(in, "cone", "inputs"), "inputs.cone");
         set_membership(o, member(c, qvec_from_json(field(in, "x", "inputs"), "inputs.x"), opt));
         return o;
       }},
      {"cone tensor",
       [](const Json& in, const SolveOptions& opt) {
         Outcomes o;
         auto c = tensor_input(in, opt.dd_cap);
         if (in.contains("x")) set_membership(o, member(c, qvec_from_json(in["x"], "inputs.x"), opt));
         o.result["cone"] = cone_to_json(c);
         return o;
       }},
      {"cone extreme",
       [](const Json& in, const SolveOptions& opt) {
         Outcomes o;
         auto c = cone_from_json(field(in, "cone", "inputs"), "inputs.cone");
         if (!c->is_polyhedral()) throw Unsupported("cone extreme: polyhedral cones only");
         o.result["cone"] = cone_to_json(extreme_rays(to_poly_v(c, opt.dd_cap)));
         return o;
       }},
      {"cone contains",
       [](const Json& in, const SolveOptions& opt) {
         Outcomes o;
         auto outer = cone_from_json(field(in, "outer", "inputs"), "inputs.outer");
         auto inner = cone_from_json(field(in, "inner", "inputs"), "inputs.inner");
         auto r = cone_contains(outer, inner, opt);
         o.verdict = r.outcome;
         o.result["reason"] = r.reason;
         Json res = Json::array();
         for (const auto& m : r.results) res.push_back(member_json(m));
         o.certificate = Json{{"type", "containment"},
                              {"by_halfspaces", r.by_halfspaces},
                              {"tested", to_json(r.tested)},
                              {"results", res},
                              {"witness", to_json(r.witness)}};
         return o;
       }},
      {"sys build",
       [](const Json& in, const SolveOptions& opt) {
         Outcomes o;
         System s = system_input(in, "system", opt.dd_cap);
         if (in.contains("target")) {
           auto t = target_input(in);
           if (s.mode == SystemMode::Generated) {
             auto v = generated_membership(s.stem, s.base_dim, s.generators, t.level, t.x, opt);
             o.verdict = v.outcome;
             o.certificate = Json{{"type", "generated"}, {"cert", generated_to_json(v)}};
           } else {
             const Level& lv = s.level(t.level);
             if (!lv.cone) throw Unsupported("sys build: level " + std::to_string(t.level) + ": " + lv.reason);
             set_membership(o, member(lv.cone, t.x, opt));
           }
         }
         if (in.contains("compatibility") && in["compatibility"].is_boolean() &&
             in["compatibility"].get<bool>()) {
           auto c = check_compatibility(s, opt);
           o.result["compatibility"] =
               Json{{"checked", c.checked}, {"skipped", c.skipped}, {"failures", c.failures}};
           if (!c.failures.empty()) o.verdict = Outcome::No;
         }
         o.result["system"] = system_to_json(s);
         return o;
       }},
      {"sys dual",
       [](const Json& in, const SolveOptions& opt) {
         Outcomes o;
         o.result["system"] = system_to_json(dual_system(system_input(in, "system", opt.dd_cap)));
         return o;
       }},
      {"sys op",
       [](const Json& in, const SolveOptions& opt) {
         Outcomes o;
         const Json& op = field(in, "op", "inputs");
         if (!op.is_string()) throw ParseError("inputs.op: expected a string");
         SystemOp which{};
         bool found = false;
         for (SystemOp k : {SystemOp::Sum, SystemOp::Intersect, SystemOp::DirectSum, SystemOp::Image,
                            SystemOp::Preimage})
           if (op.get<std::string>() == system_op_name(k)) {
             which = k;
             found = true;
           }
         if (!found) throw ParseError("inputs.op: unknown operation \"" + op.get<std::string>() + "\"");
         System g = system_input(in, "system", opt.dd_cap);
         System h;
         QMat psi;
         const System* hp = nullptr;
         const QMat* pp = nullptr;
         if (in.contains("other")) {
           h = system_input(in, "other", opt.dd_cap);
           hp = &h;
         }
         if (in.contains("map")) {
           psi = qmat_from_json(in["map"], "inputs.map");
           pp = &psi;
         }
         o.result["system"] = system_to_json(system_op(which, g, hp, pp));
         return o;
       }},
      {"map choi",
       [](const Json& in, const SolveOptions&) {
         Outcomes o;
         o.result["choi"] = to_json(choi(map_from_json(field(in, "map", "inputs"), "inputs.map")));
         return o;
       }},
      {"map cp",
       [](const Json& in, const SolveOptions& opt) {
         Outcomes o;
         auto r = cp_check(map_from_json(field(in, "map", "inputs"), "inputs.map"), opt);
         o.verdict = r.cp ? Outcome::Yes : Outcome::No;
         o.result["lambda_min"] = r.lambda_min;
         o.result["exact"] = r.exact;
         if (r.cp) {
           o.certificate = kraus_cert(r.kraus, kReplayTol);
         } else {
           o.result["witness_value"] = r.witness_value;
           o.certificate = Json{{"type", "cp_witness"}, {"z", to_json(r.witness)}};
         }
         return o;
       }},
      {"map kraus",
       [](const Json& in, const SolveOptions& opt) {
         Outcomes o;
         auto m = map_from_json(field(in, "map", "inputs"), "inputs.map");
         auto k = kraus(m, opt);
         o.result["count"] = k.size();
         o.result["error"] = kraus_reconstruction_error(m, k);
         o.certificate = kraus_cert(k, kReplayTol);
         return o;
       }},
      {"map kpos",
       [](const Json& in, const SolveOptions& opt) {
         Outcomes o;
         auto m = map_from_json(field(in, "map", "inputs"), "inputs.map");
         std::size_t k = size_or(in, "k", 1);
         auto r = k_positivity(m, k, opt);
         o.verdict = r.outcome;
         o.result["oracle"] = r.oracle;
         o.result["reason"] = r.reason;
         if (r.outcome == Outcome::No) {
           o.result["value"] = r.value;
           Json a = Json::array(), b = Json::array();
           for (const auto& v : r.a) a.push_back(to_json(v));
           for (const auto& v : r.b) b.push_back(to_json(v));
           o.certificate = Json{{"type", "kpos_witness"}, {"k", k}, {"a", a}, {"b", b}};
         } else if (r.outcome == Outcome::Yes) {
           o.certificate = kraus_cert(kraus(m, opt), kReplayTol);
         } else {
           o.certificate = Json{{"type", "none"}};
         }
         return o;
       }},
      {"map eb",
       [](const Json& in, const SolveOptions& opt) {
         Outcomes o;
         auto r = eb_check(map_from_json(field(in, "map", "inputs"), "inputs.map"), opt);
         o.verdict = r.outcome;
         o.result["oracle"] = r.member.oracle;
         o.result["reason"] = r.reason;
         if (!r.factorization.measure.empty()) {
           Json q = Json::array(), p = Json::array();
           for (const auto& m : r.factorization.measure) q.push_back(to_json(m));
           for (const auto& m : r.factorization.prepare) p.push_back(to_json(m));
           o.certificate = Json{{"type", "eb_factorization"},
                                {"measure", q},
                                {"prepare", p},
                                {"tol", r.factorization.tol}};
         } else {
           o.certificate = Json{{"type", "eb_membership"}, {"cert", member_cert_to_json(r.member.cert)}};
         }
         return o;
       }},
      {"extend riesz",
       [](const Json& in, const SolveOptions& opt) {
         Outcomes o;
         auto p = ext_problem("extend riesz", in);
         QVec psi;
         for (const auto& v : p.psi) psi.push_back(v[0]);
         auto r = riesz_extend(p.c, p.u, psi, opt.dd_cap);
         o.verdict = ext_outcome(r.cert.kind);
         o.result = ext_result_json(r);
         o.certificate = Json{{"type", "extension"}, {"cert", ext_cert_to_json(r.cert)}};
         return o;
       }},
      {"extend vector",
       [](const Json& in, const SolveOptions& opt) {
         Outcomes o;
         auto r = riesz_extend_vector(ext_problem("extend vector", in), opt.dd_cap);
         o.verdict = ext_outcome(r.cert.kind);
         o.result = ext_result_json(r);
         o.certificate = Json{{"type", "extension"}, {"cert", ext_cert_to_json(r.cert)}};
         return o;
       }},
      {"extend invariant",
       [](const Json& in, const SolveOptions& opt) {
         Outcomes o;
         auto r = invariant_extend(ext_problem("extend invariant", in), opt.dd_cap);
         o.verdict = ext_outcome(r.cert.kind);
         o.result = ext_result_json(r);
         o.certificate = Json{{"type", "extension"}, {"cert", ext_cert_to_json(r.cert)}};
         return o;
       }},
      {"extend arveson",
       [](const Json& in, const SolveOptions& opt) {
         Outcomes o;
         auto p = arveson_problem(in);
         int iters = static_cast<int>(size_or(in, "iterations", 5000));
         double tol = in.contains("tol") && in["tol"].is_number() ? in["tol"].get<double>() : opt.tol;
         auto r = arveson_extend(p, iters, tol);
         o.verdict = r.outcome;
         o.result = Json{{"residual", r.residual},
                         {"iterations", r.iterations},
                         {"hypotheses", r.hypotheses},
                         {"reason", r.reason}};
         o.certificate = Json{{"type", "arveson"}, {"kraus", kraus_to_json(r.kraus)}, {"tol", tol}};
         return o;
       }},
      {"tft build",
       [](const Json& in, const SolveOptions&) {
         Outcomes o;
         auto l = tft_level(in);
         o.result["b"] = cone_to_json(b_cone(l));
         o.result["a"] = cone_to_json(a_cone(l));
         return o;
       }},
      {"tft verify",
       [](const Json& in, const SolveOptions& opt) {
         Outcomes o;
         auto r = verify_tft_duality(tft_level(in), opt);
         o.verdict = r.all_pass() ? Outcome::Yes : Outcome::No;
         o.result["text"] = r.text();
         o.certificate = Json{{"type", "tft_report"}, {"report", tft_report_json(r)}};
         return o;
       }},
      {"tft witness",
       [](const Json& in, const SolveOptions& opt) {
         Outcomes o;
         auto w = assumption_failure_witness(size_or(in, "m", 2), size_or(in, "k", 1),
                                             size_or(in, "l", 1), opt);
         o.verdict = w.found ? Outcome::Yes : Outcome::Unknown;
         o.certificate = Json{{"type", "assumption_witness"}, {"witness", assumption_to_json(w)}};
         return o;
       }},
  };
  return h;
}

}  // namespace

RunReport run_command(const std::string& command, const Json& inputs, const SolveOptions& opt) {
  auto it = handlers().find(command);
  if (it == handlers().end()) throw ParseError("unknown command \"" + command + "\"");
  if (!inputs.is_object()) throw ParseError("inputs: expected an object");
  auto t0 = std::chrono::steady_clock::now();
  Outcomes o = it->second(inputs, opt);
  auto t1 = std::chrono::steady_clock::now();
  RunReport r;
  r.command = command;
  r.options = opt;
  r.inputs = inputs;
  r.verdict = o.verdict;
  r.result = std::move(o.result);
  r.certificate = std::move(o.certificate);
  r.timing_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return r;
}

// ---- replay ----

namespace {

bool replay_membership(const ConePtr& c, const QVec& x, Outcome v, const Json& cert,
                       std::size_t cap) {
  if (v == Outcome::Unknown) return true;
  return check_member_cert(c, x, v, member_cert_from_json(cert, "certificate.cert"), cap);
}

bool replay_containment(const RunReport& r) {
  const Json& in = r.inputs;
  const Json& c = r.certificate;
  auto outer = cone_from_json(field(in, "outer", "inputs"), "inputs.outer");
  auto inner = cone_from_json(field(in, "inner", "inputs"), "inputs.inner");
  bool byh = field(c, "by_halfspaces", "certificate").get<bool>();
  auto tested = qvecs_from_json(field(c, "tested", "certificate"), "certificate.tested");
  const Json& results = field(c, "results", "certificate");
  if (!results.is_array() || results.size() != tested.size()) return false;
  if (r.verdict == Outcome::Unknown) return true;
  if (tested.empty()) return r.verdict == Outcome::Yes && cone_to_json(outer) == cone_to_json(inner);
  std::size_t cap = r.options.dd_cap;
  auto expected = byh ? halfspaces_of(outer, cap) : generators_of(inner, cap);
  if (expected != tested) return false;
  ConePtr target = byh ? dual(inner) : outer;
  auto check = [&](std::size_t i, Outcome want) {
    if (verdict_from(field(results[i], "verdict", "certificate.results")) != want) return false;
    return check_member_cert(target, tested[i], want,
                             member_cert_from_json(field(results[i], "cert", "certificate.results"),
                                                   "certificate.results.cert"),
                             cap);
  };
  if (r.verdict == Outcome::Yes) {
    for (std::size_t i = 0; i < tested.size(); ++i)
      if (!check(i, Outcome::Yes)) return false;
    return true;
  }
  for (std::size_t i = 0; i < tested.size(); ++i)
    if (verdict_from(results[i]["verdict"]) == Outcome::No) {
      if (!check(i, Outcome::No)) return false;
      return byh || qvec_from_json(c["witness"], "certificate.witness") == tested[i];
    }
  return false;
}

bool replay_kraus(const LinMap& m, const Json& c) {
  auto k = kraus_from_json(field(c, "kraus", "certificate"), "certificate.kraus");
  double tol = field(c, "tol", "certificate").get<double>();
  if (k.empty()) return false;
  for (const auto& t : k)
    if (t.rows() != m.d || t.cols() != m.t) return false;
  return kraus_reconstruction_error(m, k) <= tol;
}

bool replay(const RunReport& r) {
  const Json& in = r.inputs;
  const Json& c = r.certificate;
  const SolveOptions& opt = r.options;
  std::string type = field(c, "type", "certificate").get<std::string>();
  const std::string& cmd = r.command;

  if (type == "construction") {
    // Deterministic constructions: rebuild and compare.
    auto again = run_command(cmd, in, opt);
    return again.verdict == r.verdict && again.result == r.result;
  }
  if (type == "none") return r.verdict == Outcome::Unknown;
  if (type == "membership") {
    const Json& cert = field(c, "cert", "certificate");
    if (cmd == "cone member") {
      auto cone = cone_from_json(field(in, "cone", "inputs"), "inputs.cone");
      return replay_membership(cone, qvec_from_json(field(in, "x", "inputs"), "inputs.x"), r.verdict,
                               cert, opt.dd_cap);
    }
    if (cmd == "cone tensor") {
      auto cone = tensor_input(in, opt.dd_cap);
      if (cone_to_json(cone) != r.result.value("cone", Json())) return false;
      return replay_membership(cone, qvec_from_json(field(in, "x", "inputs"), "inputs.x"), r.verdict,
                               cert, opt.dd_cap);
    }
    if (cmd == "sys build") {
      System s = system_input(in, "system", opt.dd_cap);
      auto t = target_input(in);
      const Level& lv = s.level(t.level);
      return lv.cone && replay_membership(lv.cone, t.x, r.verdict, cert, opt.dd_cap);
    }
    return false;
  }
  if (type == "containment") return cmd == "cone contains" && replay_containment(r);
  if (type == "generated") {
    System s = system_input(in, "system", opt.dd_cap);
    auto t = target_input(in);
    auto v = generated_from_json(field(c, "cert", "certificate"), "certificate.cert");
    if (v.outcome != r.verdict) return false;
    if (v.outcome == Outcome::Unknown) return true;
    return check_generated(s.stem, s.base_dim, s.generators, t.level, t.x, v);
  }
  if (type == "kraus") {
    if (r.verdict != Outcome::Yes) return false;
    return replay_kraus(map_from_json(field(in, "map", "inputs"), "inputs.map"), c);
  }
  if (type == "cp_witness") {
    if (r.verdict != Outcome::No) return false;
    auto m = map_from_json(field(in, "map", "inputs"), "inputs.map");
    auto z = qcvec_from_json(field(c, "z", "certificate"), "certificate.z");
    if (z.size() != m.d * m.t) return false;
    return sgn(quadratic_form(choi(m), z)) < 0;
  }
  if (type == "kpos_witness") {
    if (r.verdict != Outcome::No) return false;
    auto m = map_from_json(field(in, "map", "inputs"), "inputs.map");
    std::size_t k = size_field(c, "k", "certificate");
    if (k != size_or(in, "k", 1)) return false;
    std::vector<QCVec> a, b;
    for (const auto& v : field(c, "a", "certificate")) a.push_back(qcvec_from_json(v, "certificate.a"));
    for (const auto& v : field(c, "b", "certificate")) b.push_back(qcvec_from_json(v, "certificate.b"));
    return check_kpos_witness(m, k, a, b);
  }
  if (type == "eb_factorization") {
    if (r.verdict != Outcome::Yes) return false;
    auto m = map_from_json(field(in, "map", "inputs"), "inputs.map");
    EbFactorization f;
    for (const auto& v : field(c, "measure", "certificate"))
      f.measure.push_back(qcmat_from_json(v, "certificate.measure"));
    for (const auto& v : field(c, "prepare", "certificate"))
      f.prepare.push_back(qcmat_from_json(v, "certificate.prepare"));
    f.tol = field(c, "tol", "certificate").get<double>();
    return check_eb_factorization(m, f);
  }
  if (type == "eb_membership") {
    auto m = map_from_json(field(in, "map", "inputs"), "inputs.map");
    QVec x = matrix_to_product_coords(choi(m), m.t, m.d);
    auto node = Cone::min_node(Cone::psd(m.t), Cone::psd(m.d));
    return replay_membership(node, x, r.verdict, field(c, "cert", "certificate"), opt.dd_cap);
  }
  if (type == "extension") {
    auto cert = ext_cert_from_json(field(c, "cert", "certificate"), "certificate.cert");
    if (ext_outcome(cert.kind) != r.verdict) return false;
    if (cert.kind == ExtKind::Unknown) return true;
    return check_ext_cert(ext_problem(cmd, in), cert, opt.dd_cap);
  }
  if (type == "arveson") {
    auto p = arveson_problem(in);
    auto k = kraus_from_json(field(c, "kraus", "certificate"), "certificate.kraus");
    double tol = field(c, "tol", "certificate").get<double>();
    double res = k.empty() ? 1e300 : arveson_residual(p, k);
    if (r.verdict == Outcome::Yes) return res < tol;
    return r.verdict == Outcome::Unknown;
  }
  if (type == "tft_report") {
    auto again = verify_tft_duality(tft_level(in), opt);
    if (tft_report_json(again) != field(c, "report", "certificate")) return false;
    return r.verdict == (again.all_pass() ? Outcome::Yes : Outcome::No);
  }
  if (type == "assumption_witness") {
    auto w = assumption_from_json(field(c, "witness", "certificate"), "certificate.witness");
    if (!w.found) return r.verdict == Outcome::Unknown;
    return r.verdict == Outcome::Yes && w.m == size_or(in, "m", 2) && w.k == size_or(in, "k", 1) &&
           w.l == size_or(in, "l", 1) && check_assumption_witness(w);
  }
  throw ParseError("certificate.type: unknown value \"" + type + "\"");
}

}  // namespace

bool verify_certificate(const RunReport& r, std::string* why) {
  try {
    bool ok = replay(r);
    if (!ok && why) *why = "certificate does not replay";
    return ok;
  } catch (const Error& e) {
    if (why) *why = std::string("certificate replay failed: ") + e.what();
    return false;
  } catch (const nlohmann::json::exception& e) {
    if (why) *why = std::string("malformed certificate: ") + e.what();
    return false;
  }
}

VerifyResult verify_report(const Json& report) {
  VerifyResult out;
  RunReport r;
  try {
    r = RunReport::from_json(report);
  } catch (const Error& e) {
    out.reason = e.what();
    return out;
  } catch (const nlohmann::json::exception& e) {
    out.reason = std::string("malformed report: ") + e.what();
    return out;
  }
  Json body = report;
  body.erase("report_digest");
  out.digest_ok = report.contains("report_digest") && report["report_digest"].is_string() &&
                  report["report_digest"].get<std::string>() == json_digest(body) &&
                  body == body_json(r);
  if (!out.digest_ok) out.reason = "digest mismatch";
  out.certificate_ok = verify_certificate(r, out.digest_ok ? &out.reason : nullptr);
  out.ok = out.digest_ok && out.certificate_ok;
  if (out.ok) out.reason = "ok";
  return out;
}

std::string schema_text() {
  return R"(Input schemas (JSON). Rationals are strings "p/q" or "p"; JSON integers are
accepted, JSON floats are rejected. Matrices are row lists. Complex data is
{"re": ..., "im": ...} with "im" optional.

Cone:    {"kind": "poly_v"|"poly_h"|"simplex"|"orthant"|"lorentz"|"psd"|
                  "min_tensor"|"max_tensor"|"preimage",
          "ambient": n, "generators"|"halfspaces"|"basis": [[...], ...],
          "d": d, "dual": bool, "left": Cone, "right": Cone,
          "map": [[...]], "inner": Cone}
          psd(d) uses Hermitian coordinates: diagonal entries, then the real
          parts of E_ij+E_ji, then the parts of i(E_ij-E_ji), i<j.
System:  {"stem": "simplex"|"operator"|"tft", "m": m (tft), "base_dim": n,
          "base_cone": Cone, "mode": "min"|"max"|"generated"|"explicit",
          "generators": [{"level": c, "element": [...]}],
          "levels": [c, ...] or [{"level": c, "cone": Cone}, ...]}
Map:     {"dom_d": d, "cod_d": t, "matrix": t^2 x d^2 rows}

Command inputs:
  cone dual         {"cone": Cone}
  cone member       {"cone": Cone, "x": [...]}
  cone tensor       {"left": Cone, "right": Cone, "kind": "min"|"max", "x"?: [...]}
  cone extreme      {"cone": Cone}
  cone contains     {"outer": Cone, "inner": Cone}
  sys build         {"system": System, "levels"?: [...], "target"?: {"level": c, "element": [...]},
                     "compatibility"?: bool}
  sys dual          {"system": System, "levels"?: [...]}
  sys op            {"op": "sum"|"intersect"|"direct_sum"|"image"|"preimage",
                     "system": System, "other"?: System, "map"?: [[...]]}
  map choi|cp|kraus|eb  {"map": Map}
  map kpos          {"map": Map, "k": k}
  extend riesz      {"cone": Cone, "u": [[...]], "psi": [...]}
  extend vector     {"c": Cone, "d": Cone, "u": [[...]], "psi": [[...]]}
  extend invariant  as vector plus {"rho": [matrix...], "sigma": [matrix...]}
  extend arveson    {"d": d, "t": t, "theta": d^2 x p, "psi": t^2 x p, "iterations"?: n}
  tft build|verify  {"m": m, "k": k}
  tft witness       {"m": m, "k": k, "l": l}

Exit codes: 0 yes, 1 no, 2 unknown, 3 input or runtime error.
)";
}

}  // namespace conekit
