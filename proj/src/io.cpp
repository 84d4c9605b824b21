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

#include "conekit/io.hpp"

#include <regex>

namespace conekit {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

std::string at(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const Json& expect_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

}  // namespace

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing field");
  return *it;
}

std::size_t size_field(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    fail(path + "." + key, "expected a nonnegative integer");
  return v.get<std::size_t>();
}

// ---- scalars and arrays ----

Json to_json(const Rational& q0) {
  Rational q = q0;
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Rational(std::to_string(j.get<unsigned long long>()));
    return Rational(std::to_string(j.get<long long>()));
  }
  if (j.is_number_float()) fail(path, "floats are not accepted; write the rational as \"p/q\"");
  if (!j.is_string()) fail(path, "expected a rational string");
  static const std::regex re(R"(^\s*[-+]?[0-9]+(/[0-9]+)?\s*$)");
  std::string s = j.get<std::string>();
  if (!std::regex_match(s, re)) fail(path, "malformed rational \"" + s + "\"");
  s.erase(0, s.find_first_not_of(" \t"));
  s.erase(s.find_last_not_of(" \t") + 1);
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) fail(path, "malformed rational \"" + s + "\"");
  if (q.get_den() == 0) fail(path, "zero denominator");
  q.canonicalize();
  return q;
}

Json to_json(const QVec& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(to_json(q));
  return a;
}

QVec qvec_from_json(const Json& j, const std::string& path) {
  expect_array(j, path);
  QVec v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rational_from_json(j[i], at(path, i)));
  return v;
}

Json to_json(const std::vector<QVec>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

std::vector<QVec> qvecs_from_json(const Json& j, const std::string& path) {
  expect_array(j, path);
  std::vector<QVec> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(qvec_from_json(j[i], at(path, i)));
  return out;
}

Json to_json(const QMat& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

QMat qmat_from_json(const Json& j, const std::string& path) {
  auto rows = qvecs_from_json(j, path);
  if (rows.empty()) return QMat();
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].size() != rows[0].size()) throw DimensionError(at(path, i) + ": ragged matrix row");
  return QMat::from_rows(rows);
}

Json to_json(const QCVec& v) { return Json{{"re", to_json(v.re)}, {"im", to_json(v.im)}}; }

QCVec qcvec_from_json(const Json& j, const std::string& path) {
  QCVec v;
  if (j.is_array()) {
    v.re = qvec_from_json(j, path);
  } else {
    v.re = qvec_from_json(field(j, "re", path), path + ".re");
  }
  if (j.is_object() && j.contains("im")) {
    v.im = qvec_from_json(j["im"], path + ".im");
    if (v.im.size() != v.re.size()) throw DimensionError(path + ": re and im differ in length");
  } else {
    v.im.assign(v.re.size(), Rational(0));
  }
  return v;
}

Json to_json(const QCMat& m) { return Json{{"re", to_json(m.re)}, {"im", to_json(m.im)}}; }

QCMat qcmat_from_json(const Json& j, const std::string& path) {
  QCMat m;
  if (j.is_array()) {
    m.re = qmat_from_json(j, path);
  } else {
    m.re = qmat_from_json(field(j, "re", path), path + ".re");
  }
  if (j.is_object() && j.contains("im")) {
    m.im = qmat_from_json(j["im"], path + ".im");
    if (m.im.rows() != m.re.rows() || m.im.cols() != m.re.cols())
      throw DimensionError(path + ": re and im differ in shape");
  } else {
    m.im = QMat(m.re.rows(), m.re.cols());
  }
  return m;
}

namespace {

Json dmat_json(const DMat& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(m.row(i));
  return a;
}

DMat dmat_from(const Json& j, const std::string& path) {
  expect_array(j, path);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    expect_array(j[i], at(path, i));
    std::vector<double> r;
    for (std::size_t k = 0; k < j[i].size(); ++k) {
      if (!j[i][k].is_number()) fail(at(at(path, i), k), "expected a number");
      r.push_back(j[i][k].get<double>());
    }
    if (!rows.empty() && r.size() != rows[0].size())
      throw DimensionError(at(path, i) + ": ragged matrix row");
    rows.push_back(std::move(r));
  }
  if (rows.empty()) return DMat();
  return DMat::from_rows(rows);
}

}  // namespace

Json to_json(const DCMat& m) { return Json{{"re", dmat_json(m.re)}, {"im", dmat_json(m.im)}}; }

DCMat dcmat_from_json(const Json& j, const std::string& path) {
  DCMat m;
  m.re = dmat_from(j.is_array() ? j : field(j, "re", path), path + ".re");
  if (j.is_object() && j.contains("im")) {
    m.im = dmat_from(j["im"], path + ".im");
    if (m.im.rows() != m.re.rows() || m.im.cols() != m.re.cols())
      throw DimensionError(path + ": re and im differ in shape");
  } else {
    m.im = DMat(m.re.rows(), m.re.cols());
  }
  return m;
}

// ---- cones ----

Json cone_to_json(const ConePtr& c) {
  if (!c) return nullptr;
  Json j{{"ambient", c->ambient()}};
  switch (c->kind()) {
    case ConeKind::PolyV:
      j["kind"] = "poly_v";
      j["generators"] = to_json(c->vectors());
      break;
    case ConeKind::PolyH:
      j["kind"] = "poly_h";
      j["halfspaces"] = to_json(c->vectors());
      break;
    case ConeKind::Simplex:
      j["kind"] = "simplex";
      j["basis"] = to_json(c->vectors());
      break;
    case ConeKind::Lorentz:
      j["kind"] = "lorentz";
      j["d"] = c->d();
      break;
    case ConeKind::Psd:
      j["kind"] = "psd";
      j["d"] = c->d();
      j["dual"] = c->dual_flag();
      break;
    case ConeKind::MinTensor:
    case ConeKind::MaxTensor:
      j["kind"] = c->kind() == ConeKind::MinTensor ? "min_tensor" : "max_tensor";
      j["left"] = cone_to_json(c->left());
      j["right"] = cone_to_json(c->right());
      break;
    case ConeKind::Preimage:
      j["kind"] = "preimage";
      j["map"] = to_json(c->map());
      j["inner"] = cone_to_json(c->inner());
      break;
  }
  return j;
}

namespace {

void check_lengths(const std::vector<QVec>& vs, std::size_t n, const std::string& path) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (vs[i].size() != n)
      throw DimensionError(at(path, i) + ": length " + std::to_string(vs[i].size()) +
                           ", ambient " + std::to_string(n));
}

std::size_t ambient_or(const Json& j, const std::string& path, const std::vector<QVec>& vs) {
  if (j.contains("ambient")) return size_field(j, "ambient", path);
  if (vs.empty()) fail(path + ".ambient", "missing field (needed for an empty list)");
  return vs[0].size();
}

}  // namespace

ConePtr cone_from_json(const Json& j, const std::string& path) {
  const Json& kj = field(j, "kind", path);
  if (!kj.is_string()) fail(path + ".kind", "expected a string");
  std::string kind = kj.get<std::string>();
  ConePtr c;
  if (kind == "poly_v" || kind == "poly_h") {
    std::string key = kind == "poly_v" ? "generators" : "halfspaces";
    auto vs = qvecs_from_json(field(j, key, path), path + "." + key);
    std::size_t n = ambient_or(j, path, vs);
    check_lengths(vs, n, path + "." + key);
    c = kind == "poly_v" ? Cone::poly_v(n, std::move(vs)) : Cone::poly_h(n, std::move(vs));
  } else if (kind == "simplex") {
    std::string key = j.contains("basis") ? "basis" : "generators";
    auto vs = qvecs_from_json(field(j, key, path), path + "." + key);
    check_lengths(vs, ambient_or(j, path, vs), path + "." + key);
    c = Cone::simplex(std::move(vs));
  } else if (kind == "orthant") {
    c = Cone::orthant(size_field(j, "ambient", path));
  } else if (kind == "lorentz") {
    c = Cone::lorentz(size_field(j, "d", path));
  } else if (kind == "psd") {
    bool dual_flag = false;
    if (j.contains("dual")) {
      if (!j["dual"].is_boolean()) fail(path + ".dual", "expected a boolean");
      dual_flag = j["dual"].get<bool>();
    }
    c = Cone::psd(size_field(j, "d", path), dual_flag);
  } else if (kind == "min_tensor" || kind == "max_tensor") {
    auto l = cone_from_json(field(j, "left", path), path + ".left");
    auto r = cone_from_json(field(j, "right", path), path + ".right");
    c = kind == "min_tensor" ? Cone::min_node(l, r) : Cone::max_node(l, r);
  } else if (kind == "preimage") {
    QMat m = qmat_from_json(field(j, "map", path), path + ".map");
    auto inner = cone_from_json(field(j, "inner", path), path + ".inner");
    if (m.rows() != inner->ambient()) throw DimensionError(path + ".map: rows differ from inner ambient");
    c = Cone::preimage(std::move(m), inner);
  } else {
    fail(path + ".kind", "unknown cone kind \"" + kind + "\"");
  }
  if (j.contains("ambient") && size_field(j, "ambient", path) != c->ambient())
    throw DimensionError(path + ".ambient: declared " + std::to_string(j["ambient"].get<std::size_t>()) +
                         ", actual " + std::to_string(c->ambient()));
  return c;
}

// ---- membership certificates ----

namespace {

MemberCert::Type cert_type_from(const std::string& s, const std::string& path) {
  using T = MemberCert::Type;
  for (T t : {T::None, T::Combination, T::Inequalities, T::ExactCheck, T::Separator, T::Halfspace,
              T::HermWitness, T::ProductWitness, T::Decomposition, T::Nested, T::Factorwise,
              T::Orthogonal, T::Pullback})
    if (s == member_cert_type_name(t)) return t;
  fail(path, "unknown certificate type \"" + s + "\"");
}

Json qcmats_json(const std::vector<QCMat>& ms) {
  Json a = Json::array();
  for (const auto& m : ms) a.push_back(to_json(m));
  return a;
}

std::vector<QCMat> qcmats_from(const Json& j, const std::string& path) {
  expect_array(j, path);
  std::vector<QCMat> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(qcmat_from_json(j[i], at(path, i)));
  return out;
}

std::string string_or(const Json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) return {};
  if (!j[key].is_string()) fail(path + "." + key, "expected a string");
  return j[key].get<std::string>();
}

double double_or(const Json& j, const std::string& key, const std::string& path, double dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_number()) fail(path + "." + key, "expected a number");
  return j[key].get<double>();
}

}  // namespace

Json member_cert_to_json(const MemberCert& c) {
  Json j{{"type", member_cert_type_name(c.type)}};
  if (!c.check.empty()) j["check"] = c.check;
  if (!c.vectors.empty()) j["vectors"] = to_json(c.vectors);
  if (!c.vectors2.empty()) j["vectors2"] = to_json(c.vectors2);
  if (!c.coefficients.empty()) j["coefficients"] = to_json(c.coefficients);
  if (!c.functional.empty()) j["functional"] = to_json(c.functional);
  if (!c.functional2.empty()) j["functional2"] = to_json(c.functional2);
  if (c.index) j["index"] = c.index;
  if (c.side) j["side"] = c.side;
  if (c.partial_transpose) j["partial_transpose"] = true;
  if (c.z.size()) j["z"] = to_json(c.z);
  if (c.w.size()) j["w"] = to_json(c.w);
  if (!c.left.empty()) j["left"] = qcmats_json(c.left);
  if (!c.right.empty()) j["right"] = qcmats_json(c.right);
  if (c.tol != 0) j["tol"] = c.tol;
  if (!c.inner.empty()) {
    Json in = Json::array();
    for (const auto& i : c.inner) in.push_back(member_cert_to_json(i));
    j["inner"] = in;
  }
  return j;
}

MemberCert member_cert_from_json(const Json& j, const std::string& path) {
  MemberCert c;
  const Json& t = field(j, "type", path);
  if (!t.is_string()) fail(path + ".type", "expected a string");
  c.type = cert_type_from(t.get<std::string>(), path + ".type");
  c.check = string_or(j, "check", path);
  if (j.contains("vectors")) c.vectors = qvecs_from_json(j["vectors"], path + ".vectors");
  if (j.contains("vectors2")) c.vectors2 = qvecs_from_json(j["vectors2"], path + ".vectors2");
  if (j.contains("coefficients"))
    c.coefficients = qvec_from_json(j["coefficients"], path + ".coefficients");
  if (j.contains("functional")) c.functional = qvec_from_json(j["functional"], path + ".functional");
  if (j.contains("functional2"))
    c.functional2 = qvec_from_json(j["functional2"], path + ".functional2");
  if (j.contains("index")) c.index = size_field(j, "index", path);
  if (j.contains("side")) {
    if (!j["side"].is_number_integer()) fail(path + ".side", "expected an integer");
    c.side = j["side"].get<int>();
  }
  if (j.contains("partial_transpose")) {
    if (!j["partial_transpose"].is_boolean()) fail(path + ".partial_transpose", "expected a boolean");
    c.partial_transpose = j["partial_transpose"].get<bool>();
  }
  if (j.contains("z")) c.z = qcvec_from_json(j["z"], path + ".z");
  if (j.contains("w")) c.w = qcvec_from_json(j["w"], path + ".w");
  if (j.contains("left")) c.left = qcmats_from(j["left"], path + ".left");
  if (j.contains("right")) c.right = qcmats_from(j["right"], path + ".right");
  c.tol = double_or(j, "tol", path, 0);
  if (j.contains("inner")) {
    expect_array(j["inner"], path + ".inner");
    for (std::size_t i = 0; i < j["inner"].size(); ++i)
      c.inner.push_back(member_cert_from_json(j["inner"][i], at(path + ".inner", i)));
  }
  return c;
}

// ---- maps ----

Json map_to_json(const LinMap& m) {
  return Json{{"dom_d", m.d}, {"cod_d", m.t}, {"matrix", to_json(m.matrix)}};
}

LinMap map_from_json(const Json& j, const std::string& path) {
  std::size_t d = size_field(j, "dom_d", path);
  std::size_t t = size_field(j, "cod_d", path);
  QMat m = qmat_from_json(field(j, "matrix", path), path + ".matrix");
  if (m.rows() != t * t || m.cols() != d * d)
    throw DimensionError(path + ".matrix: expected " + std::to_string(t * t) + "x" +
                         std::to_string(d * d));
  return LinMap(d, t, std::move(m));
}

Json kraus_to_json(const KrausList& k) {
  Json a = Json::array();
  for (const auto& m : k) a.push_back(to_json(m));
  return a;
}

KrausList kraus_from_json(const Json& j, const std::string& path) {
  expect_array(j, path);
  KrausList k;
  for (std::size_t i = 0; i < j.size(); ++i) k.push_back(dcmat_from_json(j[i], at(path, i)));
  return k;
}

// ---- systems ----

namespace {

StemKind stem_from(const std::string& s, const std::string& path) {
  for (StemKind k : {StemKind::Simplex, StemKind::Operator, StemKind::Tft})
    if (s == stem_name(k)) return k;
  fail(path, "unknown stem \"" + s + "\"");
}

SystemMode mode_from(const std::string& s, const std::string& path) {
  for (SystemMode m : {SystemMode::Min, SystemMode::Max, SystemMode::Generated, SystemMode::Explicit})
    if (s == system_mode_name(m)) return m;
  fail(path, "unknown mode \"" + s + "\"");
}

Json level_elements_json(const std::vector<LevelElement>& gens) {
  Json a = Json::array();
  for (const auto& g : gens) a.push_back(Json{{"level", g.level}, {"element", to_json(g.element)}});
  return a;
}

}  // namespace

Json stem_to_json(const Stem& s) {
  Json j{{"stem", stem_name(s.kind)}};
  if (s.kind == StemKind::Tft) j["m"] = s.m;
  return j;
}

Json system_to_json(const System& s) {
  Json j = stem_to_json(s.stem);
  j["base_dim"] = s.base_dim;
  j["mode"] = system_mode_name(s.mode);
  if (s.base) j["base_cone"] = cone_to_json(s.base);
  if (!s.generators.empty()) j["generators"] = level_elements_json(s.generators);
  Json lv = Json::array();
  for (const auto& [c, l] : s.levels) {
    Json e{{"level", c}};
    if (l.cone)
      e["cone"] = cone_to_json(l.cone);
    else
      e["reason"] = l.reason;
    lv.push_back(e);
  }
  j["levels"] = lv;
  return j;
}

System system_from_json(const Json& j, const std::string& path) {
  Stem stem;
  const Json& sj = field(j, "stem", path);
  if (!sj.is_string()) fail(path + ".stem", "expected a string");
  stem.kind = stem_from(sj.get<std::string>(), path + ".stem");
  if (stem.kind == StemKind::Tft) {
    if (j.contains("m"))
      stem.m = size_field(j, "m", path);
    else if (j.contains("d"))
      stem.m = size_field(j, "d", path) * size_field(j, "d", path);
    else
      stem.m = 2;
  }
  SystemMode mode = SystemMode::Explicit;
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) fail(path + ".mode", "expected a string");
    mode = mode_from(j["mode"].get<std::string>(), path + ".mode");
  }
  ConePtr base;
  if (j.contains("base_cone") && !j["base_cone"].is_null())
    base = cone_from_json(j["base_cone"], path + ".base_cone");
  std::size_t base_dim = 0;
  if (j.contains("base_dim"))
    base_dim = size_field(j, "base_dim", path);
  else if (base)
    base_dim = base->ambient();
  else
    fail(path + ".base_dim", "missing field");
  if (base && base->ambient() != base_dim)
    throw DimensionError(path + ".base_cone: ambient differs from base_dim");

  std::vector<LevelElement> gens;
  if (j.contains("generators")) {
    const Json& g = expect_array(j["generators"], path + ".generators");
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::string p = at(path + ".generators", i);
      gens.push_back({size_field(g[i], "level", p), qvec_from_json(field(g[i], "element", p), p + ".element")});
    }
  }

  // Levels: plain integers are materialized from the mode; objects may carry a cone.
  std::vector<std::size_t> wanted;
  std::map<std::size_t, Level> given;
  if (j.contains("levels")) {
    const Json& l = expect_array(j["levels"], path + ".levels");
    for (std::size_t i = 0; i < l.size(); ++i) {
      std::string p = at(path + ".levels", i);
      if (l[i].is_number_integer()) {
        if (l[i].get<long long>() < 0) fail(p, "expected a nonnegative integer");
        wanted.push_back(l[i].get<std::size_t>());
      } else {
        std::size_t c = size_field(l[i], "level", p);
        Level lv;
        if (l[i].contains("cone") && !l[i]["cone"].is_null())
          lv.cone = cone_from_json(l[i]["cone"], p + ".cone");
        else
          lv.reason = string_or(l[i], "reason", p);
        given[c] = lv;
      }
    }
  }

  System s;
  switch (mode) {
    case SystemMode::Min:
    case SystemMode::Max:
      if (!base) fail(path + ".base_cone", "required for mode " + std::string(system_mode_name(mode)));
      s = mode == SystemMode::Min ? min_system(stem, base, {}) : max_system(stem, base, {});
      break;
    case SystemMode::Generated:
      s = generated_system(stem, base_dim, gens, {});
      s.base = base;
      break;
    case SystemMode::Explicit:
      s.stem = stem;
      s.base_dim = base_dim;
      s.base = base;
      s.mode = mode;
      s.generators = gens;
      break;
  }
  for (auto& [c, lv] : given) {
    if (lv.cone && lv.cone->ambient() != s.level_dim(c))
      throw DimensionError(path + ".levels: level " + std::to_string(c) + " cone has ambient " +
                           std::to_string(lv.cone->ambient()) + ", expected " +
                           std::to_string(s.level_dim(c)));
    s.levels[c] = lv;
  }
  for (auto c : wanted) s.level(c);
  return s;
}

// ---- extension certificates ----

Json ext_cert_to_json(const ExtCert& c) {
  Json j{{"kind", ext_kind_name(c.kind)}};
  if (c.phi.rows()) j["phi"] = to_json(c.phi);
  if (!c.multipliers.empty()) j["multipliers"] = to_json(c.multipliers);
  if (!c.witness.empty()) j["witness"] = to_json(c.witness);
  if (!c.reason.empty()) j["reason"] = c.reason;
  return j;
}

ExtCert ext_cert_from_json(const Json& j, const std::string& path) {
  ExtCert c;
  const Json& k = field(j, "kind", path);
  if (!k.is_string()) fail(path + ".kind", "expected a string");
  std::string s = k.get<std::string>();
  bool found = false;
  for (ExtKind e : {ExtKind::Extension, ExtKind::Obstruction, ExtKind::Unknown})
    if (s == ext_kind_name(e)) {
      c.kind = e;
      found = true;
    }
  if (!found) fail(path + ".kind", "unknown certificate kind \"" + s + "\"");
  if (j.contains("phi")) c.phi = qmat_from_json(j["phi"], path + ".phi");
  if (j.contains("multipliers")) c.multipliers = qvec_from_json(j["multipliers"], path + ".multipliers");
  if (j.contains("witness")) c.witness = qvec_from_json(j["witness"], path + ".witness");
  c.reason = string_or(j, "reason", path);
  return c;
}

// ---- generated membership ----

Json generated_to_json(const GeneratedVerdict& v) {
  Json j{{"verdict", outcome_name(v.outcome)}};
  Json terms = Json::array();
  for (const auto& t : v.terms)
    terms.push_back(Json{{"gen", t.gen}, {"morphism", to_json(t.morphism)}, {"coef", to_json(t.coef)}});
  j["terms"] = terms;
  if (v.tol != 0) j["tol"] = v.tol;
  if (!v.functional.empty()) j["functional"] = to_json(v.functional);
  if (!v.oracle.empty()) j["oracle"] = v.oracle;
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

namespace {

Outcome outcome_from(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  std::string s = j.get<std::string>();
  for (Outcome o : {Outcome::Yes, Outcome::No, Outcome::Unknown})
    if (s == outcome_name(o)) return o;
  fail(path, "unknown verdict \"" + s + "\"");
}

}  // namespace

GeneratedVerdict generated_from_json(const Json& j, const std::string& path) {
  GeneratedVerdict v;
  v.outcome = outcome_from(field(j, "verdict", path), path + ".verdict");
  if (j.contains("terms")) {
    const Json& t = expect_array(j["terms"], path + ".terms");
    for (std::size_t i = 0; i < t.size(); ++i) {
      std::string p = at(path + ".terms", i);
      GeneratedTerm term;
      term.gen = size_field(t[i], "gen", p);
      term.morphism = qcmat_from_json(field(t[i], "morphism", p), p + ".morphism");
      term.coef = rational_from_json(field(t[i], "coef", p), p + ".coef");
      v.terms.push_back(std::move(term));
    }
  }
  v.tol = double_or(j, "tol", path, 0);
  if (j.contains("functional")) v.functional = qvec_from_json(j["functional"], path + ".functional");
  v.oracle = string_or(j, "oracle", path);
  v.reason = string_or(j, "reason", path);
  return v;
}

// ---- tft ----

namespace {

Json sizes_json(const std::vector<std::size_t>& v) { return Json(v); }

std::vector<std::size_t> sizes_from(const Json& j, const std::string& path) {
  expect_array(j, path);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer() || j[i].get<long long>() < 0)
      fail(at(path, i), "expected a nonnegative integer");
    out.push_back(j[i].get<std::size_t>());
  }
  return out;
}

}  // namespace

Json assumption_to_json(const AssumptionWitness& w) {
  Json j{{"found", w.found}, {"m", w.m}, {"k", w.k}, {"l", w.l}, {"attempts", w.attempts}};
  if (w.found) {
    j["s"] = to_json(w.s);
    j["t"] = to_json(w.t);
    j["x"] = to_json(w.x);
    j["halfspace"] = w.halfspace;
    j["sigma"] = sizes_json(w.sigma);
    j["value"] = to_json(w.value);
  }
  if (!w.reason.empty()) j["reason"] = w.reason;
  return j;
}

AssumptionWitness assumption_from_json(const Json& j, const std::string& path) {
  AssumptionWitness w;
  const Json& f = field(j, "found", path);
  if (!f.is_boolean()) fail(path + ".found", "expected a boolean");
  w.found = f.get<bool>();
  w.m = size_field(j, "m", path);
  w.k = size_field(j, "k", path);
  w.l = size_field(j, "l", path);
  if (j.contains("attempts")) w.attempts = size_field(j, "attempts", path);
  if (w.found) {
    w.s = qvec_from_json(field(j, "s", path), path + ".s");
    w.t = qvec_from_json(field(j, "t", path), path + ".t");
    w.x = qvec_from_json(field(j, "x", path), path + ".x");
    w.halfspace = size_field(j, "halfspace", path);
    w.sigma = sizes_from(field(j, "sigma", path), path + ".sigma");
    w.value = rational_from_json(field(j, "value", path), path + ".value");
  }
  w.reason = string_or(j, "reason", path);
  return w;
}

}  // namespace conekit
