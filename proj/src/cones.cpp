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

#include "conekit/cones.hpp"

#include <algorithm>
#include <set>

#include "conekit/lp.hpp"

namespace conekit {

const char* cone_kind_name(ConeKind k) {
  switch (k) {
    case ConeKind::PolyV:
      return "poly_v";
    case ConeKind::PolyH:
      return "poly_h";
    case ConeKind::Simplex:
      return "simplex";
    case ConeKind::Lorentz:
      return "lorentz";
    case ConeKind::Psd:
      return "psd";
    case ConeKind::MinTensor:
      return "min_tensor";
    case ConeKind::MaxTensor:
      return "max_tensor";
    case ConeKind::Preimage:
      return "preimage";
  }
  return "?";
}

const char* member_cert_type_name(MemberCert::Type t) {
  using T = MemberCert::Type;
  switch (t) {
    case T::None:
      return "none";
    case T::Combination:
      return "combination";
    case T::Inequalities:
      return "inequalities";
    case T::ExactCheck:
      return "exact_check";
    case T::Separator:
      return "separator";
    case T::Halfspace:
      return "halfspace";
    case T::HermWitness:
      return "herm_witness";
    case T::ProductWitness:
      return "product_witness";
    case T::Decomposition:
      return "decomposition";
    case T::Nested:
      return "nested";
    case T::Factorwise:
      return "factorwise";
    case T::Orthogonal:
      return "orthogonal";
    case T::Pullback:
      return "pullback";
  }
  return "?";
}

// ---- factories ----

namespace {

void check_lengths(const std::vector<QVec>& vs, std::size_t n, const char* what) {
  for (const auto& v : vs)
    if (v.size() != n) throw DimensionError(std::string(what) + ": vector length differs from ambient");
}

}  // namespace

ConePtr Cone::poly_v(std::size_t ambient, std::vector<QVec> generators) {
  check_lengths(generators, ambient, "poly_v");
  auto c = std::shared_ptr<Cone>(new Cone());
  c->kind_ = ConeKind::PolyV;
  c->ambient_ = ambient;
  c->vectors_ = std::move(generators);
  return c;
}

ConePtr Cone::poly_h(std::size_t ambient, std::vector<QVec> halfspaces) {
  check_lengths(halfspaces, ambient, "poly_h");
  auto c = std::shared_ptr<Cone>(new Cone());
  c->kind_ = ConeKind::PolyH;
  c->ambient_ = ambient;
  c->vectors_ = std::move(halfspaces);
  return c;
}

ConePtr Cone::simplex(std::vector<QVec> basis) {
  std::size_t n = basis.size();
  check_lengths(basis, n, "simplex");
  if (rank(basis, n) != n) throw PreconditionError("simplex: basis is not invertible");
  auto c = std::shared_ptr<Cone>(new Cone());
  c->kind_ = ConeKind::Simplex;
  c->ambient_ = n;
  c->vectors_ = std::move(basis);
  return c;
}

ConePtr Cone::orthant(std::size_t n) {
  std::vector<QVec> basis(n, QVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) basis[i][i] = 1;
  return simplex(std::move(basis));
}

ConePtr Cone::lorentz(std::size_t d) {
  auto c = std::shared_ptr<Cone>(new Cone());
  c->kind_ = ConeKind::Lorentz;
  c->ambient_ = d + 1;
  c->d_ = d;
  return c;
}

ConePtr Cone::psd(std::size_t d, bool dual) {
  if (d == 0) throw DimensionError("psd: d must be positive");
  auto c = std::shared_ptr<Cone>(new Cone());
  c->kind_ = ConeKind::Psd;
  c->ambient_ = d * d;
  c->d_ = d;
  c->dual_ = dual;
  return c;
}

ConePtr Cone::min_node(ConePtr left, ConePtr right) {
  auto c = std::shared_ptr<Cone>(new Cone());
  c->kind_ = ConeKind::MinTensor;
  c->ambient_ = left->ambient() * right->ambient();
  c->left_ = std::move(left);
  c->right_ = std::move(right);
  return c;
}

ConePtr Cone::max_node(ConePtr left, ConePtr right) {
  auto c = std::shared_ptr<Cone>(new Cone());
  c->kind_ = ConeKind::MaxTensor;
  c->ambient_ = left->ambient() * right->ambient();
  c->left_ = std::move(left);
  c->right_ = std::move(right);
  return c;
}

ConePtr Cone::preimage(QMat map, ConePtr inner) {
  if (map.rows() != inner->ambient())
    throw DimensionError("preimage: map rows differ from the inner ambient");
  auto c = std::shared_ptr<Cone>(new Cone());
  c->kind_ = ConeKind::Preimage;
  c->ambient_ = map.cols();
  c->map_ = std::move(map);
  c->left_ = std::move(inner);
  return c;
}

// ---- polyhedral conversions ----

namespace {

std::vector<QVec> vform_generators(const VForm& v) {
  std::vector<QVec> g = v.rays;
  for (const auto& l : v.lineality) {
    g.push_back(l);
    g.push_back(vscale(l, Rational(-1)));
  }
  return g;
}

/** Rows of the inverse of the matrix with the basis as columns. */
std::vector<QVec> dual_basis(const std::vector<QVec>& basis) {
  std::size_t n = basis.size();
  return inverse(QMat::from_columns(basis, n)).to_rows();
}

}  // namespace

std::vector<QVec> generators_of(const ConePtr& c, std::size_t cap) {
  switch (c->kind()) {
    case ConeKind::PolyV:
    case ConeKind::Simplex:
      return c->vectors();
    case ConeKind::PolyH: {
      std::lock_guard<std::mutex> lock(c->memo_mu_);
      if (!c->memo_gens_)
        c->memo_gens_ = vform_generators(double_description(c->ambient(), c->vectors(), cap));
      return *c->memo_gens_;
    }
    default:
      throw Unsupported(std::string("no generator form for cone kind ") + cone_kind_name(c->kind()));
  }
}

std::vector<QVec> halfspaces_of(const ConePtr& c, std::size_t cap) {
  switch (c->kind()) {
    case ConeKind::PolyH:
      return c->vectors();
    case ConeKind::Simplex: {
      std::lock_guard<std::mutex> lock(c->memo_mu_);
      if (!c->memo_hs_) c->memo_hs_ = dual_basis(c->vectors());
      return *c->memo_hs_;
    }
    case ConeKind::PolyV: {
      std::lock_guard<std::mutex> lock(c->memo_mu_);
      if (!c->memo_hs_)
        c->memo_hs_ = vform_generators(double_description(c->ambient(), c->vectors(), cap));
      return *c->memo_hs_;
    }
    default:
      throw Unsupported(std::string("no halfspace form for cone kind ") + cone_kind_name(c->kind()));
  }
}

ConePtr to_poly_v(const ConePtr& c, std::size_t cap) {
  if (c->kind() == ConeKind::PolyV) return c;
  return Cone::poly_v(c->ambient(), generators_of(c, cap));
}

ConePtr to_poly_h(const ConePtr& c, std::size_t cap) {
  if (c->kind() == ConeKind::PolyH) return c;
  return Cone::poly_h(c->ambient(), halfspaces_of(c, cap));
}

// ---- duality ----

ConePtr dual(const ConePtr& c) {
  switch (c->kind()) {
    case ConeKind::PolyV:
      return Cone::poly_h(c->ambient(), c->vectors());
    case ConeKind::PolyH:
      return Cone::poly_v(c->ambient(), c->vectors());
    case ConeKind::Simplex:
      return Cone::simplex(dual_basis(c->vectors()));
    case ConeKind::Lorentz:
      return c;
    case ConeKind::Psd:
      return Cone::psd(c->d(), !c->dual_flag());
    case ConeKind::MinTensor:
      return Cone::max_node(dual(c->left()), dual(c->right()));
    case ConeKind::MaxTensor:
      return Cone::min_node(dual(c->left()), dual(c->right()));
    case ConeKind::Preimage: {
      const QMat& t = c->map();
      if (!t.square()) throw Unsupported("dual of a preimage under a non-square map");
      return Cone::preimage(transpose(inverse(t)), dual(c->inner()));
    }
  }
  throw Error(ErrorCode::Internal, "dual: unknown kind");
}

ConePtr dual_explicit(const ConePtr& c, std::size_t cap) {
  auto d = dual(c);
  if (d->is_polyhedral()) return to_poly_v(d, cap);
  return d;
}

// ---- tensor products ----

namespace {

/** True when c is the ray ℝ₊ in ℝ¹. */
bool is_unit_ray(const ConePtr& c) {
  if (c->ambient() != 1 || !c->is_polyhedral()) return false;
  bool pos = false;
  for (const auto& g : generators_of(c)) {
    if (sgn(g[0]) < 0) return false;
    if (sgn(g[0]) > 0) pos = true;
  }
  return pos;
}

}  // namespace

ConePtr min_tensor(const ConePtr& c, const ConePtr& d, std::size_t cap) {
  if (is_unit_ray(c)) return d;
  if (is_unit_ray(d)) return c;
  if (c->is_polyhedral() && d->is_polyhedral()) {
    auto gc = generators_of(c, cap), gd = generators_of(d, cap);
    std::vector<QVec> g;
    g.reserve(gc.size() * gd.size());
    for (const auto& a : gc)
      for (const auto& b : gd) g.push_back(kron(a, b));
    return Cone::poly_v(c->ambient() * d->ambient(), std::move(g));
  }
  return Cone::min_node(c, d);
}

ConePtr max_tensor(const ConePtr& c, const ConePtr& d, std::size_t cap) {
  if (is_unit_ray(c)) return d;
  if (is_unit_ray(d)) return c;
  if (c->is_polyhedral() && d->is_polyhedral()) {
    auto hc = halfspaces_of(c, cap), hd = halfspaces_of(d, cap);
    std::vector<QVec> h;
    h.reserve(hc.size() * hd.size());
    for (const auto& a : hc)
      for (const auto& b : hd) h.push_back(kron(a, b));
    return Cone::poly_h(c->ambient() * d->ambient(), std::move(h));
  }
  return Cone::max_node(c, d);
}

// ---- membership ----

namespace {

/** Exact LP: x ∈ cone(gens)? */
MemberResult polyv_member(std::size_t n, const std::vector<QVec>& gens, const QVec& x) {
  MemberResult r;
  if (gens.empty()) {
    if (is_zero(x)) {
      r.outcome = Outcome::Yes;
      r.cert.type = MemberCert::Type::Combination;
      return r;
    }
    // Any functional negative at x separates from {0}.
    r.outcome = Outcome::No;
    r.cert.type = MemberCert::Type::Separator;
    r.cert.functional = vscale(x, Rational(-1));
    return r;
  }
  // Keep only independent rows of [G | x]; the others follow.
  std::vector<QVec> aug(n, QVec(gens.size() + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < gens.size(); ++k) aug[i][k] = gens[k][i];
    aug[i][gens.size()] = x[i];
  }
  auto rows = independent_rows(aug, gens.size() + 1);
  LpProblem p;
  p.a = QMat(rows.size(), gens.size());
  p.b.resize(rows.size());
  for (std::size_t r2 = 0; r2 < rows.size(); ++r2) {
    for (std::size_t k = 0; k < gens.size(); ++k) p.a(r2, k) = aug[rows[r2]][k];
    p.b[r2] = x[rows[r2]];
  }
  auto lp = lp_solve(p);
  if (lp.status == LpStatus::Feasible) {
    r.outcome = Outcome::Yes;
    r.cert.type = MemberCert::Type::Combination;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      if (sgn(lp.x[k]) == 0) continue;
      r.cert.vectors.push_back(gens[k]);
      r.cert.coefficients.push_back(lp.x[k]);
    }
    return r;
  }
  QVec y(n, 0);
  for (std::size_t r2 = 0; r2 < rows.size(); ++r2) y[rows[r2]] = -lp.farkas[r2];
  r.outcome = Outcome::No;
  r.cert.type = MemberCert::Type::Separator;
  r.cert.functional = primitive(y);
  return r;
}

MemberResult polyh_member(const std::vector<QVec>& hs, const QVec& x) {
  MemberResult r;
  for (std::size_t i = 0; i < hs.size(); ++i)
    if (sgn(dot(hs[i], x)) < 0) {
      r.outcome = Outcome::No;
      r.cert.type = MemberCert::Type::Halfspace;
      r.cert.index = i;
      return r;
    }
  r.outcome = Outcome::Yes;
  r.cert.type = MemberCert::Type::Inequalities;
  return r;
}

MemberResult simplex_member(const ConePtr& c, const QVec& x) {
  const auto& basis = c->vectors();
  auto dualb = halfspaces_of(c);
  MemberResult r;
  QVec alpha(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    alpha[i] = dot(dualb[i], x);
    if (sgn(alpha[i]) < 0) {
      r.outcome = Outcome::No;
      r.cert.type = MemberCert::Type::Separator;
      r.cert.functional = dualb[i];
      return r;
    }
  }
  r.outcome = Outcome::Yes;
  r.cert.type = MemberCert::Type::Combination;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (sgn(alpha[i]) != 0) {
      r.cert.vectors.push_back(basis[i]);
      r.cert.coefficients.push_back(alpha[i]);
    }
  return r;
}

bool lorentz_exact(const QVec& x) {
  if (sgn(x[0]) < 0) return false;
  Rational q = 0;
  for (std::size_t i = 1; i < x.size(); ++i) q += x[i] * x[i];
  return x[0] * x[0] >= q;
}

MemberResult lorentz_member(const QVec& x, const SolveOptions& opt) {
  MemberResult r;
  Rational t = x[0], q = 0;
  for (std::size_t i = 1; i < x.size(); ++i) q += x[i] * x[i];
  if (!opt.exact) {
    double td = t.get_d(), nd = std::sqrt(q.get_d());
    if (td >= nd - opt.tol) {
      r.outcome = Outcome::Yes;
      r.cert.type = MemberCert::Type::ExactCheck;
      r.cert.check = "lorentz_float";
      r.cert.tol = opt.tol;
      return r;
    }
  } else if (lorentz_exact(x)) {
    r.outcome = Outcome::Yes;
    r.cert.type = MemberCert::Type::ExactCheck;
    r.cert.check = "lorentz";
    return r;
  }
  r.outcome = Outcome::No;
  r.cert.type = MemberCert::Type::Separator;
  QVec y(x.size(), 0);
  if (sgn(t) < 0) {
    y[0] = 1;
  } else {
    // y = (s, -x̄) with √q ≤ s < q/t lies in the cone and y·x = s t - q < 0.
    // Smallest-denominator dyadic upper bound for √q that still separates.
    Rational s = 1;
    double root = std::sqrt(q.get_d());
    for (int e = 0; e < 64; ++e) {
      mpz_class den = mpz_class(1) << e;
      Rational c(mpz_class(std::ceil(root * std::ldexp(1.0, e))) + 1, den);
      c.canonicalize();
      if (c * c >= q && (sgn(t) == 0 || c * t < q)) {
        s = c;
        break;
      }
      if (e == 63) {
        s = to_rational(DVec{root})[0];
        if (sgn(s) <= 0) s = 1;
        s = (s + q / s) / 2;
        for (int it = 0; it < 200 && sgn(t) > 0 && s * t >= q; ++it) s = (s + q / s) / 2;
      }
    }
    y[0] = s;
    for (std::size_t i = 1; i < x.size(); ++i) y[i] = -x[i];
  }
  r.cert.functional = y;
  return r;
}

MemberResult psd_member(const ConePtr& c, const QVec& x, const SolveOptions& opt) {
  MemberResult r;
  QCMat h = psd_coords_matrix(x, c->d(), c->dual_flag());
  if (!opt.exact) {
    auto eig = herm_eig(to_double(h));
    if (eig.values.back() >= -opt.tol) {
      r.outcome = Outcome::Yes;
      r.cert.type = MemberCert::Type::ExactCheck;
      r.cert.check = "psd_float";
      r.cert.tol = opt.tol;
      return r;
    }
    QCVec z = to_rational(eig.vectors.back());
    if (sgn(quadratic_form(h, z)) < 0) {
      r.outcome = Outcome::No;
      r.cert.type = MemberCert::Type::HermWitness;
      r.cert.z = std::move(z);
      return r;
    }
  }
  auto chk = exact_herm_psd_check(h);
  if (chk.psd) {
    r.outcome = Outcome::Yes;
    r.cert.type = MemberCert::Type::ExactCheck;
    r.cert.check = "psd";
  } else {
    r.outcome = Outcome::No;
    r.cert.type = MemberCert::Type::HermWitness;
    r.cert.z = std::move(chk.witness);
  }
  return r;
}

}  // namespace

QCMat psd_coords_matrix(const QVec& x, std::size_t d, bool dual) {
  HermSpace hs(d);
  if (!dual) return hs.devectorize(x);
  QVec h = x;
  for (std::size_t k = d; k < h.size(); ++k) h[k] /= 2;
  return hs.devectorize(h);
}

MemberResult member(const ConePtr& c, const QVec& x, const SolveOptions& opt) {
  if (x.size() != c->ambient())
    throw DimensionError("member: vector length " + std::to_string(x.size()) +
                         " differs from ambient " + std::to_string(c->ambient()));
  switch (c->kind()) {
    case ConeKind::PolyV:
      return polyv_member(c->ambient(), c->vectors(), x);
    case ConeKind::PolyH:
      return polyh_member(c->vectors(), x);
    case ConeKind::Simplex:
      return simplex_member(c, x);
    case ConeKind::Lorentz:
      return lorentz_member(x, opt);
    case ConeKind::Psd:
      return psd_member(c, x, opt);
    case ConeKind::MinTensor:
    case ConeKind::MaxTensor:
      return tensor_member(c, x, opt);
    case ConeKind::Preimage: {
      auto in = member(c->inner(), matvec(c->map(), x), opt);
      MemberResult r;
      r.outcome = in.outcome;
      r.reason = in.reason;
      r.oracle = in.oracle;
      r.cert.type = MemberCert::Type::Pullback;
      r.cert.inner.push_back(std::move(in.cert));
      return r;
    }
  }
  throw Error(ErrorCode::Internal, "member: unknown kind");
}

// ---- certificate replay ----

QVec contract(const QVec& x, std::size_t na, std::size_t nb, const QVec& phi, int side) {
  if (x.size() != na * nb) throw DimensionError("contract: length mismatch");
  if (side == 0) {
    if (phi.size() != na) throw DimensionError("contract: functional length mismatch");
    QVec y(nb, 0);
    for (std::size_t i = 0; i < na; ++i) {
      if (sgn(phi[i]) == 0) continue;
      for (std::size_t j = 0; j < nb; ++j) y[j] += phi[i] * x[i * nb + j];
    }
    return y;
  }
  if (phi.size() != nb) throw DimensionError("contract: functional length mismatch");
  QVec y(na, 0);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      if (sgn(phi[j]) != 0) y[i] += x[i * nb + j] * phi[j];
  return y;
}

QVec max_entangled(std::size_t n) {
  QVec m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
  return m;
}

bool functional_in_dual(const ConePtr& c, const QVec& y, std::size_t cap) {
  if (y.size() != c->ambient()) return false;
  switch (c->kind()) {
    case ConeKind::PolyV:
    case ConeKind::Simplex:
      for (const auto& g : c->vectors())
        if (sgn(dot(y, g)) < 0) return false;
      return true;
    case ConeKind::PolyH: {
      for (const auto& h : c->vectors())
        if (primitive(h) == primitive(y)) return true;
      for (const auto& g : generators_of(c, cap))
        if (sgn(dot(y, g)) < 0) return false;
      return true;
    }
    case ConeKind::Lorentz:
      return lorentz_exact(y);
    case ConeKind::Psd:
      return exact_herm_psd_check(psd_coords_matrix(y, c->d(), !c->dual_flag())).psd;
    case ConeKind::MinTensor:
      if (c->left()->is_polyhedral() && c->right()->is_polyhedral()) {
        for (const auto& a : generators_of(c->left(), cap))
          for (const auto& b : generators_of(c->right(), cap))
            if (sgn(dot(y, kron(a, b))) < 0) return false;
        return true;
      }
      [[fallthrough]];
    default: {
      SolveOptions opt;
      opt.dd_cap = cap;
      return member(dual(c), y, opt).outcome == Outcome::Yes;
    }
  }
}

namespace {

double rel_gap(const DCMat& diff, const DCMat& ref) {
  return frobenius_norm(diff) / std::max(1.0, frobenius_norm(ref));
}

/** Matrix of node coordinates for a Psd ⊗ Psd node, undoing dual scalings. */
QCMat node_matrix(const ConePtr& node, const QVec& x) {
  std::size_t a = node->left()->d(), b = node->right()->d();
  QVec y = x;
  bool fl = node->left()->dual_flag(), fr = node->right()->dual_flag();
  if (fl || fr) {
    HermSpace ha(a), hb(b);
    for (std::size_t k = 0; k < a * a; ++k)
      for (std::size_t l = 0; l < b * b; ++l) {
        int g = (fl ? ha.gram(k) : 1) * (fr ? hb.gram(l) : 1);
        if (g != 1) y[k * b * b + l] /= g;
      }
  }
  return product_coords_to_matrix(y, a, b);
}

bool psd_pair(const ConePtr& c) {
  return (c->kind() == ConeKind::MinTensor || c->kind() == ConeKind::MaxTensor) &&
         c->left()->is_psd() && c->right()->is_psd();
}

bool check_exact(const ConePtr& c, const QVec& x, const MemberCert& cert) {
  const std::string& k = cert.check;
  if (k == "psd" && c->is_psd())
    return exact_herm_psd_check(psd_coords_matrix(x, c->d(), c->dual_flag())).psd;
  if (k == "psd_float" && c->is_psd())
    return herm_min_eigenvalue(to_double(psd_coords_matrix(x, c->d(), c->dual_flag()))) >=
           -cert.tol;
  if (k == "lorentz" && c->kind() == ConeKind::Lorentz) return lorentz_exact(x);
  if (k == "lorentz_float" && c->kind() == ConeKind::Lorentz) {
    double q = 0;
    for (std::size_t i = 1; i < x.size(); ++i) q += x[i].get_d() * x[i].get_d();
    return x[0].get_d() >= std::sqrt(q) - cert.tol;
  }
  if (!psd_pair(c)) return false;
  std::size_t a = c->left()->d(), b = c->right()->d();
  QCMat m = node_matrix(c, x);
  if (k == "psd_block" && c->kind() == ConeKind::MaxTensor) return exact_herm_psd_check(m).psd;
  if (k == "pt_psd" && c->kind() == ConeKind::MaxTensor)
    return exact_herm_psd_check(partial_transpose(m, a, b)).psd;
  if (k == "ppt_small_dimension" && c->kind() == ConeKind::MinTensor) {
    bool small = (a == 2 && b == 2) || (a == 2 && b == 3) || (a == 3 && b == 2) || a == 1 ||
                 b == 1;
    return small && exact_herm_psd_check(m).psd &&
           exact_herm_psd_check(partial_transpose(m, a, b)).psd;
  }
  return false;
}

}  // namespace

bool check_member_cert(const ConePtr& c, const QVec& x, Outcome claimed, const MemberCert& cert,
                       std::size_t cap) {
  using T = MemberCert::Type;
  if (x.size() != c->ambient() || claimed == Outcome::Unknown) return false;
  bool yes = claimed == Outcome::Yes;
  switch (cert.type) {
    case T::None:
      return false;
    case T::Combination: {
      if (!yes || cert.vectors.size() != cert.coefficients.size()) return false;
      if (c->kind() != ConeKind::PolyV && c->kind() != ConeKind::Simplex) return false;
      QVec s(x.size(), 0);
      for (std::size_t k = 0; k < cert.vectors.size(); ++k) {
        if (sgn(cert.coefficients[k]) < 0 || cert.vectors[k].size() != x.size()) return false;
        if (std::find(c->vectors().begin(), c->vectors().end(), cert.vectors[k]) ==
            c->vectors().end())
          return false;
        s = axpy(cert.coefficients[k], cert.vectors[k], s);
      }
      return s == x;
    }
    case T::Inequalities:
      if (!yes || c->kind() != ConeKind::PolyH) return false;
      for (const auto& h : c->vectors())
        if (sgn(dot(h, x)) < 0) return false;
      return true;
    case T::ExactCheck:
      return yes && check_exact(c, x, cert);
    case T::Separator:
      return !yes && cert.functional.size() == x.size() && sgn(dot(cert.functional, x)) < 0 &&
             functional_in_dual(c, cert.functional, cap);
    case T::Halfspace:
      return !yes && c->kind() == ConeKind::PolyH && cert.index < c->vectors().size() &&
             sgn(dot(c->vectors()[cert.index], x)) < 0;
    case T::HermWitness: {
      if (yes) return false;
      QCMat h;
      if (c->is_psd()) {
        if (cert.partial_transpose) return false;
        h = psd_coords_matrix(x, c->d(), c->dual_flag());
      } else if (psd_pair(c) && c->kind() == ConeKind::MinTensor) {
        h = node_matrix(c, x);
        if (cert.partial_transpose) h = partial_transpose(h, c->left()->d(), c->right()->d());
      } else {
        return false;
      }
      return cert.z.size() == h.rows() && sgn(quadratic_form(h, cert.z)) < 0;
    }
    case T::ProductWitness: {
      if (yes || !psd_pair(c)) return false;
      if (cert.z.size() != c->left()->d() || cert.w.size() != c->right()->d()) return false;
      return sgn(quadratic_form(node_matrix(c, x), ckron(cert.z, cert.w))) < 0;
    }
    case T::Decomposition: {
      if (!yes || !psd_pair(c) || c->kind() != ConeKind::MinTensor) return false;
      if (cert.left.size() != cert.right.size()) return false;
      std::size_t a = c->left()->d(), b = c->right()->d();
      QCMat m = node_matrix(c, x), s(a * b, a * b);
      for (std::size_t k = 0; k < cert.left.size(); ++k) {
        const auto &p = cert.left[k], &q = cert.right[k];
        if (p.rows() != a || p.cols() != a || q.rows() != b || q.cols() != b) return false;
        if (!exact_herm_psd_check(p).psd || !exact_herm_psd_check(q).psd) return false;
        s = cadd(s, ckron(p, q));
      }
      if (cert.tol == 0) return s.re == m.re && s.im == m.im;
      return rel_gap(to_double(csubtract(s, m)), to_double(m)) <= cert.tol;
    }
    case T::Nested: {
      if (yes || cert.inner.size() != 1) return false;
      if (c->kind() != ConeKind::MinTensor && c->kind() != ConeKind::MaxTensor) return false;
      const ConePtr& f = cert.side == 0 ? c->left() : c->right();
      const ConePtr& o = cert.side == 0 ? c->right() : c->left();
      if (!functional_in_dual(f, cert.functional, cap)) return false;
      QVec y = contract(x, c->left()->ambient(), c->right()->ambient(), cert.functional, cert.side);
      return check_member_cert(o, y, Outcome::No, cert.inner[0], cap);
    }
    case T::Factorwise: {
      if (!yes) return false;
      if (c->kind() != ConeKind::MinTensor && c->kind() != ConeKind::MaxTensor) return false;
      const ConePtr& f = cert.side == 0 ? c->left() : c->right();
      const ConePtr& o = cert.side == 0 ? c->right() : c->left();
      std::size_t na = c->left()->ambient(), nb = c->right()->ambient();
      if (c->kind() == ConeKind::MaxTensor) {
        if (!f->is_polyhedral() || cert.vectors != halfspaces_of(f, cap)) return false;
        if (cert.inner.size() != cert.vectors.size()) return false;
        for (std::size_t i = 0; i < cert.vectors.size(); ++i)
          if (!check_member_cert(o, contract(x, na, nb, cert.vectors[i], cert.side), Outcome::Yes,
                                 cert.inner[i], cap))
            return false;
        return true;
      }
      if (cert.vectors.size() != cert.vectors2.size() || cert.inner.size() != cert.vectors.size())
        return false;
      QVec s(x.size(), 0);
      for (std::size_t k = 0; k < cert.vectors.size(); ++k) {
        const QVec &g = cert.vectors[k], &y = cert.vectors2[k];
        if (g.size() != f->ambient() || y.size() != o->ambient()) return false;
        SolveOptions opt;
        opt.dd_cap = cap;
        if (member(f, g, opt).outcome != Outcome::Yes) return false;
        if (!check_member_cert(o, y, Outcome::Yes, cert.inner[k], cap)) return false;
        QVec t = cert.side == 0 ? kron(g, y) : kron(y, g);
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += t[i];
      }
      if (cert.tol == 0) return s == x;
      double num = 0, den = 0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        double dv = Rational(s[i] - x[i]).get_d();
        num += dv * dv;
        den += x[i].get_d() * x[i].get_d();
      }
      return std::sqrt(num) <= cert.tol * std::max(1.0, std::sqrt(den));
    }
    case T::Orthogonal: {
      if (yes || c->kind() != ConeKind::MinTensor) return false;
      const ConePtr& f = cert.side == 0 ? c->left() : c->right();
      if (!f->is_polyhedral() || cert.functional.size() != f->ambient()) return false;
      for (const auto& g : generators_of(f, cap))
        if (sgn(dot(g, cert.functional)) != 0) return false;
      QVec fu = cert.side == 0 ? kron(cert.functional, cert.functional2)
                               : kron(cert.functional2, cert.functional);
      return fu.size() == x.size() && sgn(dot(fu, x)) > 0;
    }
    case T::Pullback:
      if (c->kind() != ConeKind::Preimage || cert.inner.size() != 1) return false;
      return check_member_cert(c->inner(), matvec(c->map(), x), claimed, cert.inner[0], cap);
  }
  return false;
}

// ---- extreme rays ----

ConePtr extreme_rays(const ConePtr& c) {
  if (c->kind() == ConeKind::Simplex) return c;
  if (!c->is_polyhedral()) throw Unsupported("extreme_rays needs a polyhedral cone");
  std::size_t n = c->ambient();
  std::vector<QVec> gens;
  std::set<QVec> seen;
  for (const auto& g : generators_of(c)) {
    if (is_zero(g)) continue;
    QVec p = primitive(g);
    if (seen.insert(p).second) gens.push_back(g);
  }
  auto others = [&](std::size_t skip, const std::vector<bool>& alive) {
    std::vector<QVec> o;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (j != skip && alive[j]) o.push_back(gens[j]);
    return o;
  };
  // Generators outside the cone of all others are extreme for sure; only the
  // rest need the sequential pass.
  std::vector<bool> alive(gens.size(), true);
  std::vector<char> redundant(gens.size(), 0);
  parallel_for(gens.size(), [&](std::size_t i) {
    redundant[i] = polyv_member(n, others(i, alive), gens[i]).outcome == Outcome::Yes;
  });
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!redundant[i]) continue;
    if (polyv_member(n, others(i, alive), gens[i]).outcome == Outcome::Yes) alive[i] = false;
  }
  std::vector<QVec> kept;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (alive[i]) kept.push_back(gens[i]);
  return Cone::poly_v(n, std::move(kept));
}

// ---- containment ----

namespace {

bool same_shape(const ConePtr& a, const ConePtr& b) {
  if (a->kind() != b->kind() || a->ambient() != b->ambient()) return false;
  switch (a->kind()) {
    case ConeKind::Lorentz:
      return true;
    case ConeKind::Psd:
      return a->dual_flag() == b->dual_flag();
    case ConeKind::MinTensor:
    case ConeKind::MaxTensor:
      return same_shape(a->left(), b->left()) && same_shape(a->right(), b->right());
    case ConeKind::PolyV:
    case ConeKind::PolyH:
    case ConeKind::Simplex:
      return a->vectors() == b->vectors();
    case ConeKind::Preimage:
      return a->map() == b->map() && same_shape(a->inner(), b->inner());
  }
  return false;
}

}  // namespace

ContainResult cone_contains(const ConePtr& outer, const ConePtr& inner, const SolveOptions& opt) {
  if (outer->ambient() != inner->ambient())
    throw DimensionError("cone_contains: ambient dimensions differ");
  ContainResult res;
  if (same_shape(outer, inner)) {
    res.outcome = Outcome::Yes;
    res.reason = "identical cones";
    return res;
  }
  std::vector<QVec> tests;
  ConePtr target = outer;
  if (inner->is_polyhedral()) {
    tests = generators_of(inner, opt.dd_cap);
  } else if (outer->is_polyhedral()) {
    tests = halfspaces_of(outer, opt.dd_cap);
    target = dual(inner);
    res.by_halfspaces = true;
  } else {
    res.reason = "inner cone has no generator form and outer cone has no halfspace form";
    return res;
  }
  res.tested = tests;
  res.results.resize(tests.size());
  parallel_for(tests.size(), [&](std::size_t i) { res.results[i] = member(target, tests[i], opt); });
  res.outcome = Outcome::Yes;
  for (std::size_t i = 0; i < tests.size(); ++i) {
    if (res.results[i].outcome == Outcome::No) {
      res.outcome = Outcome::No;
      if (!res.by_halfspaces) res.witness = tests[i];
      return res;
    }
    if (res.results[i].outcome == Outcome::Unknown) {
      res.outcome = Outcome::Unknown;
      res.reason = res.results[i].reason;
    }
  }
  return res;
}

Outcome cones_equal(const ConePtr& a, const ConePtr& b, const SolveOptions& opt) {
  auto ab = cone_contains(a, b, opt).outcome;
  if (ab == Outcome::No) return Outcome::No;
  auto ba = cone_contains(b, a, opt).outcome;
  if (ba == Outcome::No) return Outcome::No;
  return ab == Outcome::Yes && ba == Outcome::Yes ? Outcome::Yes : Outcome::Unknown;
}

}  // namespace conekit
