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

#include "conekit/systems.hpp"

#include <algorithm>
#include <random>

#include "conekit/fitting.hpp"
#include "conekit/tft.hpp"

namespace conekit {

const char* stem_name(StemKind k) {
  switch (k) {
    case StemKind::Simplex:
      return "simplex";
    case StemKind::Operator:
      return "operator";
    case StemKind::Tft:
      return "tft";
  }
  return "?";
}

const char* system_mode_name(SystemMode m) {
  switch (m) {
    case SystemMode::Min:
      return "min";
    case SystemMode::Max:
      return "max";
    case SystemMode::Generated:
      return "generated";
    case SystemMode::Explicit:
      return "explicit";
  }
  return "?";
}

const char* system_op_name(SystemOp op) {
  switch (op) {
    case SystemOp::Sum:
      return "sum";
    case SystemOp::Intersect:
      return "intersect";
    case SystemOp::DirectSum:
      return "direct_sum";
    case SystemOp::Image:
      return "image";
    case SystemOp::Preimage:
      return "preimage";
  }
  return "?";
}

std::size_t Stem::level_dim(std::size_t c) const {
  switch (kind) {
    case StemKind::Simplex:
      return c;
    case StemKind::Operator:
      return c * c;
    case StemKind::Tft:
      return TftLevel{m, c}.ambient();
  }
  return 0;
}

std::size_t Stem::unit_level() const { return kind == StemKind::Tft ? 0 : 1; }

ConePtr Stem::intrinsic(std::size_t c) const {
  if (c == 0 && kind != StemKind::Tft) throw DimensionError("stem level must be positive");
  switch (kind) {
    case StemKind::Simplex:
      return Cone::orthant(c);
    case StemKind::Operator:
      return c == 1 ? Cone::orthant(1) : Cone::psd(c);
    case StemKind::Tft:
      return c == 0 ? Cone::orthant(1) : a_cone(TftLevel{m, c});
  }
  return nullptr;
}

ConePtr Stem::cointrinsic(std::size_t c) const {
  if (c == 0 && kind != StemKind::Tft) throw DimensionError("stem level must be positive");
  switch (kind) {
    case StemKind::Simplex:
      return Cone::orthant(c);
    case StemKind::Operator:
      return c == 1 ? Cone::orthant(1) : Cone::psd(c);
    case StemKind::Tft:
      return c == 0 ? Cone::orthant(1) : b_cone(TftLevel{m, c});
  }
  return nullptr;
}

namespace {

void check_base(const ConePtr& d) {
  if (!d) throw PreconditionError("system: base cone missing");
}

/** Simplex-stem generators of the level-t cone generated by the elements. */
std::vector<QVec> simplex_atoms(std::size_t base_dim, const std::vector<LevelElement>& gens,
                                std::size_t t,
                                std::vector<std::tuple<std::size_t, std::size_t, std::size_t>>* idx) {
  std::vector<QVec> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::size_t c = gens[i].level;
    if (gens[i].element.size() != base_dim * c)
      throw DimensionError("generator length does not match its level");
    for (std::size_t q = 0; q < c; ++q) {
      QVec col(base_dim);
      for (std::size_t p = 0; p < base_dim; ++p) col[p] = gens[i].element[p * c + q];
      if (is_zero(col)) continue;
      for (std::size_t pp = 0; pp < t; ++pp) {
        QVec v(base_dim * t, 0);
        for (std::size_t p = 0; p < base_dim; ++p) v[p * t + pp] = col[p];
        out.push_back(std::move(v));
        if (idx) idx->emplace_back(i, pp, q);
      }
    }
  }
  return out;
}

}  // namespace

const Level& System::level(std::size_t c) {
  auto it = levels.find(c);
  if (it != levels.end()) return it->second;
  Level lv;
  switch (mode) {
    case SystemMode::Min:
      check_base(base);
      lv.cone = min_tensor(base, stem.cointrinsic(c), cap);
      break;
    case SystemMode::Max:
      check_base(base);
      lv.cone = max_tensor(base, stem.intrinsic(c), cap);
      break;
    case SystemMode::Generated:
      if (stem.kind == StemKind::Simplex)
        lv.cone = Cone::poly_v(level_dim(c), simplex_atoms(base_dim, generators, c, nullptr));
      else
        lv.reason = "level of a generated system; decide membership with generated_membership";
      break;
    case SystemMode::Explicit:
      lv.reason = "level not materialized";
      break;
  }
  return levels.emplace(c, std::move(lv)).first->second;
}

System min_system(const Stem& stem, const ConePtr& d, const std::vector<std::size_t>& levels,
                  std::size_t cap) {
  check_base(d);
  System s;
  s.stem = stem;
  s.base_dim = d->ambient();
  s.base = d;
  s.mode = SystemMode::Min;
  s.cap = cap;
  for (auto c : levels) s.level(c);
  return s;
}

System max_system(const Stem& stem, const ConePtr& d, const std::vector<std::size_t>& levels,
                  std::size_t cap) {
  check_base(d);
  System s;
  s.stem = stem;
  s.base_dim = d->ambient();
  s.base = d;
  s.mode = SystemMode::Max;
  s.cap = cap;
  for (auto c : levels) s.level(c);
  return s;
}

System generated_system(const Stem& stem, std::size_t base_dim,
                        const std::vector<LevelElement>& gens,
                        const std::vector<std::size_t>& levels, std::size_t cap) {
  if (stem.kind == StemKind::Tft) throw Unsupported("generated systems need the simplex or operator stem");
  System s;
  s.stem = stem;
  s.base_dim = base_dim;
  s.mode = SystemMode::Generated;
  s.generators = gens;
  s.cap = cap;
  for (const auto& g : gens)
    if (g.element.size() != s.level_dim(g.level))
      throw DimensionError("generator length does not match its level");
  for (auto c : levels) s.level(c);
  return s;
}

// ---- duality ----

namespace {

QMat permute_block_swap(std::size_t base_dim, std::size_t m, std::size_t k) {
  std::size_t half = 1;
  for (std::size_t i = 0; i < k; ++i) half *= m;
  std::size_t n = half * half;
  QMat p(base_dim * n, base_dim * n);
  for (std::size_t b = 0; b < base_dim; ++b)
    for (std::size_t i = 0; i < half; ++i)
      for (std::size_t j = 0; j < half; ++j) p(b * n + j * half + i, b * n + i * half + j) = 1;
  return p;
}

std::vector<QVec> map_vectors(const QMat& t, const std::vector<QVec>& vs) {
  std::vector<QVec> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(matvec(t, v));
  return out;
}

ConePtr remap_polyhedral(const ConePtr& c, const QMat& gen_map, const QMat& hs_map) {
  switch (c->kind()) {
    case ConeKind::PolyV:
      return Cone::poly_v(c->ambient(), map_vectors(gen_map, c->vectors()));
    case ConeKind::PolyH:
      return Cone::poly_h(c->ambient(), map_vectors(hs_map, c->vectors()));
    case ConeKind::Simplex:
      return Cone::simplex(map_vectors(gen_map, c->vectors()));
    default:
      return nullptr;
  }
}

/**
 * The dual of a level under the dot product lives in the dual coordinates;
 * rewrite it as a cone in the standard coordinates of the same level.
 */
ConePtr identify(const Stem& stem, std::size_t c, std::size_t base_dim, const ConePtr& k) {
  if (stem.kind == StemKind::Simplex) return k;
  if (stem.kind == StemKind::Operator) {
    if (c == 1) return k;
    if (k->is_psd() && base_dim == 1) {
      if (k->dual_flag()) return Cone::psd(c, false);
    }
    if ((k->kind() == ConeKind::MinTensor || k->kind() == ConeKind::MaxTensor) &&
        k->right()->is_psd() && k->right()->dual_flag() && k->left()->ambient() == base_dim) {
      auto r = Cone::psd(c, false);
      return k->kind() == ConeKind::MinTensor ? Cone::min_node(k->left(), r)
                                              : Cone::max_node(k->left(), r);
    }
    HermSpace hs(c);
    std::size_t n = c * c;
    QMat g(base_dim * n, base_dim * n), gi(base_dim * n, base_dim * n);
    for (std::size_t b = 0; b < base_dim; ++b)
      for (std::size_t q = 0; q < n; ++q) {
        g(b * n + q, b * n + q) = hs.gram(q);
        gi(b * n + q, b * n + q) = Rational(1, hs.gram(q));
      }
    if (auto p = remap_polyhedral(k, gi, g)) return p;
    return Cone::preimage(g, k);
  }
  // TFT: swap the V and V′ blocks.
  if (c == 0) return k;
  QMat p = permute_block_swap(base_dim, stem.m, c);
  if (auto r = remap_polyhedral(k, p, p)) return r;
  if ((k->kind() == ConeKind::MinTensor || k->kind() == ConeKind::MaxTensor) &&
      k->right()->is_polyhedral() && k->left()->ambient() == base_dim) {
    QMat ps = permute_block_swap(1, stem.m, c);
    auto r = remap_polyhedral(k->right(), ps, ps);
    return k->kind() == ConeKind::MinTensor ? Cone::min_node(k->left(), r)
                                            : Cone::max_node(k->left(), r);
  }
  return Cone::preimage(p, k);
}

}  // namespace

System dual_system(const System& g) {
  System d;
  d.stem = g.stem;
  d.base_dim = g.base_dim;
  d.cap = g.cap;
  d.base = g.base ? dual(g.base) : nullptr;
  d.mode = g.mode == SystemMode::Min   ? SystemMode::Max
           : g.mode == SystemMode::Max ? SystemMode::Min
                                       : SystemMode::Explicit;
  for (const auto& [c, lv] : g.levels) {
    Level out;
    if (lv.cone)
      out.cone = identify(g.stem, c, g.base_dim, dual(lv.cone));
    else
      out.reason = lv.reason.empty() ? "unknown level" : lv.reason;
    d.levels.emplace(c, std::move(out));
  }
  return d;
}

// ---- operations ----

QMat lift_base_map(const QMat& psi, std::size_t level_dim) {
  return kron(psi, QMat::identity(level_dim));
}

System system_op(SystemOp op, const System& g, const System* h, const QMat* psi) {
  bool binary = op == SystemOp::Sum || op == SystemOp::Intersect || op == SystemOp::DirectSum;
  if (binary && !h) throw PreconditionError(std::string(system_op_name(op)) + " needs two systems");
  if (!binary && !psi) throw PreconditionError(std::string(system_op_name(op)) + " needs a base map");
  if (h && (h->stem.kind != g.stem.kind || h->stem.m != g.stem.m))
    throw PreconditionError("system operation on different stems");
  if ((op == SystemOp::Sum || op == SystemOp::Intersect) && h->base_dim != g.base_dim)
    throw DimensionError("system operation on different base dimensions");
  System out;
  out.stem = g.stem;
  out.cap = g.cap;
  out.mode = SystemMode::Explicit;
  out.base_dim = g.base_dim;
  if (op == SystemOp::DirectSum) out.base_dim = g.base_dim + h->base_dim;
  if (op == SystemOp::Image) {
    if (psi->cols() != g.base_dim) throw DimensionError("image: map columns differ from base dimension");
    out.base_dim = psi->rows();
  }
  if (op == SystemOp::Preimage) {
    if (psi->rows() != g.base_dim) throw DimensionError("preimage: map rows differ from base dimension");
    out.base_dim = psi->cols();
  }
  for (const auto& [c, lv] : g.levels) {
    Level res;
    const Level* other = nullptr;
    if (binary) {
      auto it = h->levels.find(c);
      if (it == h->levels.end()) continue;
      other = &it->second;
    }
    if (!lv.cone || (other && !other->cone)) {
      res.reason = "operand level unknown";
      out.levels.emplace(c, std::move(res));
      continue;
    }
    const ConePtr& a = lv.cone;
    std::size_t ld = g.stem.level_dim(c);
    try {
      switch (op) {
        case SystemOp::Sum:
          if (a->is_polyhedral() && other->cone->is_polyhedral()) {
            auto ga = generators_of(a, g.cap), gb = generators_of(other->cone, g.cap);
            ga.insert(ga.end(), gb.begin(), gb.end());
            res.cone = extreme_rays(Cone::poly_v(a->ambient(), ga));
          } else if (cones_equal(a, other->cone) == Outcome::Yes) {
            res.cone = a;
          } else {
            res.reason = "sum of non-polyhedral levels is not represented";
          }
          break;
        case SystemOp::Intersect:
          if (a->is_polyhedral() && other->cone->is_polyhedral()) {
            auto ha = halfspaces_of(a, g.cap), hb = halfspaces_of(other->cone, g.cap);
            ha.insert(ha.end(), hb.begin(), hb.end());
            res.cone = Cone::poly_h(a->ambient(), ha);
          } else if (cones_equal(a, other->cone) == Outcome::Yes) {
            res.cone = a;
          } else {
            res.reason = "intersection of non-polyhedral levels is not represented";
          }
          break;
        case SystemOp::DirectSum:
          if (a->is_polyhedral() && other->cone->is_polyhedral()) {
            std::size_t na = a->ambient(), nb = other->cone->ambient();
            std::vector<QVec> gens;
            for (const auto& v : generators_of(a, g.cap)) {
              QVec w(na + nb, 0);
              std::copy(v.begin(), v.end(), w.begin());
              gens.push_back(std::move(w));
            }
            for (const auto& v : generators_of(other->cone, g.cap)) {
              QVec w(na + nb, 0);
              std::copy(v.begin(), v.end(), w.begin() + static_cast<std::ptrdiff_t>(na));
              gens.push_back(std::move(w));
            }
            res.cone = Cone::poly_v(na + nb, std::move(gens));
          } else {
            res.reason = "direct sum of non-polyhedral levels is not represented";
          }
          break;
        case SystemOp::Image:
          if (a->is_polyhedral()) {
            QMat t = lift_base_map(*psi, ld);
            std::vector<QVec> gens;
            for (const auto& v : generators_of(a, g.cap)) {
              QVec w = matvec(t, v);
              if (!is_zero(w)) gens.push_back(std::move(w));
            }
            res.cone = Cone::poly_v(t.rows(), std::move(gens));
          } else {
            res.reason = "image of a non-polyhedral level is not represented";
          }
          break;
        case SystemOp::Preimage: {
          QMat t = lift_base_map(*psi, ld);
          if (a->is_polyhedral()) {
            QMat tt = transpose(t);
            res.cone = Cone::poly_h(t.cols(), map_vectors(tt, halfspaces_of(a, g.cap)));
          } else {
            res.cone = Cone::preimage(t, a);
          }
          break;
        }
      }
    } catch (const CapExceeded& e) {
      res.cone = nullptr;
      res.reason = e.what();
    }
    out.levels.emplace(c, std::move(res));
  }
  return out;
}

// ---- generated membership ----

namespace {

template <typename T>
std::vector<T> apply_compression(std::size_t base_dim, std::size_t s, std::size_t t,
                                 const CMatrix<T>& m, const std::vector<T>& a) {
  if (m.rows() != s || m.cols() != t) throw DimensionError("compression has the wrong shape");
  HermSpace hs(s), ht(t);
  std::vector<T> out(base_dim * t * t, T(0));
  CMatrix<T> madj = adjoint(m);
  for (std::size_t p = 0; p < base_dim; ++p) {
    std::vector<T> ap(a.begin() + static_cast<std::ptrdiff_t>(p * s * s),
                      a.begin() + static_cast<std::ptrdiff_t>((p + 1) * s * s));
    auto img = ht.vectorize(cmultiply(cmultiply(madj, hs.devectorize(ap)), m));
    std::copy(img.begin(), img.end(), out.begin() + static_cast<std::ptrdiff_t>(p * t * t));
  }
  return out;
}

/** Σ_p A_p ⊗ F_pᵀ for a generator a at level s and a functional φ at level t. */
template <typename T>
CMatrix<T> side_matrix(std::size_t base_dim, std::size_t s, std::size_t t, const std::vector<T>& a,
                       const std::vector<T>& phi) {
  HermSpace hs(s), ht(t);
  CMatrix<T> k(s * t, s * t);
  for (std::size_t p = 0; p < base_dim; ++p) {
    std::vector<T> ap(a.begin() + static_cast<std::ptrdiff_t>(p * s * s),
                      a.begin() + static_cast<std::ptrdiff_t>((p + 1) * s * s));
    std::vector<T> fp(phi.begin() + static_cast<std::ptrdiff_t>(p * t * t),
                      phi.begin() + static_cast<std::ptrdiff_t>((p + 1) * t * t));
    for (std::size_t q = t; q < t * t; ++q) fp[q] /= T(2);
    k = cadd(k, ckron(hs.devectorize(ap), ctranspose(ht.devectorize(fp))));
  }
  return k;
}

DVec normalized(DVec v, double& nrm) {
  nrm = norm2(v);
  if (nrm > 0)
    for (auto& x : v) x /= nrm;
  return v;
}

}  // namespace

QVec apply_morphism(const Stem& stem, std::size_t base_dim, std::size_t from, std::size_t to,
                    const QCMat& morphism, const QVec& a) {
  if (a.size() != base_dim * stem.level_dim(from))
    throw DimensionError("apply_morphism: element length does not match its level");
  switch (stem.kind) {
    case StemKind::Simplex: {
      if (morphism.rows() != to || morphism.cols() != from)
        throw DimensionError("simplex morphism has the wrong shape");
      QVec out(base_dim * to, 0);
      for (std::size_t p = 0; p < base_dim; ++p)
        for (std::size_t i = 0; i < to; ++i)
          for (std::size_t j = 0; j < from; ++j)
            out[p * to + i] += morphism.re(i, j) * a[p * from + j];
      return out;
    }
    case StemKind::Operator:
      return apply_compression(base_dim, from, to, morphism, a);
    case StemKind::Tft:
      break;
  }
  throw Unsupported("apply_morphism: TFT morphisms are pairing maps, not sampled");
}

bool operator_functional_nonneg(std::size_t base_dim, const LevelElement& gen, std::size_t t,
                                const QVec& phi) {
  std::size_t s = gen.level;
  if (gen.element.size() != base_dim * s * s || phi.size() != base_dim * t * t) return false;
  return exact_herm_psd_check(side_matrix(base_dim, s, t, gen.element, phi)).psd;
}

namespace {

GeneratedVerdict simplex_generated(std::size_t base_dim, const std::vector<LevelElement>& gens,
                                   std::size_t t, const QVec& x) {
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> idx;
  auto atoms = simplex_atoms(base_dim, gens, t, &idx);
  auto r = member(Cone::poly_v(base_dim * t, atoms), x);
  GeneratedVerdict v;
  v.oracle = "matrix_unit_lp";
  if (r.outcome == Outcome::No) {
    v.outcome = Outcome::No;
    v.functional = r.cert.functional;
    return v;
  }
  v.outcome = Outcome::Yes;
  std::vector<bool> used(atoms.size(), false);
  for (std::size_t k = 0; k < r.cert.vectors.size(); ++k) {
    std::size_t a = 0;
    while (a < atoms.size() && (used[a] || atoms[a] != r.cert.vectors[k])) ++a;
    used[a] = true;
    auto [i, p, q] = idx[a];
    QCMat e(t, gens[i].level);
    e.re(p, q) = 1;
    v.terms.push_back({i, std::move(e), r.cert.coefficients[k]});
  }
  return v;
}

QCMat random_compression(std::size_t s, std::size_t t, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> u(-1, 1);
  QCMat m(s, t);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < t; ++j) {
      m.re(i, j) = u(rng);
      m.im(i, j) = u(rng);
    }
  return m;
}

/** Functional of the quadratic form z*Yz on Her_b ⊗ Her_t coordinates. */
QVec eigen_functional(std::size_t b, std::size_t t, const QCVec& z) {
  std::size_t n = b * b * t * t;
  QVec phi(n);
  for (std::size_t k = 0; k < n; ++k) {
    QVec e(n, 0);
    e[k] = 1;
    phi[k] = quadratic_form(product_coords_to_matrix(e, b, t), z);
  }
  return phi;
}

struct Piece {
  std::size_t gen;
  DCMat m;
};

DVec piece_sum(std::size_t base_dim, std::size_t t, const std::vector<DVec>& gd,
               const std::vector<LevelElement>& gens, const std::vector<Piece>& ps, std::size_t n) {
  DVec sum(n, 0);
  for (const auto& p : ps) {
    auto a = apply_compression(base_dim, gens[p.gen].level, t, p.m, gd[p.gen]);
    for (std::size_t i = 0; i < n; ++i) sum[i] += a[i];
  }
  return sum;
}

/**
 * Levenberg-Marquardt on Σ_k M_k* a_k M_k = x over the compressions M_k.
 * The sum is quadratic in the entries, so Jacobian columns are exact
 * polarization differences. Returns the final residual norm.
 */
double polish_pieces(std::size_t base_dim, std::size_t t, const std::vector<DVec>& gd,
                     const std::vector<LevelElement>& gens, std::vector<Piece>& ps, const DVec& x,
                     double goal, int iters) {
  std::size_t n = x.size();
  auto residual = [&](const std::vector<Piece>& q) {
    DVec r = x, s = piece_sum(base_dim, t, gd, gens, q, n);
    for (std::size_t i = 0; i < n; ++i) r[i] -= s[i];
    return r;
  };
  std::size_t np = 0;
  for (const auto& p : ps) np += 2 * p.m.rows() * p.m.cols();
  if (np == 0 || np > 600) return norm2(residual(ps));
  DVec r = residual(ps);
  double cur = norm2(r), lambda = 1e-3;
  for (int it = 0; it < iters && cur > goal; ++it) {
    DMat j(n + np, np);
    std::size_t col = 0;
    for (const auto& p : ps) {
      std::size_t s = p.m.rows();
      auto base = apply_compression(base_dim, s, t, p.m, gd[p.gen]);
      for (int part = 0; part < 2; ++part)
        for (std::size_t a = 0; a < s; ++a)
          for (std::size_t b = 0; b < t; ++b, ++col) {
            DCMat e(s, t), me = p.m;
            (part ? e.im(a, b) : e.re(a, b)) = 1;
            (part ? me.im(a, b) : me.re(a, b)) += 1;
            auto up = apply_compression(base_dim, s, t, me, gd[p.gen]);
            auto sq = apply_compression(base_dim, s, t, e, gd[p.gen]);
            for (std::size_t i = 0; i < n; ++i) j(i, col) = up[i] - base[i] - sq[i];
          }
    }
    bool improved = false;
    for (int tries = 0; tries < 12 && !improved; ++tries) {
      double damp = std::sqrt(lambda);
      for (std::size_t c = 0; c < np; ++c) {
        for (std::size_t c2 = 0; c2 < np; ++c2) j(n + c2, c) = 0;
        j(n + c, c) = damp;
      }
      DVec rhs(n + np, 0);
      std::copy(r.begin(), r.end(), rhs.begin());
      DVec step = least_squares(j, rhs);
      std::vector<Piece> trial = ps;
      std::size_t k = 0;
      for (auto& p : trial)
        for (int part = 0; part < 2; ++part)
          for (std::size_t a = 0; a < p.m.rows(); ++a)
            for (std::size_t b = 0; b < t; ++b, ++k) (part ? p.m.im(a, b) : p.m.re(a, b)) += step[k];
      DVec tr = residual(trial);
      double val = norm2(tr);
      if (val < cur) {
        ps = std::move(trial);
        r = std::move(tr);
        cur = val;
        lambda = std::max(lambda / 4, 1e-15);
        improved = true;
      } else {
        lambda *= 8;
      }
    }
    if (!improved) break;
  }
  return cur;
}

GeneratedVerdict operator_generated(std::size_t base_dim, const std::vector<LevelElement>& gens,
                                    std::size_t t, const QVec& x, const SolveOptions& opt) {
  Stem stem{StemKind::Operator, 0};
  GeneratedVerdict v;
  // Exact pass over identity, matrix units and sampled {-1,0,1} compressions.
  std::vector<GeneratedTerm> cands;
  auto rng = rng_stream(opt.seed, 7);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::size_t s = gens[i].level;
    if (s == t) cands.push_back({i, QCMat::identity(s), 1});
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t b = 0; b < t; ++b) {
        QCMat e(s, t);
        e.re(a, b) = 1;
        cands.push_back({i, std::move(e), 1});
      }
    for (int k = 0; k < opt.samples; ++k) cands.push_back({i, random_compression(s, t, rng), 1});
  }
  std::vector<QVec> atoms;
  for (const auto& c : cands)
    atoms.push_back(apply_morphism(stem, base_dim, gens[c.gen].level, t, c.morphism, gens[c.gen].element));
  auto lp = member(Cone::poly_v(x.size(), atoms), x);
  std::vector<QVec> phis;
  if (lp.outcome == Outcome::Yes) {
    v.outcome = Outcome::Yes;
    v.oracle = "sampled_compression_lp";
    std::vector<bool> used(atoms.size(), false);
    for (std::size_t k = 0; k < lp.cert.vectors.size(); ++k) {
      std::size_t a = 0;
      while (a < atoms.size() && (used[a] || atoms[a] != lp.cert.vectors[k])) ++a;
      used[a] = true;
      v.terms.push_back({cands[a].gen, cands[a].morphism, lp.cert.coefficients[k]});
    }
    return v;
  }
  phis.push_back(lp.cert.functional);

  // Float column generation over all compressions.
  struct Rec {
    DVec atom;
    std::size_t gen;
    DCMat m;
    double norm;
  };
  std::vector<Rec> recs;
  std::vector<DVec> seed_atoms;
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    double nrm;
    DVec d = normalized(to_double(atoms[a]), nrm);
    if (nrm == 0) continue;
    recs.push_back({d, cands[a].gen, to_double(cands[a].morphism), nrm});
    seed_atoms.push_back(d);
  }
  std::vector<DVec> gd;
  for (const auto& g : gens) gd.push_back(to_double(g.element));
  auto oracle = [&](const DVec& res) -> std::optional<DVec> {
    double best = 0;
    std::optional<Rec> pick;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::size_t s = gens[i].level;
      auto eig = herm_eig(side_matrix(base_dim, s, t, gd[i], res));
      const DCVec& z = eig.vectors.front();
      DCMat m(s, t);
      for (std::size_t a = 0; a < s; ++a)
        for (std::size_t b = 0; b < t; ++b) {
          m.re(a, b) = z.re[a * t + b];
          m.im(a, b) = z.im[a * t + b];
        }
      double nrm;
      DVec atom = normalized(apply_compression(base_dim, s, t, m, gd[i]), nrm);
      if (nrm == 0) continue;
      double gain = eig.values.front() / nrm;
      if (gain > best) {
        best = gain;
        pick = Rec{atom, i, m, nrm};
      }
    }
    if (!pick) return std::nullopt;
    recs.push_back(*pick);
    return pick->atom;
  };
  auto fit = conic_fit(to_double(x), seed_atoms, oracle, opt.budget, opt.tol * 1e-2);
  {
    GeneratedVerdict y;
    y.outcome = Outcome::Yes;
    y.oracle = "compression_column_generation";
    y.tol = opt.tol;
    for (std::size_t a = 0; a < fit.atoms.size(); ++a) {
      if (fit.weights[a] <= 0) continue;
      auto it = std::find_if(recs.begin(), recs.end(),
                             [&](const Rec& r) { return r.atom == fit.atoms[a]; });
      if (it == recs.end()) continue;
      y.terms.push_back({it->gen, to_rational(it->m), to_rational(DVec{fit.weights[a] / it->norm})[0]});
    }
    if (!y.terms.empty() && check_generated(stem, base_dim, gens, t, x, y)) return y;
    // Boundary targets stall column generation; refine the compressions locally.
    std::vector<Piece> ps;
    for (const auto& term : y.terms) {
      DCMat m = to_double(term.morphism);
      double w = std::sqrt(term.coef.get_d());
      for (auto* part : {&m.re, &m.im})
        for (std::size_t a = 0; a < m.rows(); ++a)
          for (std::size_t b = 0; b < m.cols(); ++b) (*part)(a, b) *= w;
      ps.push_back({term.gen, m});
    }
    DVec xd = to_double(x);
    polish_pieces(base_dim, t, gd, gens, ps, xd, opt.tol * 1e-3 * std::max(1.0, norm2(xd)), 100);
    y.terms.clear();
    for (const auto& p : ps) y.terms.push_back({p.gen, to_rational(p.m), 1});
    y.oracle = "compression_column_generation_polished";
    if (!y.terms.empty() && check_generated(stem, base_dim, gens, t, x, y)) return y;
  }
  // Candidate separating functionals, each checked exactly.
  if (!fit.last_residual.empty()) {
    QVec phi = to_rational(fit.last_residual);
    for (auto& p : phi) p = -p;
    phis.push_back(std::move(phi));
  }
  std::size_t b = 0;
  while (b * b < base_dim) ++b;
  if (b * b == base_dim) {
    auto chk = exact_herm_psd_check(product_coords_to_matrix(x, b, t));
    if (!chk.psd) phis.push_back(eigen_functional(b, t, chk.witness));
  }
  for (const auto& phi : phis) {
    if (phi.size() != x.size() || sgn(dot(phi, x)) >= 0) continue;
    bool ok = true;
    for (const auto& g : gens) ok = ok && operator_functional_nonneg(base_dim, g, t, phi);
    if (ok) {
      v.outcome = Outcome::No;
      v.oracle = "separating_functional";
      v.functional = primitive(phi);
      return v;
    }
  }
  v.outcome = Outcome::Unknown;
  v.oracle = "compression_column_generation";
  v.reason = "neither a combination nor a separating functional found within budget";
  return v;
}

}  // namespace

GeneratedVerdict generated_membership(const Stem& stem, std::size_t base_dim,
                                      const std::vector<LevelElement>& gens, std::size_t level,
                                      const QVec& x, const SolveOptions& opt) {
  if (x.size() != base_dim * stem.level_dim(level))
    throw DimensionError("target length does not match its level");
  for (const auto& g : gens)
    if (g.element.size() != base_dim * stem.level_dim(g.level))
      throw DimensionError("generator length does not match its level");
  switch (stem.kind) {
    case StemKind::Simplex:
      return simplex_generated(base_dim, gens, level, x);
    case StemKind::Operator:
      return operator_generated(base_dim, gens, level, x, opt);
    case StemKind::Tft:
      break;
  }
  throw Unsupported("generated_membership needs the simplex or operator stem");
}

bool check_generated(const Stem& stem, std::size_t base_dim, const std::vector<LevelElement>& gens,
                     std::size_t level, const QVec& x, const GeneratedVerdict& v) {
  if (x.size() != base_dim * stem.level_dim(level)) return false;
  if (v.outcome == Outcome::Yes) {
    QVec s(x.size(), 0);
    for (const auto& term : v.terms) {
      if (term.gen >= gens.size() || sgn(term.coef) < 0) return false;
      std::size_t from = gens[term.gen].level;
      if (stem.kind == StemKind::Simplex) {
        if (term.morphism.rows() != level || term.morphism.cols() != from) return false;
        for (const auto& e : term.morphism.re.data())
          if (sgn(e) < 0) return false;
        if (!is_zero(term.morphism.im.data())) return false;
      } else if (term.morphism.rows() != from || term.morphism.cols() != level) {
        return false;
      }
      s = axpy(term.coef, apply_morphism(stem, base_dim, from, level, term.morphism,
                                         gens[term.gen].element), s);
    }
    if (v.tol == 0) return s == x;
    double num = 0, den = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      double d = Rational(s[i] - x[i]).get_d();
      num += d * d;
      den += x[i].get_d() * x[i].get_d();
    }
    return std::sqrt(num) <= v.tol * std::max(1.0, std::sqrt(den));
  }
  if (v.outcome == Outcome::No) {
    if (v.functional.size() != x.size() || sgn(dot(v.functional, x)) >= 0) return false;
    if (stem.kind == StemKind::Simplex) {
      for (const auto& a : simplex_atoms(base_dim, gens, level, nullptr))
        if (sgn(dot(v.functional, a)) < 0) return false;
      return true;
    }
    if (stem.kind != StemKind::Operator) return false;
    for (const auto& g : gens)
      if (!operator_functional_nonneg(base_dim, g, level, v.functional)) return false;
    return true;
  }
  return false;
}

// ---- compatibility ----

CompatibilityReport check_compatibility(System& g, const SolveOptions& opt) {
  CompatibilityReport rep;
  if (g.stem.kind == StemKind::Tft) {
    rep.skipped = g.levels.size() * g.levels.size();
    return rep;
  }
  auto rng = rng_stream(opt.seed, 11);
  std::uniform_int_distribution<int> u01(0, 2);
  std::vector<std::size_t> keys;
  for (const auto& [c, lv] : g.levels)
    if (lv.cone) keys.push_back(c);
  auto elements = [&](const ConePtr& k, std::size_t c) {
    std::vector<QVec> out;
    if (k->is_polyhedral()) {
      for (const auto& v : generators_of(k, g.cap)) {
        out.push_back(v);
        if (out.size() >= 8) break;
      }
      return out;
    }
    if (k->is_psd()) {
      for (int r = 0; r < 4; ++r) {
        auto z = random_compression(c, 1, rng);
        QCVec zv(c);
        for (std::size_t i = 0; i < c; ++i) {
          zv.re[i] = z.re(i, 0);
          zv.im[i] = z.im(i, 0);
        }
        out.push_back(HermSpace(c).vectorize(outer(zv)));
      }
      return out;
    }
    if (k->kind() == ConeKind::MinTensor && k->left()->is_polyhedral() && k->right()->is_psd()) {
      auto lg = generators_of(k->left(), g.cap);
      for (std::size_t i = 0; i < lg.size() && i < 4; ++i) {
        auto z = random_compression(c, 1, rng);
        QCVec zv(c);
        for (std::size_t j = 0; j < c; ++j) {
          zv.re[j] = z.re(j, 0);
          zv.im[j] = z.im(j, 0);
        }
        QVec y = HermSpace(c).vectorize(outer(zv));
        if (k->right()->dual_flag())
          for (std::size_t q = c; q < c * c; ++q) y[q] *= 2;
        out.push_back(kron(lg[i], y));
      }
    }
    return out;
  };
  for (auto c : keys)
    for (auto d : keys) {
      const auto& from = g.levels.at(c);
      const auto& to = g.levels.at(d);
      auto elems = elements(from.cone, c);
      if (elems.empty()) {
        ++rep.skipped;
        continue;
      }
      int nm = std::min(opt.samples, 16);
      for (int k = 0; k < nm; ++k) {
        QCMat phi;
        if (g.stem.kind == StemKind::Simplex) {
          phi = QCMat(d, c);
          for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < c; ++j) phi.re(i, j) = u01(rng);
        } else {
          phi = random_compression(c, d, rng);
        }
        for (const auto& e : elems) {
          QVec y = apply_morphism(g.stem, g.base_dim, c, d, phi, e);
          auto r = member(to.cone, y, opt);
          if (r.outcome == Outcome::Unknown) {
            ++rep.skipped;
            continue;
          }
          ++rep.checked;
          if (r.outcome == Outcome::No)
            rep.failures.push_back("level " + std::to_string(c) + " -> " + std::to_string(d));
        }
      }
    }
  return rep;
}

}  // namespace conekit
