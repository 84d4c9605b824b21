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

#include "conekit/extension.hpp"

#include <cmath>

namespace conekit {

const char* ext_kind_name(ExtKind k) {
  switch (k) {
    case ExtKind::Extension:
      return "extension";
    case ExtKind::Obstruction:
      return "obstruction";
    case ExtKind::Unknown:
      return "unknown";
  }
  return "?";
}

namespace {

void check_shapes(const ExtProblem& p) {
  if (!p.c || !p.d) throw PreconditionError("extension: cones missing");
  if (!p.c->is_polyhedral() || !p.d->is_polyhedral())
    throw Unsupported("extension: cones must be polyhedral");
  std::size_t n = p.c->ambient(), m = p.d->ambient();
  if (p.u.size() != p.psi.size()) throw DimensionError("extension: one prescribed value per basis vector");
  for (const auto& v : p.u)
    if (v.size() != n) throw DimensionError("extension: basis vector length differs from dim V");
  for (const auto& v : p.psi)
    if (v.size() != m) throw DimensionError("extension: prescribed value length differs from dim W");
  if (p.rho.size() != p.sigma.size()) throw DimensionError("extension: group lists differ in length");
  for (std::size_t k = 0; k < p.rho.size(); ++k) {
    if (p.rho[k].rows() != n || p.rho[k].cols() != n) throw DimensionError("extension: rho has the wrong size");
    if (p.sigma[k].rows() != m || p.sigma[k].cols() != m)
      throw DimensionError("extension: sigma has the wrong size");
  }
  if (rank(p.u, n) != p.u.size()) throw PreconditionError("extension: U basis is not independent");
}

/** Rows spanning the orthogonal complement of span(vs) in ℝ^n, as ± pairs. */
std::vector<QVec> complement_equalities(const std::vector<QVec>& vs, std::size_t n) {
  std::vector<QVec> out;
  std::vector<QVec> perp;
  if (vs.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      QVec e(n, 0);
      e[i] = 1;
      perp.push_back(e);
    }
  } else {
    perp = nullspace(QMat::from_rows(vs));
  }
  for (const auto& q : perp) {
    out.push_back(q);
    out.push_back(vscale(q, Rational(-1)));
  }
  return out;
}

QVec obstruction_witness(const ExtProblem& p, const QVec& y, std::size_t cap) {
  std::size_t n = p.c->ambient(), m = p.d->ambient();
  auto gens = generators_of(p.c, cap);
  auto hs = halfspaces_of(p.d, cap);
  QVec tau(n * m, 0);
  std::size_t row = 0;
  for (const auto& g : gens)
    for (const auto& h : hs) {
      const Rational& w = y[row++];
      if (sgn(w) == 0) continue;
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < m; ++r) tau[c * m + r] += w * g[c] * h[r];
    }
  return tau;
}

CriterionReport tensor_criterion(const ExtProblem& p, const ExtCert& cert, std::size_t cap) {
  CriterionReport rep;
  std::size_t n = p.c->ambient(), m = p.d->ambient();
  try {
    auto dd = dual(p.d);
    auto k = min_tensor(p.c, dd, cap);
    std::vector<QVec> span;
    for (const auto& u : p.u)
      for (std::size_t r = 0; r < m; ++r) {
        QVec e(m, 0);
        e[r] = 1;
        span.push_back(kron(u, e));
      }
    auto hs = halfspaces_of(k, cap);
    auto eq = complement_equalities(span, n * m);
    hs.insert(hs.end(), eq.begin(), eq.end());
    auto gens = generators_of(Cone::poly_h(n * m, hs), cap);
    auto target = min_tensor(p.d, dd, cap);
    QMat basis = QMat::from_columns(span, n * m);
    rep.evaluated = true;
    rep.holds = true;
    for (const auto& tau : gens) {
      QVec beta;
      if (!solve(basis, tau, beta)) throw Error(ErrorCode::Internal, "criterion: generator outside U⊗W′");
      QVec img(m * m, 0);
      for (std::size_t j = 0; j < p.u.size(); ++j)
        for (std::size_t r = 0; r < m; ++r) {
          const Rational& b = beta[j * m + r];
          if (sgn(b) == 0) continue;
          for (std::size_t w = 0; w < m; ++w) img[w * m + r] += b * p.psi[j][w];
        }
      ++rep.tested;
      if (member(target, img).outcome != Outcome::Yes) {
        rep.holds = false;
        rep.violation = tau;
        break;
      }
    }
    bool ext = cert.kind == ExtKind::Extension;
    rep.reason = rep.holds == ext ? "agrees with the LP" : "disagrees with the LP";
  } catch (const CapExceeded& e) {
    rep.evaluated = false;
    rep.reason = e.what();
  }
  return rep;
}

ExtCert solve_extension(const ExtProblem& p, std::size_t cap) {
  ExtCert cert;
  auto lp = extension_lp(p, cap);
  auto sol = lp.solve();
  std::size_t n = p.c->ambient(), m = p.d->ambient();
  if (sol.status == LpStatus::Feasible) {
    cert.kind = ExtKind::Extension;
    cert.phi = QMat(m, n);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < n; ++c) cert.phi(r, c) = sol.values[r * n + c];
  } else {
    cert.kind = ExtKind::Obstruction;
    cert.multipliers = sol.multipliers;
    cert.witness = obstruction_witness(p, sol.multipliers, cap);
    cert.reason = "no positive map restricts to the prescribed values";
  }
  return cert;
}

std::vector<QVec> invariant_generators(const std::vector<QVec>& halfspaces,
                                       const std::vector<QVec>& fixed, std::size_t n,
                                       std::size_t cap) {
  auto hs = halfspaces;
  auto eq = complement_equalities(fixed, n);
  hs.insert(hs.end(), eq.begin(), eq.end());
  return generators_of(Cone::poly_h(n, hs), cap);
}

}  // namespace

LpBuilder extension_lp(const ExtProblem& p, std::size_t cap) {
  check_shapes(p);
  std::size_t n = p.c->ambient(), m = p.d->ambient();
  auto gens = generators_of(p.c, cap);
  auto hs = halfspaces_of(p.d, cap);
  LpBuilder lp;
  lp.add_variables(m * n, true);  // Φ_{rc} at r·n + c
  for (const auto& g : gens)
    for (const auto& h : hs) {
      LpBuilder::Terms t;
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c)
          if (sgn(h[r]) != 0 && sgn(g[c]) != 0) t.emplace_back(r * n + c, h[r] * g[c]);
      lp.add_row(std::move(t), LpBuilder::Sense::Ge, 0);
    }
  for (std::size_t j = 0; j < p.u.size(); ++j)
    for (std::size_t r = 0; r < m; ++r) {
      LpBuilder::Terms t;
      for (std::size_t c = 0; c < n; ++c)
        if (sgn(p.u[j][c]) != 0) t.emplace_back(r * n + c, p.u[j][c]);
      lp.add_row(std::move(t), LpBuilder::Sense::Eq, p.psi[j][r]);
    }
  for (std::size_t k = 0; k < p.rho.size(); ++k)
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        // (Φρ − σΦ)_{rc} = 0
        std::vector<Rational> coef(m * n, 0);
        for (std::size_t q = 0; q < n; ++q) coef[r * n + q] += p.rho[k](q, c);
        for (std::size_t q = 0; q < m; ++q) coef[q * n + c] -= p.sigma[k](r, q);
        LpBuilder::Terms t;
        for (std::size_t v = 0; v < coef.size(); ++v)
          if (sgn(coef[v]) != 0) t.emplace_back(v, coef[v]);
        if (!t.empty()) lp.add_row(std::move(t), LpBuilder::Sense::Eq, 0);
      }
  return lp;
}

ExtHypotheses check_hypotheses(const ExtProblem& p, std::size_t cap) {
  check_shapes(p);
  ExtHypotheses h;
  std::size_t n = p.c->ambient(), m = p.d->ambient();
  auto hd = halfspaces_of(p.d, cap);
  h.d_sharp = rank(hd, m) == m;
  auto hc = halfspaces_of(p.c, cap);
  if (hc.empty()) {
    h.meets_interior = true;
    h.interior_point = p.u.empty() ? QVec(n, 0) : p.u.front();
    return h;
  }
  if (p.u.empty()) return h;
  LpBuilder lp;
  lp.add_variables(p.u.size(), true);
  for (const auto& f : hc) {
    LpBuilder::Terms t;
    for (std::size_t j = 0; j < p.u.size(); ++j) {
      Rational v = dot(f, p.u[j]);
      if (sgn(v) != 0) t.emplace_back(j, v);
    }
    lp.add_row(std::move(t), LpBuilder::Sense::Ge, 1);
  }
  auto sol = lp.solve();
  if (sol.status == LpStatus::Feasible) {
    h.meets_interior = true;
    h.interior_point = QVec(n, 0);
    for (std::size_t j = 0; j < p.u.size(); ++j)
      h.interior_point = axpy(sol.values[j], p.u[j], h.interior_point);
  }
  return h;
}

ExtResult riesz_extend(const ConePtr& c, const std::vector<QVec>& u, const QVec& psi,
                       std::size_t cap) {
  if (!c || !c->is_polyhedral()) throw Unsupported("riesz_extend: cone must be polyhedral");
  if (psi.size() != u.size()) throw DimensionError("riesz_extend: one value per basis vector");
  ExtProblem p;
  p.c = c;
  p.d = Cone::orthant(1);
  p.u = u;
  for (const auto& v : psi) p.psi.push_back(QVec{v});
  ExtResult out;
  out.hypotheses = check_hypotheses(p, cap);
  out.cert = solve_extension(p, cap);
  out.criterion.reason = "scalar problem";
  return out;
}

ExtResult riesz_extend_vector(const ExtProblem& p, std::size_t cap) {
  if (!p.rho.empty()) throw PreconditionError("riesz_extend_vector: use invariant_extend for groups");
  ExtResult out;
  out.hypotheses = check_hypotheses(p, cap);
  if (!out.hypotheses.d_sharp) throw PreconditionError("riesz_extend_vector: D is not sharp");
  if (!out.hypotheses.meets_interior)
    throw PreconditionError("riesz_extend_vector: U misses the interior of C");
  out.cert = solve_extension(p, cap);
  out.criterion = tensor_criterion(p, out.cert, cap);
  return out;
}

void validate_group(const std::vector<QMat>& rho, const ConePtr& c, std::size_t cap) {
  if (rho.empty()) throw PreconditionError("group: empty element list");
  std::size_t n = rho.front().rows();
  QMat id = QMat::identity(n);
  auto index_of = [&](const QMat& g) {
    for (std::size_t k = 0; k < rho.size(); ++k)
      if (rho[k] == g) return static_cast<long>(k);
    return -1L;
  };
  if (index_of(id) < 0) throw PreconditionError("group: identity missing");
  for (const auto& a : rho) {
    bool inv = false;
    for (const auto& b : rho) {
      if (index_of(multiply(a, b)) < 0) throw PreconditionError("group closure violation");
      inv = inv || multiply(a, b) == id;
    }
    if (!inv) throw PreconditionError("group: inverse missing");
  }
  auto gens = generators_of(c, cap);
  for (const auto& g : rho)
    for (const auto& v : gens)
      if (member(c, matvec(g, v)).outcome != Outcome::Yes)
        throw PreconditionError("group: an element is not positive on the cone");
}

ExtResult invariant_extend(const ExtProblem& p, std::size_t cap) {
  check_shapes(p);
  ExtProblem q = p;
  if (q.rho.empty()) {
    q.rho.push_back(QMat::identity(p.c->ambient()));
    q.sigma.push_back(QMat::identity(p.d->ambient()));
  }
  validate_group(q.rho, q.c, cap);
  validate_group(q.sigma, q.d, cap);
  for (std::size_t a = 0; a < q.rho.size(); ++a)
    for (std::size_t b = 0; b < q.rho.size(); ++b) {
      QMat ab = multiply(q.rho[a], q.rho[b]);
      for (std::size_t c = 0; c < q.rho.size(); ++c)
        if (q.rho[c] == ab && multiply(q.sigma[a], q.sigma[b]) != q.sigma[c])
          throw PreconditionError("group closure violation: representations disagree");
    }
  ExtResult out;
  out.hypotheses = check_hypotheses(q, cap);
  out.cert = solve_extension(q, cap);
  out.criterion.reason = "not evaluated for group problems";

  std::size_t n = q.c->ambient();
  QMat avg(n, n);
  for (const auto& g : q.rho) avg = add(avg, g);
  avg = scale(avg, Rational(1, static_cast<long>(q.rho.size())));
  QMat avg_t = transpose(avg);
  QMat id = QMat::identity(n);
  out.fix_basis = nullspace(subtract(avg, id));
  auto fix_dual = nullspace(subtract(avg_t, id));
  out.b_rho = Cone::poly_v(n, invariant_generators(halfspaces_of(q.c, cap), out.fix_basis, n, cap));
  out.a_rho = Cone::poly_h(n, invariant_generators(generators_of(q.c, cap), fix_dual, n, cap));
  return out;
}

bool check_ext_cert(const ExtProblem& p, const ExtCert& cert, std::size_t cap) {
  check_shapes(p);
  std::size_t n = p.c->ambient(), m = p.d->ambient();
  if (cert.kind == ExtKind::Extension) {
    if (cert.phi.rows() != m || cert.phi.cols() != n) return false;
    for (std::size_t j = 0; j < p.u.size(); ++j)
      if (matvec(cert.phi, p.u[j]) != p.psi[j]) return false;
    for (const auto& g : generators_of(p.c, cap))
      if (member(p.d, matvec(cert.phi, g)).outcome != Outcome::Yes) return false;
    for (std::size_t k = 0; k < p.rho.size(); ++k)
      if (multiply(cert.phi, p.rho[k]) != multiply(p.sigma[k], cert.phi)) return false;
    return true;
  }
  if (cert.kind == ExtKind::Obstruction) {
    auto lp = extension_lp(p, cap);
    if (cert.multipliers.size() != lp.num_rows() || !lp.check_multipliers(cert.multipliers)) return false;
    return cert.witness.empty() || cert.witness == obstruction_witness(p, cert.multipliers, cap);
  }
  return false;
}

// ---- operator extension ----

namespace {

struct AffineProjector {
  DMat l;     // constraint map
  DVec b;
  DMat pinv;  // Lᵀ (L Lᵀ)⁺

  DVec project(const DVec& z) const {
    DVec r = matvec(l, z);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    DVec c = matvec(pinv, r);
    DVec out = z;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= c[i];
    return out;
  }
};

/** Φ_F(A)_ab = Σ_ij A_ij F[(a,i),(b,j)]. */
DCMat apply_choi(const DCMat& f, std::size_t d, std::size_t t, const DCMat& a) {
  DCMat out(t, t);
  for (std::size_t x = 0; x < t; ++x)
    for (std::size_t y = 0; y < t; ++y)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          double ar = a.re(i, j), ai = a.im(i, j);
          double fr = f.re(x * d + i, y * d + j), fi = f.im(x * d + i, y * d + j);
          out.re(x, y) += ar * fr - ai * fi;
          out.im(x, y) += ar * fi + ai * fr;
        }
  return out;
}

}  // namespace

double arveson_residual(const ArvesonProblem& p, const KrausList& kraus) {
  HermSpace hd(p.d), ht(p.t);
  DMat theta = to_double(p.theta), psi = to_double(p.psi);
  double num = 0;
  for (std::size_t k = 0; k < theta.cols(); ++k) {
    DVec img(p.t * p.t, 0);
    if (!kraus.empty()) img = ht.vectorize(kraus_apply(kraus, hd.devectorize(theta.col(k))));
    for (std::size_t q = 0; q < img.size(); ++q) {
      double diff = (img[q] - psi(q, k)) * std::sqrt(static_cast<double>(ht.gram(q)));
      num += diff * diff;
    }
  }
  double den = 0;
  for (std::size_t k = 0; k < psi.cols(); ++k)
    for (std::size_t q = 0; q < psi.rows(); ++q) den += psi(q, k) * psi(q, k) * ht.gram(q);
  return std::sqrt(num) / std::max(1.0, std::sqrt(den));
}

ArvesonResult arveson_extend(const ArvesonProblem& p, int iters, double tol) {
  std::size_t d = p.d, t = p.t;
  if (p.theta.rows() != d * d || p.psi.rows() != t * t || p.theta.cols() != p.psi.cols())
    throw DimensionError("arveson_extend: theta must be d^2 x p and psi t^2 x p");
  std::size_t xdim = p.theta.cols(), n = t * d, nv = n * n;
  HermSpace hn(n), hd(d), ht(t);
  ArvesonResult out;
  out.hypotheses = rank(p.theta) == d * d ? "theta surjective onto Her_d" : "no hypothesis verified";

  // Orthonormal coordinates z_e = y_e·√gram_e on Her_{td}.
  std::vector<double> sq(nv);
  for (std::size_t e = 0; e < nv; ++e) sq[e] = std::sqrt(static_cast<double>(hn.gram(e)));
  auto to_matrix = [&](const DVec& z) {
    DVec y(nv);
    for (std::size_t e = 0; e < nv; ++e) y[e] = z[e] / sq[e];
    return hn.devectorize(y);
  };
  auto to_coords = [&](const DCMat& f) {
    DVec y = hn.vectorize(f);
    for (std::size_t e = 0; e < nv; ++e) y[e] *= sq[e];
    return y;
  };

  DMat theta = to_double(p.theta), psi = to_double(p.psi);
  std::vector<DCMat> inputs;
  for (std::size_t k = 0; k < xdim; ++k) inputs.push_back(hd.devectorize(theta.col(k)));
  AffineProjector aff;
  std::size_t nrows = xdim * t * t;
  aff.l = DMat(nrows, nv);
  aff.b = DVec(nrows);
  for (std::size_t k = 0; k < xdim; ++k)
    for (std::size_t q = 0; q < t * t; ++q) {
      // rows weighted by √gram so the residual is a Frobenius norm
      aff.b[k * t * t + q] = psi(q, k) * std::sqrt(static_cast<double>(ht.gram(q)));
    }
  for (std::size_t e = 0; e < nv; ++e) {
    DVec unit(nv, 0);
    unit[e] = 1;
    DCMat f = to_matrix(unit);
    for (std::size_t k = 0; k < xdim; ++k) {
      DVec img = ht.vectorize(apply_choi(f, d, t, inputs[k]));
      for (std::size_t q = 0; q < t * t; ++q)
        aff.l(k * t * t + q, e) = img[q] * std::sqrt(static_cast<double>(ht.gram(q)));
    }
  }
  {
    DMat g = multiply(aff.l, transpose(aff.l));
    auto eig = sym_eig(g);
    double top = eig.values.empty() ? 0 : std::max(0.0, eig.values.front());
    DMat ginv(nrows, nrows);
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
      if (eig.values[k] <= 1e-12 * std::max(1.0, top)) continue;
      for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < nrows; ++j)
          ginv(i, j) += eig.vectors(i, k) * eig.vectors(j, k) / eig.values[k];
    }
    aff.pinv = multiply(transpose(aff.l), ginv);
  }
  auto psd_project = [&](const DVec& z) {
    auto eig = herm_eig(to_matrix(z));
    DCMat f(n, n);
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
      if (eig.values[k] <= 0) continue;
      f = cadd(f, cscale(outer(eig.vectors[k]), eig.values[k]));
    }
    return to_coords(f);
  };
  double bnorm = std::max(1.0, norm2(aff.b));
  auto residual = [&](const DVec& z) {
    DVec r = matvec(aff.l, z);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= aff.b[i];
    return norm2(r) / bnorm;
  };

  // Dykstra between the affine set and the psd cone.
  DVec x(nv, 0), pp(nv, 0), qq(nv, 0);
  double res = residual(x), checkpoint = res;
  int it = 0;
  for (; it < iters; ++it) {
    DVec a(nv), y, b(nv);
    for (std::size_t i = 0; i < nv; ++i) a[i] = x[i] + pp[i];
    y = aff.project(a);
    for (std::size_t i = 0; i < nv; ++i) {
      pp[i] = a[i] - y[i];
      b[i] = y[i] + qq[i];
    }
    x = psd_project(b);
    for (std::size_t i = 0; i < nv; ++i) qq[i] = b[i] - x[i];
    res = residual(x);
    if (res < tol) {
      ++it;
      break;
    }
    if ((it + 1) % 250 == 0) {
      if (res > 0.999 * checkpoint) {
        ++it;
        break;
      }
      checkpoint = res;
    }
  }
  out.iterations = it;
  out.choi = to_matrix(x);
  out.kraus = kraus_from_choi(out.choi, d, t, 0);
  out.residual = arveson_residual(p, out.kraus);
  if (out.residual < tol) {
    out.outcome = Outcome::Yes;
  } else {
    out.outcome = Outcome::Unknown;
    out.reason = "no convergence within budget";
  }
  return out;
}

}  // namespace conekit
