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

#include <algorithm>
#include <limits>
#include <random>

#include "conekit/cones.hpp"
#include "conekit/fitting.hpp"

namespace conekit {

namespace {

// ---- float helpers on product vectors ----

DCVec random_unit(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  DCVec z(n);
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    z.re[i] = g(rng);
    z.im[i] = g(rng);
    s += z.re[i] * z.re[i] + z.im[i] * z.im[i];
  }
  s = std::sqrt(s);
  for (std::size_t i = 0; i < n; ++i) {
    z.re[i] /= s;
    z.im[i] /= s;
  }
  return z;
}

/**
 * Compression of M on C^a ⊗ C^b by a fixed factor: with side 1 the result is
 * the a×a matrix A with v*Av = (v⊗u)*M(v⊗u); with side 0 the b×b matrix for u⊗·.
 */
DCMat compress(const DCMat& m, std::size_t a, std::size_t b, const DCVec& u, int side) {
  std::size_t n = side == 1 ? a : b;
  DCMat r(n, n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      double sr = 0, si = 0;
      std::size_t un = side == 1 ? b : a;
      for (std::size_t j = 0; j < un; ++j)
        for (std::size_t k = 0; k < un; ++k) {
          std::size_t row = side == 1 ? p * b + j : j * b + p;
          std::size_t col = side == 1 ? q * b + k : k * b + q;
          double mr = m.re(row, col), mi = m.im(row, col);
          // conj(u_j) m u_k
          double cr = u.re[j] * u.re[k] + u.im[j] * u.im[k];
          double ci = u.re[j] * u.im[k] - u.im[j] * u.re[k];
          sr += mr * cr - mi * ci;
          si += mr * ci + mi * cr;
        }
      r.re(p, q) = sr;
      r.im(p, q) = si;
    }
  return r;
}

struct ProductOpt {
  DCVec v, w;
  double value = 0;
};

/** Alternating eigenvector iteration for min (sign=-1) or max (sign=+1) of (v⊗w)*M(v⊗w). */
ProductOpt alternate(const DCMat& m, std::size_t a, std::size_t b, DCVec w, int sign,
                     int iterations) {
  ProductOpt best;
  DCVec v;
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < iterations; ++it) {
    auto ev = herm_eig(compress(m, a, b, w, 1));
    v = sign > 0 ? ev.vectors.front() : ev.vectors.back();
    auto ew = herm_eig(compress(m, a, b, v, 0));
    w = sign > 0 ? ew.vectors.front() : ew.vectors.back();
    double val = sign > 0 ? ew.values.front() : ew.values.back();
    best = {v, w, val};
    if (std::abs(val - prev) <= 1e-15 * std::max(1.0, std::abs(val))) break;
    prev = val;
  }
  return best;
}

DVec flatten(const DCMat& m) {
  DVec r(m.re.data());
  r.insert(r.end(), m.im.data().begin(), m.im.data().end());
  return r;
}

DCMat unflatten(const DVec& x, std::size_t n) {
  DCMat m(n, n);
  std::copy(x.begin(), x.begin() + n * n, m.re.data().begin());
  std::copy(x.begin() + n * n, x.end(), m.im.data().begin());
  return m;
}

QCMat elementary(std::size_t n, std::size_t i) {
  QCMat e(n, n);
  e.re(i, i) = 1;
  return e;
}

// ---- Psd ⊗ Psd ----

/** Exact decomposition when M is block diagonal with respect to either factor. */
bool block_diagonal_split(const QCMat& m, std::size_t a, std::size_t b, MemberCert& cert) {
  auto zero_off = [&](bool first) {
    for (std::size_t r = 0; r < a * b; ++r)
      for (std::size_t c = 0; c < a * b; ++c) {
        bool off = first ? (r / b != c / b) : (r % b != c % b);
        if (off && (sgn(m.re(r, c)) != 0 || sgn(m.im(r, c)) != 0)) return false;
      }
    return true;
  };
  cert = MemberCert{};
  cert.type = MemberCert::Type::Decomposition;
  if (zero_off(true)) {
    for (std::size_t i = 0; i < a; ++i) {
      QCMat blk(b, b);
      bool nz = false;
      for (std::size_t j = 0; j < b; ++j)
        for (std::size_t k = 0; k < b; ++k) {
          blk.re(j, k) = m.re(i * b + j, i * b + k);
          blk.im(j, k) = m.im(i * b + j, i * b + k);
          nz = nz || sgn(blk.re(j, k)) != 0 || sgn(blk.im(j, k)) != 0;
        }
      if (!nz) continue;
      cert.left.push_back(elementary(a, i));
      cert.right.push_back(std::move(blk));
    }
    return true;
  }
  if (zero_off(false)) {
    for (std::size_t j = 0; j < b; ++j) {
      QCMat blk(a, a);
      bool nz = false;
      for (std::size_t i = 0; i < a; ++i)
        for (std::size_t k = 0; k < a; ++k) {
          blk.re(i, k) = m.re(i * b + j, k * b + j);
          blk.im(i, k) = m.im(i * b + j, k * b + j);
          nz = nz || sgn(blk.re(i, k)) != 0 || sgn(blk.im(i, k)) != 0;
        }
      if (!nz) continue;
      cert.left.push_back(std::move(blk));
      cert.right.push_back(elementary(b, j));
    }
    return true;
  }
  return false;
}

/** Float separable decomposition by conic fitting over product states. */
bool fit_separable(const QCMat& mq, std::size_t a, std::size_t b, const SolveOptions& opt,
                   MemberCert& cert) {
  std::size_t n = a * b;
  DCMat m = to_double(mq);
  struct Rec {
    DVec atom;
    DCVec v, w;
  };
  std::vector<Rec> recs;
  std::uint64_t calls = 0;
  auto oracle = [&](const DVec& res) -> std::optional<DVec> {
    DCMat r = unflatten(res, n);
    ProductOpt best;
    best.value = -std::numeric_limits<double>::infinity();
    auto rng = rng_stream(opt.seed, 1000 + calls++);
    for (int s = 0; s < 6; ++s) {
      auto cand = alternate(r, a, b, random_unit(b, rng), +1, 50);
      if (cand.value > best.value) best = cand;
    }
    if (best.value <= 0) return std::nullopt;
    DVec atom = flatten(outer(ckron(best.v, best.w)));
    recs.push_back({atom, best.v, best.w});
    return atom;
  };
  double scale = std::max(1.0, frobenius_norm(m));
  auto fit = conic_fit(flatten(m), {}, oracle, opt.budget, opt.tol * 1e-2);
  cert = MemberCert{};
  cert.type = MemberCert::Type::Decomposition;
  cert.tol = opt.tol;
  QCMat sum(n, n);
  for (std::size_t k = 0; k < fit.atoms.size(); ++k) {
    if (fit.weights[k] <= 0) continue;
    auto it = std::find_if(recs.begin(), recs.end(),
                           [&](const Rec& r) { return r.atom == fit.atoms[k]; });
    if (it == recs.end()) continue;
    QCMat p = cscale(outer(to_rational(it->v)), to_rational(DVec{fit.weights[k]})[0]);
    QCMat q = outer(to_rational(it->w));
    sum = cadd(sum, ckron(p, q));
    cert.left.push_back(std::move(p));
    cert.right.push_back(std::move(q));
  }
  double gap = frobenius_norm(to_double(csubtract(sum, mq))) / scale;
  return !cert.left.empty() && gap <= opt.tol;
}

MemberResult psd_psd(const ConePtr& node, const QVec& x, const SolveOptions& opt) {
  std::size_t a = node->left()->d(), b = node->right()->d();
  QVec y = x;
  {
    bool fl = node->left()->dual_flag(), fr = node->right()->dual_flag();
    HermSpace ha(a), hb(b);
    for (std::size_t k = 0; k < a * a; ++k)
      for (std::size_t l = 0; l < b * b; ++l) {
        int g = (fl ? ha.gram(k) : 1) * (fr ? hb.gram(l) : 1);
        if (g != 1) y[k * b * b + l] /= g;
      }
  }
  QCMat m = product_coords_to_matrix(y, a, b);
  QCMat pt = partial_transpose(m, a, b);
  MemberResult r;
  auto mchk = exact_herm_psd_check(m);
  auto ptchk = exact_herm_psd_check(pt);

  if (node->kind() == ConeKind::MaxTensor) {
    if (mchk.psd || ptchk.psd) {
      r.outcome = Outcome::Yes;
      r.cert.type = MemberCert::Type::ExactCheck;
      r.cert.check = mchk.psd ? "psd_block" : "pt_psd";
      r.oracle = r.cert.check;
      return r;
    }
    DCMat md = to_double(m);
    std::vector<ProductOpt> runs(static_cast<std::size_t>(std::max(1, opt.restarts)));
    parallel_for(runs.size(), [&](std::size_t i) {
      auto rng = rng_stream(opt.seed, i);
      runs[i] = alternate(md, a, b, random_unit(b, rng), -1, opt.iterations);
    });
    std::size_t bi = 0;
    for (std::size_t i = 1; i < runs.size(); ++i)
      if (runs[i].value < runs[bi].value) bi = i;
    r.oracle = "alternating_product_search";
    if (runs[bi].value < -opt.tol) {
      QCVec v = to_rational(runs[bi].v), w = to_rational(runs[bi].w);
      if (sgn(quadratic_form(m, ckron(v, w))) < 0) {
        r.outcome = Outcome::No;
        r.cert.type = MemberCert::Type::ProductWitness;
        r.cert.z = std::move(v);
        r.cert.w = std::move(w);
        return r;
      }
    }
    r.outcome = Outcome::Unknown;
    r.reason = "heuristic floor reached";
    return r;
  }

  // Separability.
  if (!mchk.psd) {
    r.outcome = Outcome::No;
    r.oracle = "ppt:psd";
    r.cert.type = MemberCert::Type::HermWitness;
    r.cert.z = std::move(mchk.witness);
    return r;
  }
  if (!ptchk.psd) {
    r.outcome = Outcome::No;
    r.oracle = "ppt:partial_transpose";
    r.cert.type = MemberCert::Type::HermWitness;
    r.cert.partial_transpose = true;
    r.cert.z = std::move(ptchk.witness);
    return r;
  }
  if (block_diagonal_split(m, a, b, r.cert)) {
    r.outcome = Outcome::Yes;
    r.oracle = "block_diagonal";
    return r;
  }
  bool small = (a == 2 && b == 2) || (a == 2 && b == 3) || (a == 3 && b == 2) || a == 1 || b == 1;
  MemberCert fitted;
  bool ok = fit_separable(m, a, b, opt, fitted);
  if (ok) {
    r.outcome = Outcome::Yes;
    r.oracle = small ? "ppt_small_dimension" : "conic_fit";
    r.cert = std::move(fitted);
    return r;
  }
  if (small) {
    r.outcome = Outcome::Yes;
    r.oracle = "ppt_small_dimension";
    r.cert.type = MemberCert::Type::ExactCheck;
    r.cert.check = "ppt_small_dimension";
    r.reason = "decomposition search did not reach tolerance; verdict rests on the PPT criterion";
    return r;
  }
  r.outcome = Outcome::Unknown;
  r.oracle = "conic_fit";
  r.reason = "no separable decomposition found within budget";
  return r;
}

// ---- polyhedral ⊗ K ----

struct Split {
  int side;
  ConePtr poly, other;
  std::size_t na, nb;
};

QMat reshape(const QVec& x, const Split& s) {
  // Rows indexed by the polyhedral factor.
  std::size_t np = s.poly->ambient(), no = s.other->ambient();
  QMat m(np, no);
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = 0; j < no; ++j)
      m(i, j) = s.side == 0 ? x[i * no + j] : x[j * np + i];
  return m;
}

MemberResult max_poly(const Split& s, const QVec& x, const SolveOptions& opt) {
  auto hs = halfspaces_of(s.poly, opt.dd_cap);
  std::vector<MemberResult> res(hs.size());
  parallel_for(hs.size(), [&](std::size_t i) {
    res[i] = member(s.other, contract(x, s.na, s.nb, hs[i], s.side), opt);
  });
  MemberResult r;
  r.oracle = "factorwise_halfspaces";
  for (std::size_t i = 0; i < hs.size(); ++i)
    if (res[i].outcome == Outcome::No) {
      r.outcome = Outcome::No;
      r.cert.type = MemberCert::Type::Nested;
      r.cert.side = s.side;
      r.cert.functional = hs[i];
      r.cert.inner.push_back(std::move(res[i].cert));
      return r;
    }
  for (const auto& ri : res)
    if (ri.outcome == Outcome::Unknown) {
      r.outcome = Outcome::Unknown;
      r.reason = ri.reason;
      return r;
    }
  r.outcome = Outcome::Yes;
  r.cert.type = MemberCert::Type::Factorwise;
  r.cert.side = s.side;
  r.cert.vectors = hs;
  for (auto& ri : res) r.cert.inner.push_back(std::move(ri.cert));
  return r;
}

/** Float fit x ≈ Σ g_k ⊗ y_k with y_k in a Psd cone. */
bool fit_poly_psd(const Split& s, const std::vector<QVec>& gens, const QVec& x,
                  const SolveOptions& opt, MemberResult& out) {
  const ConePtr& k = s.other;
  std::size_t d = k->d(), no = k->ambient();
  HermSpace hs(d);
  bool flag = k->dual_flag();
  std::vector<DVec> gd;
  for (const auto& g : gens) gd.push_back(to_double(g));
  auto embed = [&](const DVec& g, const DVec& y) { return s.side == 0 ? kron(g, y) : kron(y, g); };
  auto coords = [&](const DCVec& z) {
    DVec y = hs.vectorize(outer(z));
    if (flag)
      for (std::size_t i = d; i < no; ++i) y[i] *= 2;
    return y;
  };
  struct Rec {
    DVec atom;
    std::size_t gen;
    DCVec z;
    double norm;
  };
  std::vector<Rec> recs;
  auto oracle = [&](const DVec& res) -> std::optional<DVec> {
    double best = 0;
    std::optional<Rec> pick;
    for (std::size_t g = 0; g < gd.size(); ++g) {
      // c = contraction of the residual with g; maximize c·y over y = coords(zz*).
      DVec c(no, 0);
      for (std::size_t i = 0; i < gd[g].size(); ++i)
        for (std::size_t j = 0; j < no; ++j)
          c[j] += gd[g][i] * (s.side == 0 ? res[i * no + j] : res[j * gd[g].size() + i]);
      DVec cm = c;
      for (std::size_t i = d; i < no; ++i) cm[i] /= 2;
      if (flag)
        for (std::size_t i = d; i < no; ++i) cm[i] *= 2;
      auto eig = herm_eig(hs.devectorize(cm));
      DVec atom = embed(gd[g], coords(eig.vectors.front()));
      double nrm = norm2(atom);
      if (nrm == 0) continue;
      double gain = eig.values.front() / nrm;
      if (gain > best) {
        best = gain;
        for (auto& v : atom) v /= nrm;
        pick = Rec{atom, g, eig.vectors.front(), nrm};
      }
    }
    if (!pick) return std::nullopt;
    recs.push_back(*pick);
    return pick->atom;
  };
  auto fit = conic_fit(to_double(x), {}, oracle, opt.budget, opt.tol * 1e-2);
  std::vector<QVec> ys(gens.size(), QVec(no, 0));
  for (std::size_t a = 0; a < fit.atoms.size(); ++a) {
    if (fit.weights[a] <= 0) continue;
    auto it = std::find_if(recs.begin(), recs.end(),
                           [&](const Rec& r) { return r.atom == fit.atoms[a]; });
    if (it == recs.end()) continue;
    Rational w = to_rational(DVec{fit.weights[a] / it->norm})[0];
    QCMat zz = cscale(outer(to_rational(it->z)), w);
    QVec y = hs.vectorize(zz);
    if (flag)
      for (std::size_t i = d; i < no; ++i) y[i] *= 2;
    for (std::size_t i = 0; i < no; ++i) ys[it->gen][i] += y[i];
  }
  MemberResult r;
  r.outcome = Outcome::Yes;
  r.oracle = "conic_fit";
  r.cert.type = MemberCert::Type::Factorwise;
  r.cert.side = s.side;
  r.cert.tol = opt.tol;
  QVec sum(x.size(), 0);
  SolveOptions ex = opt;
  ex.exact = true;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (is_zero(ys[g])) continue;
    auto in = member(k, ys[g], ex);
    if (in.outcome != Outcome::Yes) return false;
    r.cert.vectors.push_back(gens[g]);
    r.cert.vectors2.push_back(ys[g]);
    r.cert.inner.push_back(std::move(in.cert));
    QVec t = s.side == 0 ? kron(gens[g], ys[g]) : kron(ys[g], gens[g]);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += t[i];
  }
  double num = 0, den = 0;
  for (std::size_t i = 0; i < sum.size(); ++i) {
    double dv = Rational(sum[i] - x[i]).get_d();
    num += dv * dv;
    den += x[i].get_d() * x[i].get_d();
  }
  if (r.cert.vectors.empty() || std::sqrt(num) > opt.tol * std::max(1.0, std::sqrt(den)))
    return false;
  out = std::move(r);
  return true;
}

MemberResult min_poly(const Split& s, const QVec& x, const SolveOptions& opt) {
  auto gens = generators_of(s.poly, opt.dd_cap);
  std::size_t np = s.poly->ambient();
  QMat xm = reshape(x, s);
  MemberResult r;

  // x must lie in span(gens) ⊗ (other space).
  {
    QMat gt(gens.size(), np);
    for (std::size_t k = 0; k < gens.size(); ++k)
      for (std::size_t i = 0; i < np; ++i) gt(k, i) = gens[k][i];
    std::vector<QVec> left_null;
    if (gens.empty()) {
      for (std::size_t i = 0; i < np; ++i) {
        QVec e(np, 0);
        e[i] = 1;
        left_null.push_back(e);
      }
    } else {
      left_null = nullspace(gt);
    }
    for (const auto& h : left_null) {
      QVec u(s.other->ambient(), 0);
      for (std::size_t j = 0; j < u.size(); ++j)
        for (std::size_t i = 0; i < np; ++i)
          if (sgn(h[i]) != 0) u[j] += h[i] * xm(i, j);
      if (is_zero(u)) continue;
      r.outcome = Outcome::No;
      r.oracle = "span";
      r.cert.type = MemberCert::Type::Orthogonal;
      r.cert.side = s.side;
      r.cert.functional = h;
      r.cert.functional2 = u;
      return r;
    }
  }
  if (gens.empty()) {
    r.outcome = Outcome::Yes;
    r.cert.type = MemberCert::Type::Factorwise;
    r.cert.side = s.side;
    return r;
  }

  if (rank(gens, np) == gens.size()) {
    // Unique expansion x = Σ g_k ⊗ y_k.
    auto rows = independent_rows([&] {
      std::vector<QVec> rr(np, QVec(gens.size()));
      for (std::size_t i = 0; i < np; ++i)
        for (std::size_t k = 0; k < gens.size(); ++k) rr[i][k] = gens[k][i];
      return rr;
    }(), gens.size());
    QMat gs(gens.size(), gens.size());
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t k = 0; k < gens.size(); ++k) gs(a, k) = gens[k][rows[a]];
    QMat gsi = inverse(gs);
    std::vector<QVec> phis(gens.size(), QVec(np, 0)), ys;
    for (std::size_t k = 0; k < gens.size(); ++k)
      for (std::size_t a = 0; a < rows.size(); ++a) phis[k][rows[a]] = gsi(k, a);
    for (std::size_t k = 0; k < gens.size(); ++k)
      ys.push_back(contract(x, s.na, s.nb, phis[k], s.side));
    std::vector<MemberResult> res(gens.size());
    parallel_for(gens.size(), [&](std::size_t k) { res[k] = member(s.other, ys[k], opt); });
    r.oracle = "factorwise_generators";
    for (std::size_t k = 0; k < gens.size(); ++k)
      if (res[k].outcome == Outcome::No) {
        r.outcome = Outcome::No;
        r.cert.type = MemberCert::Type::Nested;
        r.cert.side = s.side;
        r.cert.functional = phis[k];
        r.cert.inner.push_back(std::move(res[k].cert));
        return r;
      }
    for (const auto& rk : res)
      if (rk.outcome == Outcome::Unknown) {
        r.outcome = Outcome::Unknown;
        r.reason = rk.reason;
        return r;
      }
    r.outcome = Outcome::Yes;
    r.cert.type = MemberCert::Type::Factorwise;
    r.cert.side = s.side;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      r.cert.vectors.push_back(gens[k]);
      r.cert.vectors2.push_back(ys[k]);
      r.cert.inner.push_back(std::move(res[k].cert));
    }
    return r;
  }

  // Dependent generators: the maximal product may already exclude x.
  {
    auto mx = max_poly(s, x, opt);
    if (mx.outcome == Outcome::No) return mx;
  }
  if (s.other->is_polyhedral()) {
    // Exact LP over all products of generators.
    auto og = generators_of(s.other, opt.dd_cap);
    std::vector<QVec> prods;
    std::vector<std::pair<std::size_t, std::size_t>> idx;
    for (std::size_t k = 0; k < gens.size(); ++k)
      for (std::size_t j = 0; j < og.size(); ++j) {
        prods.push_back(s.side == 0 ? kron(gens[k], og[j]) : kron(og[j], gens[k]));
        idx.emplace_back(k, j);
      }
    auto lp = member(Cone::poly_v(x.size(), prods), x, opt);
    if (lp.outcome == Outcome::No) {
      r.outcome = Outcome::No;
      r.oracle = "product_lp";
      r.cert = std::move(lp.cert);
      return r;
    }
    std::vector<QVec> ys(gens.size(), QVec(s.other->ambient(), 0));
    for (std::size_t t = 0; t < lp.cert.vectors.size(); ++t) {
      auto pos = std::find(prods.begin(), prods.end(), lp.cert.vectors[t]) - prods.begin();
      auto [k, j] = idx[static_cast<std::size_t>(pos)];
      ys[k] = axpy(lp.cert.coefficients[t], og[j], ys[k]);
    }
    r.outcome = Outcome::Yes;
    r.oracle = "product_lp";
    r.cert.type = MemberCert::Type::Factorwise;
    r.cert.side = s.side;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      if (is_zero(ys[k])) continue;
      r.cert.vectors.push_back(gens[k]);
      r.cert.vectors2.push_back(ys[k]);
      r.cert.inner.push_back(member(s.other, ys[k], opt).cert);
    }
    return r;
  }
  if (s.other->is_psd()) {
    MemberResult fitted;
    if (fit_poly_psd(s, gens, x, opt, fitted)) return fitted;
    r.outcome = Outcome::Unknown;
    r.oracle = "conic_fit";
    r.reason = "no decomposition over the generators found within budget";
    return r;
  }
  r.outcome = Outcome::Unknown;
  r.reason = "dependent generators with a non-polyhedral factor of kind " +
             std::string(cone_kind_name(s.other->kind()));
  return r;
}

}  // namespace

MemberResult tensor_member(const ConePtr& node, const QVec& x, const SolveOptions& opt) {
  if (node->kind() != ConeKind::MinTensor && node->kind() != ConeKind::MaxTensor)
    throw PreconditionError("tensor_member: not a tensor node");
  if (x.size() != node->ambient()) throw DimensionError("tensor_member: length mismatch");
  const auto &l = node->left(), &rt = node->right();
  if (l->is_psd() && rt->is_psd()) return psd_psd(node, x, opt);
  if (l->is_polyhedral() || rt->is_polyhedral()) {
    Split s{l->is_polyhedral() ? 0 : 1, l->is_polyhedral() ? l : rt, l->is_polyhedral() ? rt : l,
            l->ambient(), rt->ambient()};
    return node->kind() == ConeKind::MaxTensor ? max_poly(s, x, opt) : min_poly(s, x, opt);
  }
  throw Unsupported(std::string("tensor membership for factors ") + cone_kind_name(l->kind()) +
                    " and " + cone_kind_name(rt->kind()));
}

}  // namespace conekit
