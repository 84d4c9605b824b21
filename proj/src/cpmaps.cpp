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

#include "conekit/cpmaps.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <random>

namespace conekit {

namespace {

/** Ψ applied to an arbitrary complex matrix through its Hermitian parts. */
template <typename T>
CMatrix<T> apply_complex(const Matrix<T>& m, std::size_t d, std::size_t t, const CMatrix<T>& a) {
  if (a.rows() != d || a.cols() != d) throw DimensionError("map input has the wrong size");
  HermSpace hd(d), ht(t);
  // a = H1 + i H2 with H1 = (a + a*)/2, H2 = (a - a*)/(2i).
  const T half = T(1) / T(2), mhalf = T(-1) / T(2);
  CMatrix<T> adj = adjoint(a);
  CMatrix<T> h1 = cscale(cadd(a, adj), half);
  CMatrix<T> diff = csubtract(a, adj);
  CMatrix<T> h2(scale(diff.im, half), scale(diff.re, mhalf));
  auto y1 = ht.devectorize(matvec(m, hd.vectorize(h1)));
  auto y2 = ht.devectorize(matvec(m, hd.vectorize(h2)));
  // y1 + i y2
  return CMatrix<T>(subtract(y1.re, y2.im), add(y1.im, y2.re));
}

template <typename T>
CMatrix<T> choi_t(const Matrix<T>& m, std::size_t d, std::size_t t) {
  CMatrix<T> c(t * d, t * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      CMatrix<T> e(d, d);
      e.re(i, j) = 1;
      auto img = apply_complex(m, d, t, e);
      for (std::size_t a = 0; a < t; ++a)
        for (std::size_t b = 0; b < t; ++b) {
          c.re(a * d + i, b * d + j) = img.re(a, b);
          c.im(a * d + i, b * d + j) = img.im(a, b);
        }
    }
  return c;
}

DCVec random_cvec(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  DCVec z(n);
  for (std::size_t i = 0; i < n; ++i) {
    z.re[i] = g(rng);
    z.im[i] = g(rng);
  }
  return z;
}

/** Orthonormalizes the columns of a complex matrix in place (zero columns stay zero). */
void orthonormalize(DCMat& a) {
  for (std::size_t c = 0; c < a.cols(); ++c) {
    for (std::size_t p = 0; p < c; ++p) {
      double re = 0, im = 0;  // <col p, col c>
      for (std::size_t i = 0; i < a.rows(); ++i) {
        re += a.re(i, p) * a.re(i, c) + a.im(i, p) * a.im(i, c);
        im += a.re(i, p) * a.im(i, c) - a.im(i, p) * a.re(i, c);
      }
      for (std::size_t i = 0; i < a.rows(); ++i) {
        double pr = a.re(i, p), pi = a.im(i, p);
        a.re(i, c) -= re * pr - im * pi;
        a.im(i, c) -= re * pi + im * pr;
      }
    }
    double n = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) n += a.re(i, c) * a.re(i, c) + a.im(i, c) * a.im(i, c);
    n = std::sqrt(n);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (n > 1e-12) {
        a.re(i, c) /= n;
        a.im(i, c) /= n;
      } else {
        a.re(i, c) = a.im(i, c) = 0;
      }
    }
  }
}

QCVec unit_cvec(std::size_t n, std::size_t k) {
  QCVec e(n);
  e.re[k] = 1;
  return e;
}

QCVec kpos_vector(const std::vector<QCVec>& a, const std::vector<QCVec>& b) {
  std::size_t t = a.front().size(), d = b.front().size();
  QCVec x(t * d);
  for (std::size_t r = 0; r < a.size(); ++r) {
    QCVec p = ckron(a[r], b[r]);
    for (std::size_t i = 0; i < t * d; ++i) {
      x.re[i] += p.re[i];
      x.im[i] += p.im[i];
    }
  }
  return x;
}

double cnorm2(const QCVec& z) {
  double s = 0;
  for (std::size_t i = 0; i < z.size(); ++i) s += z.re[i].get_d() * z.re[i].get_d() + z.im[i].get_d() * z.im[i].get_d();
  return s;
}

}  // namespace

LinMap::LinMap(std::size_t dom, std::size_t cod, QMat m) : d(dom), t(cod), matrix(std::move(m)) {
  if (matrix.rows() != t * t || matrix.cols() != d * d)
    throw DimensionError("map matrix must be t^2 x d^2");
}

QCMat LinMap::apply(const QCMat& a) const { return apply_complex(matrix, d, t, a); }

DCMat LinMap::apply(const DCMat& a) const { return apply_complex(to_double(matrix), d, t, a); }

LinMap map_from_function(std::size_t d, std::size_t t,
                         const std::function<QCMat(const QCMat&)>& f) {
  HermSpace hd(d), ht(t);
  QMat m(t * t, d * d);
  for (std::size_t k = 0; k < d * d; ++k) {
    auto img = f(hd.basis(k));
    if (img.rows() != t || img.cols() != t) throw DimensionError("map_from_function: wrong output size");
    auto v = ht.vectorize(img);
    for (std::size_t r = 0; r < t * t; ++r) m(r, k) = v[r];
  }
  return LinMap(d, t, std::move(m));
}

LinMap identity_map(std::size_t d) { return LinMap(d, d, QMat::identity(d * d)); }

LinMap transpose_map(std::size_t d) {
  return map_from_function(d, d, [](const QCMat& a) { return ctranspose(a); });
}

LinMap compression_map(const QCMat& m) {
  return map_from_function(m.rows(), m.cols(),
                           [&](const QCMat& a) { return cmultiply(cmultiply(adjoint(m), a), m); });
}

LinMap trace_map(std::size_t d, const QCMat& rho) {
  return map_from_function(d, rho.rows(), [&](const QCMat& a) {
    Rational tr = 0;
    for (std::size_t i = 0; i < d; ++i) tr += a.re(i, i);
    return cscale(rho, tr);
  });
}

LinMap compose(const LinMap& second, const LinMap& first) {
  if (second.d != first.t) throw DimensionError("compose: inner codomain differs from outer domain");
  return LinMap(first.d, second.t, multiply(second.matrix, first.matrix));
}

LinMap add_maps(const LinMap& a, const LinMap& b) {
  if (a.d != b.d || a.t != b.t) throw DimensionError("add_maps: shapes differ");
  return LinMap(a.d, a.t, add(a.matrix, b.matrix));
}

QCMat choi(const LinMap& psi) { return choi_t(psi.matrix, psi.d, psi.t); }

DCMat choi(const DMat& matrix, std::size_t d, std::size_t t) { return choi_t(matrix, d, t); }

LinMap reshuffle(const QCMat& c, std::size_t d, std::size_t t) {
  if (c.rows() != t * d || c.cols() != t * d) throw DimensionError("reshuffle: wrong Choi size");
  HermSpace hd(d), ht(t);
  QMat m(t * t, d * d);
  for (std::size_t k = 0; k < d * d; ++k) {
    QCMat b = hd.basis(k);
    QCMat img(t, t);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        if (sgn(b.re(i, j)) == 0 && sgn(b.im(i, j)) == 0) continue;
        for (std::size_t a = 0; a < t; ++a)
          for (std::size_t bb = 0; bb < t; ++bb) {
            const Rational& cr = c.re(a * d + i, bb * d + j);
            const Rational& ci = c.im(a * d + i, bb * d + j);
            img.re(a, bb) += b.re(i, j) * cr - b.im(i, j) * ci;
            img.im(a, bb) += b.re(i, j) * ci + b.im(i, j) * cr;
          }
      }
    auto v = ht.vectorize(img);
    for (std::size_t r = 0; r < t * t; ++r) m(r, k) = v[r];
  }
  return LinMap(d, t, std::move(m));
}

KrausList kraus_from_choi(const DCMat& c, std::size_t d, std::size_t t, double tol) {
  if (c.rows() != t * d) throw DimensionError("kraus_from_choi: wrong Choi size");
  auto eig = herm_eig(c);
  double scale = std::max(1.0, std::abs(eig.values.front()));
  KrausList out;
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    double lam = eig.values[k];
    if (lam <= tol * scale) continue;
    double s = std::sqrt(lam);
    DCMat op(d, t);
    for (std::size_t a = 0; a < t; ++a)
      for (std::size_t i = 0; i < d; ++i) {
        op.re(i, a) = s * eig.vectors[k].re[a * d + i];
        op.im(i, a) = -s * eig.vectors[k].im[a * d + i];
      }
    out.push_back(std::move(op));
  }
  return out;
}

DCMat kraus_apply(const KrausList& kraus, const DCMat& a) {
  if (kraus.empty()) throw PreconditionError("kraus_apply: empty Kraus list");
  DCMat out(kraus.front().cols(), kraus.front().cols());
  for (const auto& k : kraus) out = cadd(out, cmultiply(cmultiply(adjoint(k), a), k));
  return out;
}

DMat kraus_to_matrix(const KrausList& kraus, std::size_t d, std::size_t t) {
  HermSpace hd(d), ht(t);
  DMat m(t * t, d * d);
  for (const auto& k : kraus)
    if (k.rows() != d || k.cols() != t) throw DimensionError("Kraus operator must be d x t");
  for (std::size_t c = 0; c < d * d; ++c) {
    auto v = ht.vectorize(kraus.empty() ? DCMat(t, t) : kraus_apply(kraus, to_double(hd.basis(c))));
    for (std::size_t r = 0; r < t * t; ++r) m(r, c) = v[r];
  }
  return m;
}

double kraus_reconstruction_error(const LinMap& psi, const KrausList& kraus) {
  DMat ref = to_double(psi.matrix);
  DMat got = kraus_to_matrix(kraus, psi.d, psi.t);
  return frobenius_norm(subtract(got, ref)) / std::max(1.0, frobenius_norm(ref));
}

CpResult cp_check(const LinMap& psi, const SolveOptions& opt) {
  CpResult out;
  out.exact = opt.exact;
  QCMat c = choi(psi);
  DCMat cd = to_double(c);
  auto eig = herm_eig(cd);
  out.lambda_min = eig.values.back();
  double scale = std::max(1.0, std::abs(eig.values.front()));
  HermPsdCheck exact;
  if (opt.exact) {
    exact = exact_herm_psd_check(c);
    out.cp = exact.psd;
  } else {
    out.cp = out.lambda_min >= -opt.tol * scale;
  }
  if (out.cp) {
    out.kraus = kraus_from_choi(cd, psi.d, psi.t, opt.tol);
    return out;
  }
  QCVec z = to_rational(eig.vectors.back());
  Rational v = quadratic_form(c, z);
  if (sgn(v) >= 0) {
    if (!opt.exact) exact = exact_herm_psd_check(c);
    z = exact.witness;
    v = quadratic_form(c, z);
  }
  out.witness = z;
  out.witness_value = v.get_d() / cnorm2(z);
  return out;
}

KrausList kraus(const LinMap& psi, const SolveOptions& opt) {
  auto r = cp_check(psi, opt);
  if (!r.cp) throw PreconditionError("kraus: map is not completely positive");
  return r.kraus;
}

// ---- k-positivity ----

KposResult k_positivity(const LinMap& psi, std::size_t k, const SolveOptions& opt) {
  std::size_t d = psi.d, t = psi.t;
  if (k == 0 || k > std::min(d, t)) throw PreconditionError("k_positivity: k out of range");
  KposResult out;
  auto cp = cp_check(psi, opt);
  if (cp.cp) {
    out.outcome = Outcome::Yes;
    out.oracle = "cp_check";
    return out;
  }
  QCMat c = choi(psi);
  if (k == std::min(d, t)) {
    const QCVec& z = cp.witness;
    if (k == d) {
      for (std::size_t r = 0; r < d; ++r) {
        QCVec a(t);
        for (std::size_t i = 0; i < t; ++i) {
          a.re[i] = z.re[i * d + r];
          a.im[i] = z.im[i * d + r];
        }
        out.a.push_back(std::move(a));
        out.b.push_back(unit_cvec(d, r));
      }
    } else {
      for (std::size_t r = 0; r < t; ++r) {
        QCVec b(d);
        for (std::size_t i = 0; i < d; ++i) {
          b.re[i] = z.re[r * d + i];
          b.im[i] = z.im[r * d + i];
        }
        out.a.push_back(unit_cvec(t, r));
        out.b.push_back(std::move(b));
      }
    }
    out.outcome = Outcome::No;
    out.oracle = "cp_check";
    out.value = cp.witness_value;
    return out;
  }

  DCMat cd = to_double(c);
  struct Run {
    double value = std::numeric_limits<double>::infinity();
    DCMat a, b;
  };
  std::vector<Run> runs(static_cast<std::size_t>(std::max(1, opt.restarts)));
  parallel_for(runs.size(), [&](std::size_t rs) {
    auto rng = rng_stream(opt.seed, rs);
    DCMat b(d, k), a(t, k);
    for (std::size_t r = 0; r < k; ++r) {
      auto z = random_cvec(d, rng);
      for (std::size_t i = 0; i < d; ++i) {
        b.re(i, r) = z.re[i];
        b.im(i, r) = z.im[i];
      }
    }
    double prev = std::numeric_limits<double>::infinity();
    Run best;
    for (int it = 0; it < opt.iterations; ++it) {
      // Fix b, optimize a.
      orthonormalize(b);
      DCMat w(t * d, t * k);
      for (std::size_t x = 0; x < t; ++x)
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t r = 0; r < k; ++r) {
            w.re(x * d + i, x * k + r) = b.re(i, r);
            w.im(x * d + i, x * k + r) = b.im(i, r);
          }
      auto e1 = herm_eig(cmultiply(cmultiply(adjoint(w), cd), w));
      const DCVec& va = e1.vectors.back();
      for (std::size_t x = 0; x < t; ++x)
        for (std::size_t r = 0; r < k; ++r) {
          a.re(x, r) = va.re[x * k + r];
          a.im(x, r) = va.im[x * k + r];
        }
      // Fix a, optimize b.
      orthonormalize(a);
      DCMat w2(t * d, k * d);
      for (std::size_t x = 0; x < t; ++x)
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t r = 0; r < k; ++r) {
            w2.re(x * d + i, r * d + i) = a.re(x, r);
            w2.im(x * d + i, r * d + i) = a.im(x, r);
          }
      auto e2 = herm_eig(cmultiply(cmultiply(adjoint(w2), cd), w2));
      const DCVec& vb = e2.vectors.back();
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t r = 0; r < k; ++r) {
          b.re(i, r) = vb.re[r * d + i];
          b.im(i, r) = vb.im[r * d + i];
        }
      double val = e2.values.back();
      if (val < best.value) best = Run{val, a, b};
      if (std::abs(prev - val) < 1e-13) break;
      prev = val;
    }
    runs[rs] = std::move(best);
  });
  const Run* best = &runs.front();
  for (const auto& r : runs)
    if (r.value < best->value) best = &r;
  out.value = best->value;
  if (best->value < -opt.tol) {
    std::vector<QCVec> av, bv;
    for (std::size_t r = 0; r < k; ++r) {
      DCVec ac(t), bc(d);
      for (std::size_t x = 0; x < t; ++x) {
        ac.re[x] = best->a.re(x, r);
        ac.im[x] = best->a.im(x, r);
      }
      for (std::size_t i = 0; i < d; ++i) {
        bc.re[i] = best->b.re(i, r);
        bc.im[i] = best->b.im(i, r);
      }
      av.push_back(to_rational(ac));
      bv.push_back(to_rational(bc));
    }
    if (sgn(quadratic_form(c, kpos_vector(av, bv))) < 0) {
      out.outcome = Outcome::No;
      out.oracle = "schmidt_alternating_min";
      out.a = std::move(av);
      out.b = std::move(bv);
      return out;
    }
  }
  out.outcome = Outcome::Unknown;
  out.oracle = "schmidt_alternating_min";
  out.reason = "no violation found in " + std::to_string(runs.size()) + " restarts";
  return out;
}

bool check_kpos_witness(const LinMap& psi, std::size_t k, const std::vector<QCVec>& a,
                        const std::vector<QCVec>& b) {
  std::size_t d = psi.d, t = psi.t;
  if (a.empty() || a.size() != b.size() || a.size() > k) return false;
  for (std::size_t r = 0; r < a.size(); ++r)
    if (a[r].size() != t || b[r].size() != d) return false;
  std::size_t n = a.size();
  // Input P = vv*, v = Σ b̄_r ⊗ e_r; output block (r, r') is Ψ(b̄_r b̄_r'*).
  CMatrix<Rational> y(t * n, t * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t q = 0; q < n; ++q) {
      QCMat blk(d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          // conj(b_r,i) · b_q,j
          blk.re(i, j) = b[r].re[i] * b[q].re[j] + b[r].im[i] * b[q].im[j];
          blk.im(i, j) = b[r].re[i] * b[q].im[j] - b[r].im[i] * b[q].re[j];
        }
      QCMat img = psi.apply(blk);
      for (std::size_t x = 0; x < t; ++x)
        for (std::size_t z = 0; z < t; ++z) {
          y.re(x * n + r, z * n + q) = img.re(x, z);
          y.im(x * n + r, z * n + q) = img.im(x, z);
        }
    }
  QCVec w(t * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t x = 0; x < t; ++x) {
      w.re[x * n + r] = a[r].re[x];
      w.im[x * n + r] = a[r].im[x];
    }
  return sgn(quadratic_form(y, w)) < 0;
}

// ---- entanglement breaking ----

EbResult eb_check(const LinMap& psi, const SolveOptions& opt) {
  EbResult out;
  QVec x = matrix_to_product_coords(choi(psi), psi.t, psi.d);
  auto node = Cone::min_node(Cone::psd(psi.t), Cone::psd(psi.d));
  out.member = tensor_member(node, x, opt);
  out.outcome = out.member.outcome;
  out.reason = out.member.reason;
  const auto& cert = out.member.cert;
  if (out.outcome == Outcome::Yes && cert.type == MemberCert::Type::Decomposition) {
    for (std::size_t k = 0; k < cert.left.size(); ++k) {
      out.factorization.prepare.push_back(cert.left[k]);
      out.factorization.measure.push_back(ctranspose(cert.right[k]));
    }
    out.factorization.tol = cert.tol;
  } else if (out.outcome == Outcome::Yes) {
    out.reason = "separable by " + out.member.oracle + "; no explicit decomposition";
  }
  return out;
}

bool check_eb_factorization(const LinMap& psi, const EbFactorization& f) {
  if (f.measure.size() != f.prepare.size() || f.measure.empty()) return false;
  for (std::size_t k = 0; k < f.measure.size(); ++k) {
    if (f.measure[k].rows() != psi.d || f.prepare[k].rows() != psi.t) return false;
    if (!exact_herm_psd_check(f.measure[k]).psd || !exact_herm_psd_check(f.prepare[k]).psd)
      return false;
  }
  LinMap rebuilt = map_from_function(psi.d, psi.t, [&](const QCMat& a) {
    QCMat s(psi.t, psi.t);
    for (std::size_t k = 0; k < f.measure.size(); ++k)
      s = cadd(s, cscale(f.prepare[k], trace_product_re(f.measure[k], a)));
    return s;
  });
  if (f.tol == 0) return rebuilt.matrix == psi.matrix;
  DMat ref = to_double(psi.matrix);
  return frobenius_norm(subtract(to_double(rebuilt.matrix), ref)) <=
         f.tol * std::max(1.0, frobenius_norm(ref));
}

// ---- factorization through Her_s ----

namespace {

/** Rational c with b = c·a, when a is nonzero and b is proportional to it. */
std::optional<Rational> proportion(const QCMat& a, const QCMat& b) {
  std::optional<Rational> c;
  for (const auto* part : {&a.re, &a.im})
    for (std::size_t i = 0; i < a.rows() && !c; ++i)
      for (std::size_t j = 0; j < a.cols() && !c; ++j)
        if (sgn((*part)(i, j)) != 0) c = (part == &a.re ? b.re(i, j) : b.im(i, j)) / (*part)(i, j);
  if (!c) return std::nullopt;
  QCMat scaled = cscale(a, *c);
  if (scaled.re != b.re || scaled.im != b.im) return std::nullopt;
  return c;
}

/** Merges terms whose prepared states are proportional: Σ tr(Q_k A) c_k P = tr((Σ c_k Q_k) A) P. */
EbFactorization merge_prepare_terms(const EbFactorization& f) {
  if (f.tol != 0) return f;
  EbFactorization out;
  for (std::size_t k = 0; k < f.prepare.size(); ++k) {
    bool merged = false;
    for (std::size_t j = 0; j < out.prepare.size() && !merged; ++j) {
      auto c = proportion(out.prepare[j], f.prepare[k]);
      if (c && sgn(*c) > 0) {
        out.measure[j] = cadd(out.measure[j], cscale(f.measure[k], *c));
        merged = true;
      }
    }
    if (!merged) {
      out.prepare.push_back(f.prepare[k]);
      out.measure.push_back(f.measure[k]);
    }
  }
  return out;
}

}  // namespace

CpFactorization cp_factorization(const LinMap& psi, std::size_t s, const SolveOptions& opt) {
  CpFactorization out;
  if (s == 0) throw PreconditionError("cp_factorization: s must be positive");
  auto cp = cp_check(psi, opt);
  if (!cp.cp) {
    out.outcome = Outcome::No;
    out.oracle = "cp_check";
    out.reason = "map is not completely positive";
    return out;
  }
  if (s >= psi.d) {
    QCMat v(psi.d, s);
    for (std::size_t i = 0; i < psi.d; ++i) v.re(i, i) = 1;
    out.first = compression_map(v);
    out.second = compose(psi, compression_map(adjoint(v)));
    out.oracle = "domain_embedding";
  } else if (s >= psi.t) {
    QCMat w(psi.t, s);
    for (std::size_t i = 0; i < psi.t; ++i) w.re(i, i) = 1;
    out.first = compose(compression_map(w), psi);
    out.second = compression_map(adjoint(w));
    out.oracle = "codomain_embedding";
  } else {
    auto eb = eb_check(psi, opt);
    const auto& f = merge_prepare_terms(eb.factorization);
    if (eb.outcome == Outcome::Yes && f.tol == 0 && !f.measure.empty() && f.measure.size() <= s) {
      out.first = map_from_function(psi.d, s, [&](const QCMat& a) {
        QCMat r(s, s);
        for (std::size_t k = 0; k < f.measure.size(); ++k) r.re(k, k) = trace_product_re(f.measure[k], a);
        return r;
      });
      out.second = map_from_function(s, psi.t, [&](const QCMat& b) {
        QCMat r(psi.t, psi.t);
        for (std::size_t k = 0; k < f.prepare.size(); ++k) r = cadd(r, cscale(f.prepare[k], b.re(k, k)));
        return r;
      });
      out.oracle = "diagonal_measure_prepare";
    } else {
      out.outcome = Outcome::Unknown;
      out.oracle = "search";
      out.reason = "no factorization through Her_" + std::to_string(s) + " found";
      return out;
    }
  }
  out.outcome = compose(out.second, out.first).matrix == psi.matrix ? Outcome::Yes : Outcome::Unknown;
  if (out.outcome == Outcome::Unknown) out.reason = "factorization did not reproduce the map";
  return out;
}

// ---- maps between systems ----

System psd_system(std::size_t d, const std::vector<std::size_t>& levels) {
  System g;
  g.stem = Stem{StemKind::Operator, 0};
  g.base_dim = d * d;
  g.base = Cone::psd(d);
  g.mode = SystemMode::Explicit;
  for (auto s : levels) {
    if (s == 0) throw DimensionError("psd_system: levels must be positive");
    Level lv;
    lv.cone = s == 1 ? Cone::psd(d) : Cone::preimage(product_to_herm_coords(d, s), Cone::psd(d * s));
    g.levels.emplace(s, std::move(lv));
  }
  return g;
}

namespace {

bool is_identity(const LinMap& psi) {
  return psi.d == psi.t && psi.matrix == QMat::identity(psi.d * psi.d);
}

bool same_system(System& g, System& e, const SolveOptions& opt) {
  if (g.mode != e.mode || g.base_dim != e.base_dim) return false;
  if (g.mode == SystemMode::Min || g.mode == SystemMode::Max)
    return g.base && e.base && cones_equal(g.base, e.base, opt) == Outcome::Yes;
  if (g.levels.size() != e.levels.size()) return false;
  for (auto& [c, lv] : g.levels) {
    auto it = e.levels.find(c);
    if (it == e.levels.end() || !lv.cone || !it->second.cone) return false;
    if (lv.cone != it->second.cone && cones_equal(lv.cone, it->second.cone, opt) != Outcome::Yes)
      return false;
  }
  return true;
}

/** Product coordinates over Her_d ⊗ Her_s of psd matrices worth testing. */
std::vector<QVec> psd_candidates(std::size_t d, std::size_t s, const SolveOptions& opt) {
  std::vector<QVec> out;
  std::size_t n = d * s;
  if (d == s) {
    QCVec m(n);
    for (std::size_t i = 0; i < d; ++i) m.re[i * d + i] = 1;
    out.push_back(matrix_to_product_coords(outer(m), d, s));
  }
  auto rng = rng_stream(opt.seed, 13);
  std::uniform_int_distribution<int> u(-2, 2);
  for (int k = 0; k < opt.samples; ++k) {
    QCVec z(n);
    for (std::size_t i = 0; i < n; ++i) {
      z.re[i] = u(rng);
      z.im[i] = u(rng);
    }
    out.push_back(matrix_to_product_coords(outer(z), d, s));
  }
  return out;
}

}  // namespace

CpBetweenResult cp_between_systems(const LinMap& psi, System& g, System& e, const SolveOptions& opt) {
  if (g.stem.kind != e.stem.kind) throw PreconditionError("cp_between_systems: stems differ");
  if (g.stem.kind != StemKind::Operator) throw Unsupported("cp_between_systems needs the operator stem");
  if (g.base_dim != psi.d * psi.d || e.base_dim != psi.t * psi.t)
    throw DimensionError("cp_between_systems: map does not match the base spaces");
  CpBetweenResult out;
  if (is_identity(psi) && same_system(g, e, opt)) {
    out.outcome = Outcome::Yes;
    out.oracle = "identity";
    return out;
  }
  auto no_at = [&](std::size_t s, const QVec& x, MemberResult mx) -> bool {
    const Level& lg = g.level(s);
    const Level& le = e.level(s);
    if (!lg.cone || !le.cone) return false;
    QVec y = matvec(lift_base_map(psi.matrix, s * s), x);
    auto my = member(le.cone, y, opt);
    if (my.outcome != Outcome::No) return false;
    out.outcome = Outcome::No;
    out.level = s;
    out.x = x;
    out.x_member = std::move(mx);
    out.y = std::move(y);
    out.y_member = std::move(my);
    return true;
  };

  if (g.mode == SystemMode::Min && e.mode == SystemMode::Max && g.base && e.base) {
    const ConePtr& dg = g.base;
    const ConePtr& de = e.base;
    out.oracle = "base_positivity";
    if (dg->is_polyhedral()) {
      bool all = true;
      for (const auto& v : generators_of(dg, opt.dd_cap)) {
        auto r = member(de, psi.apply(v), opt);
        if (r.outcome == Outcome::No) {
          auto mx = member(g.level(1).cone, v, opt);
          if (no_at(1, v, std::move(mx))) return out;
        }
        all = all && r.outcome == Outcome::Yes;
        out.base_tested.push_back(v);
        out.base_checks.push_back(std::move(r));
      }
      out.outcome = all ? Outcome::Yes : Outcome::Unknown;
      if (!all) out.reason = "base positivity undecided";
      return out;
    }
    if (dg->is_psd() && !dg->dual_flag() && de->is_psd() && !de->dual_flag()) {
      QVec c = matrix_to_product_coords(choi(psi), psi.t, psi.d);
      auto r = tensor_member(Cone::max_node(Cone::psd(psi.t), Cone::psd(psi.d)), c, opt);
      if (r.outcome == Outcome::No && r.cert.type == MemberCert::Type::ProductWitness) {
        QCVec w = r.cert.w;
        for (auto& v : w.im) v = -v;
        QVec x = HermSpace(psi.d).vectorize(outer(w));
        auto mx = member(g.level(1).cone, x, opt);
        if (mx.outcome == Outcome::Yes && no_at(1, x, std::move(mx))) return out;
      }
      out.outcome = r.outcome == Outcome::Yes ? Outcome::Yes : Outcome::Unknown;
      if (r.outcome != Outcome::Yes) out.reason = "block positivity of the Choi matrix undecided";
      out.base_tested.push_back(std::move(c));
      out.base_checks.push_back(std::move(r));
      return out;
    }
  }

  // Search for a violation on the materialized levels.
  out.oracle = "level_search";
  for (auto& [s, lv] : g.levels) {
    if (!lv.cone || e.levels.find(s) == e.levels.end() || !e.levels.at(s).cone) continue;
    std::vector<QVec> cands;
    if (lv.cone->is_polyhedral()) {
      for (const auto& v : generators_of(lv.cone, opt.dd_cap)) {
        cands.push_back(v);
        if (cands.size() >= 64) break;
      }
    } else {
      cands = psd_candidates(psi.d, s, opt);
    }
    for (const auto& x : cands) {
      auto mx = member(lv.cone, x, opt);
      if (mx.outcome != Outcome::Yes) continue;
      if (no_at(s, x, std::move(mx))) return out;
    }
  }
  out.outcome = Outcome::Unknown;
  out.reason = "no violation found on the materialized levels";
  return out;
}

bool check_cp_between(const LinMap& psi, System& g, System& e, const CpBetweenResult& r) {
  if (r.outcome == Outcome::No) {
    const Level& lg = g.level(r.level);
    const Level& le = e.level(r.level);
    if (!lg.cone || !le.cone) return false;
    if (!check_member_cert(lg.cone, r.x, Outcome::Yes, r.x_member.cert)) return false;
    if (matvec(lift_base_map(psi.matrix, r.level * r.level), r.x) != r.y) return false;
    return check_member_cert(le.cone, r.y, Outcome::No, r.y_member.cert);
  }
  if (r.outcome != Outcome::Yes) return false;
  if (r.oracle == "identity") return is_identity(psi) && same_system(g, e, {});
  if (r.oracle != "base_positivity" || !g.base || !e.base) return false;
  if (g.base->is_polyhedral()) {
    auto gens = generators_of(g.base, 12);
    if (gens != r.base_tested || r.base_checks.size() != gens.size()) return false;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (!check_member_cert(e.base, psi.apply(gens[i]), Outcome::Yes, r.base_checks[i].cert))
        return false;
    return true;
  }
  if (r.base_checks.size() != 1) return false;
  QVec c = matrix_to_product_coords(choi(psi), psi.t, psi.d);
  return c == r.base_tested.front() &&
         check_member_cert(Cone::max_node(Cone::psd(psi.t), Cone::psd(psi.d)), c, Outcome::Yes,
                           r.base_checks.front().cert);
}

}  // namespace conekit
