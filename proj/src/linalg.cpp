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

#include "conekit/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace conekit {

DMat to_double(const QMat& a) {
  DMat d(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.data().size(); ++i) d.data()[i] = a.data()[i].get_d();
  return d;
}

DVec to_double(const QVec& a) {
  DVec d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i].get_d();
  return d;
}

QMat to_rational(const DMat& a) {
  QMat q(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.data().size(); ++i) q.data()[i] = Rational(a.data()[i]);
  return q;
}

QVec to_rational(const DVec& a) {
  QVec q(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) q[i] = Rational(a[i]);
  return q;
}

double frobenius_norm(const DMat& a) {
  double s = 0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

double norm2(const DVec& x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

std::vector<std::size_t> rref(QMat& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  Rational f;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    if (a(r, c) != 1) {
      Rational inv = 1 / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (sgn(a(r, j)) != 0) a(r, j) *= inv;
    }
    // Nonzero columns of the pivot row, so elimination only touches those.
    std::vector<std::size_t> nz;
    for (std::size_t j = c; j < a.cols(); ++j)
      if (sgn(a(r, j)) != 0) nz.push_back(j);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || sgn(a(i, c)) == 0) continue;
      f = a(i, c);
      for (std::size_t j : nz) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(const QMat& a) {
  QMat b = a;
  return rref(b).size();
}

std::size_t rank(const std::vector<QVec>& vectors, std::size_t n) {
  if (vectors.empty()) return 0;
  QMat m(vectors.size(), n);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != n) throw DimensionError("vector length mismatch");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = vectors[i][j];
  }
  return rank(m);
}

std::vector<QVec> nullspace(const QMat& a) {
  QMat b = a;
  auto pivots = rref(b);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<QVec> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVec v(a.cols(), 0);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -b(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::size_t> independent_rows(const std::vector<QVec>& rows, std::size_t n) {
  // Incremental echelon basis; a row is kept when it is not reduced to zero.
  std::vector<QVec> basis;
  std::vector<std::size_t> lead;
  std::vector<std::size_t> kept;
  for (std::size_t idx = 0; idx < rows.size() && basis.size() < n; ++idx) {
    QVec v = rows[idx];
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (sgn(v[lead[b]]) == 0) continue;
      Rational f = v[lead[b]];
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(basis[b][j]) != 0) v[j] -= f * basis[b][j];
    }
    std::size_t l = 0;
    while (l < n && sgn(v[l]) == 0) ++l;
    if (l == n) continue;
    Rational inv = 1 / v[l];
    for (auto& x : v) x *= inv;
    basis.push_back(std::move(v));
    lead.push_back(l);
    kept.push_back(idx);
  }
  return kept;
}

bool solve(const QMat& a, const QVec& b, QVec& x) {
  if (b.size() != a.rows()) throw DimensionError("solve: rhs length mismatch");
  QMat aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return false;
  x.assign(a.cols(), 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
  return true;
}

QMat inverse(const QMat& a) {
  if (!a.square()) throw DimensionError("inverse of non-square matrix");
  std::size_t n = a.rows();
  QMat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1)
    throw DimensionError("matrix is singular");
  QMat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

QVec primitive(const QVec& v) {
  mpz_class den = 1, num = 0;
  for (const auto& x : v) {
    if (sgn(x) == 0) continue;
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  }
  for (const auto& x : v) {
    if (sgn(x) == 0) continue;
    mpz_class t = x.get_num() * (den / x.get_den());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.get_mpz_t());
  }
  if (num == 0) return v;
  QVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    mpz_class t = v[i].get_num() * (den / v[i].get_den());
    r[i] = Rational(mpz_class(t / num));
  }
  return r;
}

PsdCheck exact_psd_check(const QMat& m) {
  if (!m.square()) throw DimensionError("exact_psd_test: non-square matrix");
  if (!is_symmetric(m)) throw DimensionError("exact_psd_test: non-symmetric matrix");
  std::size_t n = m.rows();
  // s is the current Schur complement on `alive` indices; lift maps a vector
  // in Schur coordinates to the original space with equal quadratic form.
  QMat s = m;
  std::vector<std::size_t> alive(n);
  std::iota(alive.begin(), alive.end(), 0);
  QMat lift = QMat::identity(n);  // n x |alive|, columns indexed by position

  auto lift_vec = [&](const QVec& w) {
    QVec v(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t a = 0; a < w.size(); ++a)
        if (sgn(w[a]) != 0) v[i] += lift(i, a) * w[a];
    return v;
  };

  PsdCheck out;
  while (!alive.empty()) {
    std::size_t k = alive.size();
    for (std::size_t a = 0; a < k; ++a) {
      if (sgn(s(a, a)) < 0) {
        QVec w(k, 0);
        w[a] = 1;
        out.psd = false;
        out.witness = lift_vec(w);
        return out;
      }
    }
    for (std::size_t a = 0; a < k; ++a) {
      if (sgn(s(a, a)) != 0) continue;
      for (std::size_t b = 0; b < k; ++b) {
        if (b == a || sgn(s(a, b)) == 0) continue;
        // t e_a + e_b gives 2 t s_ab + s_bb = -(|s_bb| + 1).
        QVec w(k, 0);
        w[a] = -(abs(s(b, b)) + 1) / (2 * s(a, b));
        w[b] = 1;
        out.psd = false;
        out.witness = lift_vec(w);
        return out;
      }
    }
    std::size_t p = k;
    for (std::size_t a = 0; a < k; ++a)
      if (sgn(s(a, a)) > 0 && (p == k || s(a, a) > s(p, p))) p = a;
    if (p == k) return out;  // remaining block is identically zero
    QMat next(k - 1, k - 1);
    QMat next_lift(n, k - 1);
    std::vector<std::size_t> rest;
    for (std::size_t a = 0; a < k; ++a)
      if (a != p) rest.push_back(a);
    Rational piv = s(p, p);
    for (std::size_t i = 0; i < rest.size(); ++i)
      for (std::size_t j = 0; j < rest.size(); ++j)
        next(i, j) = s(rest[i], rest[j]) - s(rest[i], p) * s(p, rest[j]) / piv;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t j = 0; j < rest.size(); ++j)
        next_lift(r, j) = lift(r, rest[j]) - lift(r, p) * s(p, rest[j]) / piv;
    s = std::move(next);
    lift = std::move(next_lift);
    std::vector<std::size_t> alive2;
    for (auto a : rest) alive2.push_back(alive[a]);
    alive = std::move(alive2);
  }
  return out;
}

bool exact_psd_test(const QMat& m) { return exact_psd_check(m).psd; }

SymEig sym_eig(const DMat& m) {
  if (!m.square()) throw DimensionError("sym_eig: non-square matrix");
  std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double a = m(i, j), b = m(j, i);
      if (std::abs(a - b) > 1e-9 * (1 + std::abs(a) + std::abs(b)))
        throw DimensionError("sym_eig: non-symmetric matrix");
    }
  DMat a = m;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (m(i, j) + m(j, i));
  DMat v = DMat::identity(n);
  double initial = frobenius_norm(a);
  auto off = [&]() {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };
  const int max_sweeps = 100;
  int sweep = 0;
  while (initial > 0 && off() >= 1e-12 * initial) {
    if (++sweep > max_sweeps)
      throw ConvergenceError("sym_eig: Jacobi sweeps exhausted");
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (apq == 0) continue;
        double theta = (a(q, q) - a(p, p)) / (2 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
  SymEig out;
  out.values.resize(n);
  out.vectors = DMat(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

double min_eigenvalue(const DMat& m) {
  if (m.rows() == 0) return 0;
  return sym_eig(m).values.back();
}

}  // namespace conekit
