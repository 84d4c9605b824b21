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

#pragma once

#include "conekit/linalg.hpp"

namespace conekit {

/**
 * Complex matrix stored as a pair of real matrices, value re + i·im.
 * There is no complex scalar type; all complex work goes through pairs.
 */
template <typename T>
struct CMatrix {
  Matrix<T> re, im;

  CMatrix() = default;
  CMatrix(std::size_t r, std::size_t c) : re(r, c), im(r, c) {}
  CMatrix(Matrix<T> r, Matrix<T> i) : re(std::move(r)), im(std::move(i)) {}
  std::size_t rows() const { return re.rows(); }
  std::size_t cols() const { return re.cols(); }
  static CMatrix identity(std::size_t n) {
    return CMatrix(Matrix<T>::identity(n), Matrix<T>(n, n));
  }
};

using QCMat = CMatrix<Rational>;
using DCMat = CMatrix<double>;

/** Complex vector stored as (re, im). */
template <typename T>
struct CVector {
  std::vector<T> re, im;
  CVector() = default;
  explicit CVector(std::size_t n) : re(n, T(0)), im(n, T(0)) {}
  std::size_t size() const { return re.size(); }
};

using QCVec = CVector<Rational>;
using DCVec = CVector<double>;

template <typename T>
CMatrix<T> cmultiply(const CMatrix<T>& a, const CMatrix<T>& b) {
  return CMatrix<T>(subtract(multiply(a.re, b.re), multiply(a.im, b.im)),
                    add(multiply(a.re, b.im), multiply(a.im, b.re)));
}

template <typename T>
CMatrix<T> adjoint(const CMatrix<T>& a) {
  CMatrix<T> r(transpose(a.re), transpose(a.im));
  for (auto& v : r.im.data()) v = -v;
  return r;
}

template <typename T>
CMatrix<T> cadd(const CMatrix<T>& a, const CMatrix<T>& b) {
  return CMatrix<T>(add(a.re, b.re), add(a.im, b.im));
}

template <typename T>
CMatrix<T> csubtract(const CMatrix<T>& a, const CMatrix<T>& b) {
  return CMatrix<T>(subtract(a.re, b.re), subtract(a.im, b.im));
}

template <typename T>
CMatrix<T> cscale(const CMatrix<T>& a, const T& s) {
  return CMatrix<T>(scale(a.re, s), scale(a.im, s));
}

template <typename T>
CMatrix<T> ckron(const CMatrix<T>& a, const CMatrix<T>& b) {
  return CMatrix<T>(subtract(kron(a.re, b.re), kron(a.im, b.im)),
                    add(kron(a.re, b.im), kron(a.im, b.re)));
}

template <typename T>
CMatrix<T> ctranspose(const CMatrix<T>& a) {
  return CMatrix<T>(transpose(a.re), transpose(a.im));
}

/** Real part of tr(a b). */
template <typename T>
T trace_product_re(const CMatrix<T>& a, const CMatrix<T>& b) {
  T s(0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      s += a.re(i, k) * b.re(k, i) - a.im(i, k) * b.im(k, i);
  return s;
}

/** z z* for a column vector z. */
template <typename T>
CMatrix<T> outer(const CVector<T>& z) {
  std::size_t n = z.size();
  CMatrix<T> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m.re(i, j) = z.re[i] * z.re[j] + z.im[i] * z.im[j];
      m.im(i, j) = z.im[i] * z.re[j] - z.re[i] * z.im[j];
    }
  return m;
}

/** Real part of z* m z. */
template <typename T>
T quadratic_form(const CMatrix<T>& m, const CVector<T>& z) {
  T s(0);
  std::size_t n = z.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // conj(z_i) m_ij z_j, real part
      T mr = m.re(i, j), mi = m.im(i, j);
      T pr = mr * z.re[j] - mi * z.im[j];
      T pi = mr * z.im[j] + mi * z.re[j];
      s += z.re[i] * pr + z.im[i] * pi;
    }
  return s;
}

template <typename T>
CVector<T> ckron(const CVector<T>& a, const CVector<T>& b) {
  CVector<T> r(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      r.re[i * b.size() + j] = a.re[i] * b.re[j] - a.im[i] * b.im[j];
      r.im[i * b.size() + j] = a.re[i] * b.im[j] + a.im[i] * b.re[j];
    }
  return r;
}

/**
 * Coordinates on Her_d. Basis order: E_ii (i = 0..d-1), then E_ij + E_ji for
 * i < j in lexicographic order, then i(E_ij - E_ji) for i < j. The basis is
 * unnormalized; its trace Gram matrix is diag(1,…,1,2,…,2).
 * For H = X + iY the coordinates are (H_ii, Re H_ij, Im H_ij).
 */
class HermSpace {
 public:
  explicit HermSpace(std::size_t d);
  std::size_t d() const { return d_; }
  std::size_t dim() const { return d_ * d_; }
  /** Index pair (i, j), i < j, of off-diagonal slot p. */
  std::pair<std::size_t, std::size_t> pair(std::size_t p) const { return pairs_[p]; }
  std::size_t num_pairs() const { return pairs_.size(); }
  /** Gram entry (1 or 2) of basis element k. */
  int gram(std::size_t k) const { return k < d_ ? 1 : 2; }

  template <typename T>
  std::vector<T> vectorize(const CMatrix<T>& h) const;
  template <typename T>
  CMatrix<T> devectorize(const std::vector<T>& v) const;
  /** Basis element k as a matrix. */
  QCMat basis(std::size_t k) const;

 private:
  std::size_t d_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

template <typename T>
std::vector<T> HermSpace::vectorize(const CMatrix<T>& h) const {
  if (h.rows() != d_ || h.cols() != d_) throw DimensionError("vectorize: wrong matrix size");
  std::vector<T> v(dim());
  for (std::size_t i = 0; i < d_; ++i) v[i] = h.re(i, i);
  for (std::size_t p = 0; p < pairs_.size(); ++p) {
    auto [i, j] = pairs_[p];
    v[d_ + p] = h.re(i, j);
    v[d_ + pairs_.size() + p] = h.im(i, j);
  }
  return v;
}

template <typename T>
CMatrix<T> HermSpace::devectorize(const std::vector<T>& v) const {
  if (v.size() != dim()) throw DimensionError("devectorize: wrong coordinate length");
  CMatrix<T> h(d_, d_);
  for (std::size_t i = 0; i < d_; ++i) h.re(i, i) = v[i];
  for (std::size_t p = 0; p < pairs_.size(); ++p) {
    auto [i, j] = pairs_[p];
    h.re(i, j) = h.re(j, i) = v[d_ + p];
    h.im(i, j) = v[d_ + pairs_.size() + p];
    h.im(j, i) = -v[d_ + pairs_.size() + p];
  }
  return h;
}

/** [[X, -Y], [Y, X]] for H = X + iY; H psd iff the embedding is psd. */
template <typename T>
Matrix<T> real_embed(const CMatrix<T>& h) {
  std::size_t n = h.rows();
  Matrix<T> e(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      e(i, j) = h.re(i, j);
      e(n + i, n + j) = h.re(i, j);
      e(i, n + j) = -h.im(i, j);
      e(n + i, j) = h.im(i, j);
    }
  return e;
}

/** Real embedding of the Hermitian matrix with HermSpace(d) coordinates h. */
QMat herm_real_embed(const QVec& h, std::size_t d);
DMat herm_real_embed(const DVec& h, std::size_t d);

/** Exact psd test of a Hermitian matrix; witness is a complex vector z with z*Hz < 0. */
struct HermPsdCheck {
  bool psd = true;
  QCVec witness;
};
HermPsdCheck exact_herm_psd_check(const QCMat& h);

/** Float eigendecomposition of a Hermitian matrix through the real embedding. */
struct HermEig {
  DVec values;                 // descending, length n
  std::vector<DCVec> vectors;  // orthonormal complex eigenvectors
};
HermEig herm_eig(const DCMat& h);
double herm_min_eigenvalue(const DCMat& h);

template <typename T>
CMatrix<T> to_cmatrix_re(const Matrix<T>& re) {
  return CMatrix<T>(re, Matrix<T>(re.rows(), re.cols()));
}

DCMat to_double(const QCMat& a);
QCMat to_rational(const DCMat& a);
DCVec to_double(const QCVec& a);
QCVec to_rational(const DCVec& a);
double frobenius_norm(const DCMat& a);

/**
 * Partial transpose on the second factor of C^a ⊗ C^b (row-major, first
 * factor major): entry ((i,x),(j,y)) ↦ ((i,y),(j,x)).
 */
template <typename T>
CMatrix<T> partial_transpose(const CMatrix<T>& m, std::size_t a, std::size_t b) {
  if (m.rows() != a * b || m.cols() != a * b)
    throw DimensionError("partial_transpose: size mismatch");
  CMatrix<T> r(a * b, a * b);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t x = 0; x < b; ++x)
      for (std::size_t j = 0; j < a; ++j)
        for (std::size_t y = 0; y < b; ++y) {
          r.re(i * b + y, j * b + x) = m.re(i * b + x, j * b + y);
          r.im(i * b + y, j * b + x) = m.im(i * b + x, j * b + y);
        }
  return r;
}

/**
 * Product-space coordinates: x over HermSpace(a) ⊗ HermSpace(b) (Kronecker
 * order of coordinate vectors) ↔ the ab×ab Hermitian matrix Σ x_kl B_k ⊗ B_l.
 */
QCMat product_coords_to_matrix(const QVec& x, std::size_t a, std::size_t b);
DCMat product_coords_to_matrix(const DVec& x, std::size_t a, std::size_t b);
QVec matrix_to_product_coords(const QCMat& m, std::size_t a, std::size_t b);
DVec matrix_to_product_coords(const DCMat& m, std::size_t a, std::size_t b);

/** Change of basis T with T·x = coordinates of the matrix in HermSpace(ab). */
QMat product_to_herm_coords(std::size_t a, std::size_t b);

}  // namespace conekit
