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

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "conekit/errors.hpp"

namespace conekit {

using Rational = mpq_class;
using QVec = std::vector<Rational>;
using DVec = std::vector<double>;

/** Default tolerance for float-mode decisions. */
constexpr double kDefaultTol = 1e-9;

/** Dense row-major matrix. */
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows);
  static Matrix from_columns(const std::vector<std::vector<T>>& cols, std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  std::vector<T> row(std::size_t i) const;
  std::vector<T> col(std::size_t j) const;
  std::vector<std::vector<T>> to_rows() const;

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMat = Matrix<Rational>;
using DMat = Matrix<double>;

template <typename T>
Matrix<T> Matrix<T>::from_rows(const std::vector<std::vector<T>>& rows) {
  if (rows.empty()) return Matrix();
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw DimensionError("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

template <typename T>
Matrix<T> Matrix<T>::from_columns(
    const std::vector<std::vector<T>>& cols, std::size_t n) {
  Matrix m(n, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != n) throw DimensionError("column length mismatch");
    for (std::size_t i = 0; i < n; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

template <typename T>
std::vector<T> Matrix<T>::row(std::size_t i) const {
  return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

template <typename T>
std::vector<T> Matrix<T>::col(std::size_t j) const {
  std::vector<T> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

template <typename T>
std::vector<std::vector<T>> Matrix<T>::to_rows() const {
  std::vector<std::vector<T>> r;
  r.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) r.push_back(row(i));
  return r;
}

// ---- generic arithmetic ----

template <typename T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <typename T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

template <typename T>
Matrix<T> add(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("matrix sum shape mismatch");
  Matrix<T> c = a;
  for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] += b.data()[i];
  return c;
}

template <typename T>
Matrix<T> subtract(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("matrix difference shape mismatch");
  Matrix<T> c = a;
  for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] -= b.data()[i];
  return c;
}

template <typename T>
Matrix<T> scale(const Matrix<T>& a, const T& s) {
  Matrix<T> c = a;
  for (auto& v : c.data()) v *= s;
  return c;
}

/** Kronecker product; (a⊗b)(x⊗y) = (ax)⊗(by). */
template <typename T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const T& aij = a(i, j);
      if (aij == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return c;
}

template <typename T>
std::vector<T> kron(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> c(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i * b.size() + j] = a[i] * b[j];
  return c;
}

template <typename T>
std::vector<T> matvec(const Matrix<T>& a, const std::vector<T>& x) {
  if (a.cols() != x.size()) throw DimensionError("matrix-vector shape mismatch");
  std::vector<T> y(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (x[j] != 0) y[i] += a(i, j) * x[j];
  return y;
}

template <typename T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) throw DimensionError("dot product length mismatch");
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <typename T>
std::vector<T> axpy(const T& alpha, const std::vector<T>& x, const std::vector<T>& y) {
  std::vector<T> r = y;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += alpha * x[i];
  return r;
}

template <typename T>
std::vector<T> vscale(const std::vector<T>& x, const T& s) {
  std::vector<T> r = x;
  for (auto& v : r) v *= s;
  return r;
}

template <typename T>
bool is_zero(const std::vector<T>& x) {
  for (const auto& v : x)
    if (v != 0) return false;
  return true;
}

template <typename T>
bool is_symmetric(const Matrix<T>& a) {
  if (!a.square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (a(i, j) != a(j, i)) return false;
  return true;
}

// ---- conversions ----

DMat to_double(const QMat& a);
DVec to_double(const QVec& a);
/** Exact rational value of each double (binary expansion, no rounding). */
QMat to_rational(const DMat& a);
QVec to_rational(const DVec& a);

double frobenius_norm(const DMat& a);
double norm2(const DVec& x);

// ---- exact linear algebra over the rationals ----

/** Reduced row echelon form; returns pivot columns. Skips zero multipliers. */
std::vector<std::size_t> rref(QMat& a);
std::size_t rank(const QMat& a);
std::size_t rank(const std::vector<QVec>& vectors, std::size_t n);
/** Basis of {x : a x = 0}, one vector per free column. */
std::vector<QVec> nullspace(const QMat& a);
/** Maximal independent subset of rows, in input order (indices). */
std::vector<std::size_t> independent_rows(const std::vector<QVec>& rows, std::size_t n);
/** Some solution of a x = b, or false when inconsistent. */
bool solve(const QMat& a, const QVec& b, QVec& x);
/** Inverse of a square matrix; throws DimensionError when singular. */
QMat inverse(const QMat& a);

/** Positive multiple of v with coprime integer entries (v unchanged if zero). */
QVec primitive(const QVec& v);

// ---- exact psd testing ----

struct PsdCheck {
  bool psd = true;
  /** When not psd: a rational vector v with vᵀ m v < 0. */
  QVec witness;
};

/** Recursive Schur-complement pivoting on the largest diagonal entry. */
PsdCheck exact_psd_check(const QMat& m);
bool exact_psd_test(const QMat& m);

// ---- float symmetric eigendecomposition ----

struct SymEig {
  DVec values;   // descending
  DMat vectors;  // columns, orthonormal
};

/** Cyclic Jacobi; stops at 1e-12 relative off-diagonal norm. */
SymEig sym_eig(const DMat& m);

double min_eigenvalue(const DMat& m);

}  // namespace conekit
