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

#include "conekit/hermitian.hpp"

#include <algorithm>
#include <numeric>

namespace conekit {

HermSpace::HermSpace(std::size_t d) : d_(d) {
  if (d == 0) throw DimensionError("HermSpace: d must be positive");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) pairs_.emplace_back(i, j);
}

QCMat HermSpace::basis(std::size_t k) const {
  if (k >= dim()) throw DimensionError("HermSpace::basis: index out of range");
  QVec v(dim(), 0);
  v[k] = 1;
  return devectorize(v);
}

QMat herm_real_embed(const QVec& h, std::size_t d) {
  HermSpace hs(d);
  return real_embed(hs.devectorize(h));
}

DMat herm_real_embed(const DVec& h, std::size_t d) {
  HermSpace hs(d);
  return real_embed(hs.devectorize(h));
}

HermPsdCheck exact_herm_psd_check(const QCMat& h) {
  std::size_t n = h.rows();
  auto chk = exact_psd_check(real_embed(h));
  HermPsdCheck out;
  out.psd = chk.psd;
  if (!chk.psd) {
    out.witness = QCVec(n);
    for (std::size_t i = 0; i < n; ++i) {
      out.witness.re[i] = chk.witness[i];
      out.witness.im[i] = chk.witness[n + i];
    }
  }
  return out;
}

namespace {

// c* z
std::pair<double, double> cinner(const DCVec& c, const DCVec& z) {
  double re = 0, im = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    re += c.re[i] * z.re[i] + c.im[i] * z.im[i];
    im += c.re[i] * z.im[i] - c.im[i] * z.re[i];
  }
  return {re, im};
}

double cnorm(const DCVec& z) {
  double s = 0;
  for (std::size_t i = 0; i < z.size(); ++i) s += z.re[i] * z.re[i] + z.im[i] * z.im[i];
  return std::sqrt(s);
}

DCVec residual(DCVec z, const std::vector<DCVec>& basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& c : basis) {
      auto [r, i] = cinner(c, z);
      for (std::size_t k = 0; k < z.size(); ++k) {
        z.re[k] -= r * c.re[k] - i * c.im[k];
        z.im[k] -= r * c.im[k] + i * c.re[k];
      }
    }
  return z;
}

}  // namespace

HermEig herm_eig(const DCMat& h) {
  std::size_t n = h.rows();
  HermEig out;
  if (n == 0) return out;
  auto eig = sym_eig(real_embed(h));
  double scale = 1;
  for (double v : eig.values) scale = std::max(scale, std::abs(v));
  // Real eigenvalues come in pairs; group near-equal ones and pick a complex
  // orthonormal basis inside each group by pivoted Gram-Schmidt.
  std::vector<DCVec> chosen;
  std::size_t start = 0;
  while (start < 2 * n) {
    std::size_t end = start + 1;
    while (end < 2 * n &&
           (eig.values[end - 1] - eig.values[end] <= 1e-9 * scale || (end - start) % 2 == 1))
      ++end;
    std::size_t want = (end - start) / 2;
    std::vector<DCVec> cand;
    for (std::size_t c = start; c < end; ++c) {
      DCVec z(n);
      for (std::size_t i = 0; i < n; ++i) {
        z.re[i] = eig.vectors(i, c);
        z.im[i] = eig.vectors(n + i, c);
      }
      cand.push_back(std::move(z));
    }
    for (std::size_t k = 0; k < want; ++k) {
      double best = -1;
      DCVec pick;
      for (const auto& z : cand) {
        DCVec r = residual(z, chosen);
        double nr = cnorm(r);
        if (nr > best) {
          best = nr;
          pick = std::move(r);
        }
      }
      if (best <= 0) throw ConvergenceError("herm_eig: degenerate eigenvector extraction");
      for (std::size_t i = 0; i < n; ++i) {
        pick.re[i] /= best;
        pick.im[i] /= best;
      }
      chosen.push_back(std::move(pick));
    }
    start = end;
  }
  std::vector<double> vals(n);
  for (std::size_t k = 0; k < n; ++k) vals[k] = quadratic_form(h, chosen[k]);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
  for (auto k : order) {
    out.values.push_back(vals[k]);
    out.vectors.push_back(chosen[k]);
  }
  return out;
}

double herm_min_eigenvalue(const DCMat& h) {
  if (h.rows() == 0) return 0;
  return sym_eig(real_embed(h)).values.back();
}

DCMat to_double(const QCMat& a) { return DCMat(to_double(a.re), to_double(a.im)); }
QCMat to_rational(const DCMat& a) { return QCMat(to_rational(a.re), to_rational(a.im)); }

DCVec to_double(const QCVec& a) {
  DCVec r;
  r.re = to_double(a.re);
  r.im = to_double(a.im);
  return r;
}

QCVec to_rational(const DCVec& a) {
  QCVec r;
  r.re = to_rational(a.re);
  r.im = to_rational(a.im);
  return r;
}

double frobenius_norm(const DCMat& a) {
  double s = 0;
  for (double v : a.re.data()) s += v * v;
  for (double v : a.im.data()) s += v * v;
  return std::sqrt(s);
}

namespace {

struct Entry {
  std::size_t i, j;
  int re, im;
};

std::vector<Entry> basis_entries(const HermSpace& hs, std::size_t k) {
  std::size_t d = hs.d(), np = hs.num_pairs();
  if (k < d) return {{k, k, 1, 0}};
  if (k < d + np) {
    auto [i, j] = hs.pair(k - d);
    return {{i, j, 1, 0}, {j, i, 1, 0}};
  }
  auto [i, j] = hs.pair(k - d - np);
  return {{i, j, 0, 1}, {j, i, 0, -1}};
}

template <typename T>
CMatrix<T> coords_to_matrix(const std::vector<T>& x, std::size_t a, std::size_t b) {
  HermSpace ha(a), hb(b);
  if (x.size() != a * a * b * b) throw DimensionError("product coordinates length mismatch");
  CMatrix<T> m(a * b, a * b);
  for (std::size_t k = 0; k < a * a; ++k) {
    auto ek = basis_entries(ha, k);
    for (std::size_t l = 0; l < b * b; ++l) {
      const T& c = x[k * b * b + l];
      if (c == 0) continue;
      for (const auto& e : ek)
        for (const auto& f : basis_entries(hb, l)) {
          int re = e.re * f.re - e.im * f.im;
          int im = e.re * f.im + e.im * f.re;
          std::size_t r = e.i * b + f.i, col = e.j * b + f.j;
          if (re) m.re(r, col) += c * T(re);
          if (im) m.im(r, col) += c * T(im);
        }
    }
  }
  return m;
}

template <typename T>
std::vector<T> matrix_to_coords(const CMatrix<T>& m, std::size_t a, std::size_t b) {
  HermSpace ha(a), hb(b);
  if (m.rows() != a * b || m.cols() != a * b) throw DimensionError("product matrix size mismatch");
  std::vector<T> x(a * a * b * b, T(0));
  for (std::size_t k = 0; k < a * a; ++k) {
    auto ek = basis_entries(ha, k);
    for (std::size_t l = 0; l < b * b; ++l) {
      T s(0);
      for (const auto& e : ek)
        for (const auto& f : basis_entries(hb, l)) {
          int re = e.re * f.re - e.im * f.im;
          int im = e.re * f.im + e.im * f.re;
          std::size_t r = e.i * b + f.i, col = e.j * b + f.j;
          // Re tr(M B) = Σ Re(M_{col,r} B_{r,col})
          if (re) s += m.re(col, r) * T(re);
          if (im) s -= m.im(col, r) * T(im);
        }
      x[k * b * b + l] = s / T(ha.gram(k) * hb.gram(l));
    }
  }
  return x;
}

}  // namespace

QCMat product_coords_to_matrix(const QVec& x, std::size_t a, std::size_t b) {
  return coords_to_matrix(x, a, b);
}
DCMat product_coords_to_matrix(const DVec& x, std::size_t a, std::size_t b) {
  return coords_to_matrix(x, a, b);
}
QVec matrix_to_product_coords(const QCMat& m, std::size_t a, std::size_t b) {
  return matrix_to_coords(m, a, b);
}
DVec matrix_to_product_coords(const DCMat& m, std::size_t a, std::size_t b) {
  return matrix_to_coords(m, a, b);
}

QMat product_to_herm_coords(std::size_t a, std::size_t b) {
  std::size_t n = a * a * b * b;
  HermSpace hab(a * b);
  QMat t(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    QVec e(n, 0);
    e[c] = 1;
    auto v = hab.vectorize(coords_to_matrix(e, a, b));
    for (std::size_t r = 0; r < n; ++r) t(r, c) = v[r];
  }
  return t;
}

}  // namespace conekit
