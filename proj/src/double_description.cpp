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

#include <set>

#include "conekit/cones.hpp"

namespace conekit {

namespace {

using Bits = std::vector<std::uint64_t>;

void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t(1) << (i % 64); }

std::size_t popcount_and(const Bits& a, const Bits& b) {
  std::size_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += __builtin_popcountll(a[i] & b[i]);
  return s;
}

struct Ray {
  QVec v;
  Bits zeros;  // processed rows vanishing on v
};

QMat columns_to_matrix(const std::vector<QVec>& cols, std::size_t n) {
  return QMat::from_columns(cols, n);
}

}  // namespace

VForm double_description(std::size_t n, const std::vector<QVec>& halfspaces, std::size_t cap) {
  for (const auto& h : halfspaces)
    if (h.size() != n) throw DimensionError("double_description: halfspace length mismatch");
  VForm out;
  if (n == 0) return out;

  // Split into equalities (pairs ±h) and inequalities, on primitive rows.
  std::set<QVec> prim;
  std::vector<QVec> rows;
  for (const auto& h : halfspaces) {
    if (is_zero(h)) continue;
    QVec p = primitive(h);
    if (prim.insert(p).second) rows.push_back(p);
  }
  std::vector<QVec> eqs, ineqs;
  for (const auto& p : rows) {
    if (prim.count(vscale(p, Rational(-1))))
      eqs.push_back(p);
    else
      ineqs.push_back(p);
  }

  // N: basis of the equality nullspace (columns), as an n×p matrix.
  std::vector<QVec> nbasis;
  if (eqs.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      QVec e(n, 0);
      e[i] = 1;
      nbasis.push_back(e);
    }
  } else {
    nbasis = nullspace(QMat::from_rows(eqs));
  }
  std::size_t p = nbasis.size();
  if (p == 0) return out;
  QMat nmat = columns_to_matrix(nbasis, n);

  // Inequalities in N coordinates.
  std::vector<QVec> red;
  for (const auto& h : ineqs) {
    QVec r(p, 0);
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t i = 0; i < n; ++i)
        if (sgn(h[i]) != 0) r[j] += h[i] * nmat(i, j);
    if (!is_zero(r)) red.push_back(primitive(r));
  }

  // Lineality: nullspace of the reduced inequalities.
  std::vector<QVec> lin;
  if (red.empty()) {
    for (std::size_t j = 0; j < p; ++j) {
      QVec e(p, 0);
      e[j] = 1;
      lin.push_back(e);
    }
  } else {
    lin = nullspace(QMat::from_rows(red));
  }
  for (const auto& l : lin) out.lineality.push_back(primitive(matvec(nmat, l)));
  if (red.empty()) return out;

  // Parametrize the row space by U = Rᵀ, R independent reduced rows.
  auto ridx = independent_rows(red, p);
  std::size_t r = ridx.size();
  if (r > cap)
    throw CapExceeded("double_description: pointed dimension " + std::to_string(r) +
                      " exceeds cap " + std::to_string(cap));
  QMat u(p, r);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t j = 0; j < p; ++j) u(j, k) = red[ridx[k]][j];
  std::vector<QVec> cons;
  cons.reserve(red.size());
  for (const auto& h : red) {
    QVec c(r, 0);
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t j = 0; j < p; ++j)
        if (sgn(h[j]) != 0) c[k] += h[j] * u(j, k);
    cons.push_back(primitive(c));
  }
  std::size_t m = cons.size(), words = (m + 63) / 64;

  // Initial simplicial cone from the first r independent constraints.
  auto base = independent_rows(cons, r);
  std::vector<bool> processed(m, false);
  QMat bmat(r, r);
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t j = 0; j < r; ++j) bmat(k, j) = cons[base[k]][j];
    processed[base[k]] = true;
  }
  QMat binv = inverse(bmat);
  std::vector<Ray> rays;
  for (std::size_t k = 0; k < r; ++k) {
    Ray ray{primitive(binv.col(k)), Bits(words, 0)};
    for (std::size_t q = 0; q < r; ++q)
      if (q != k) set_bit(ray.zeros, base[q]);
    rays.push_back(std::move(ray));
  }

  for (std::size_t row = 0; row < m; ++row) {
    if (processed[row]) continue;
    processed[row] = true;
    const QVec& h = cons[row];
    std::vector<Rational> s(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      s[i] = dot(h, rays[i].v);
      int sg = sgn(s[i]);
      if (sg > 0) pos.push_back(i);
      if (sg < 0) neg.push_back(i);
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (sgn(s[i]) < 0) continue;
      Ray keep = rays[i];
      if (sgn(s[i]) == 0) set_bit(keep.zeros, row);
      next.push_back(std::move(keep));
    }
    for (auto a : pos)
      for (auto b : neg) {
        std::size_t common = popcount_and(rays[a].zeros, rays[b].zeros);
        if (common + 2 < r) continue;
        Bits both(words);
        std::vector<QVec> active;
        for (std::size_t w = 0; w < words; ++w) both[w] = rays[a].zeros[w] & rays[b].zeros[w];
        for (std::size_t q = 0; q < m; ++q)
          if (both[q / 64] >> (q % 64) & 1) active.push_back(cons[q]);
        if (rank(active, r) + 2 != r) continue;
        QVec v(r);
        for (std::size_t j = 0; j < r; ++j) v[j] = s[a] * rays[b].v[j] - s[b] * rays[a].v[j];
        set_bit(both, row);
        next.push_back(Ray{primitive(v), std::move(both)});
      }
    rays = std::move(next);
  }

  QMat nu = multiply(nmat, u);
  for (const auto& ray : rays) out.rays.push_back(primitive(matvec(nu, ray.v)));
  return out;
}

}  // namespace conekit
