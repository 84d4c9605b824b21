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

#include "conekit/fitting.hpp"

#include <algorithm>
#include <limits>

namespace conekit {

DVec least_squares(const DMat& a0, const DVec& b0) {
  DMat a = a0;
  DVec b = b0;
  std::size_t m = a.rows(), n = a.cols();
  std::size_t steps = std::min(m, n);
  for (std::size_t k = 0; k < steps; ++k) {
    double norm = 0;
    for (std::size_t i = k; i < m; ++i) norm += a(i, k) * a(i, k);
    norm = std::sqrt(norm);
    if (norm == 0) continue;
    double alpha = a(k, k) > 0 ? -norm : norm;
    DVec v(m - k);
    for (std::size_t i = k; i < m; ++i) v[i - k] = a(i, k);
    v[0] -= alpha;
    double vn = 0;
    for (double x : v) vn += x * x;
    if (vn == 0) continue;
    for (std::size_t j = k; j < n; ++j) {
      double s = 0;
      for (std::size_t i = k; i < m; ++i) s += v[i - k] * a(i, j);
      s = 2 * s / vn;
      for (std::size_t i = k; i < m; ++i) a(i, j) -= s * v[i - k];
    }
    double s = 0;
    for (std::size_t i = k; i < m; ++i) s += v[i - k] * b[i];
    s = 2 * s / vn;
    for (std::size_t i = k; i < m; ++i) b[i] -= s * v[i - k];
  }
  DVec x(n, 0);
  double scale = 0;
  for (std::size_t k = 0; k < steps; ++k) scale = std::max(scale, std::abs(a(k, k)));
  for (std::size_t k = steps; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a(k, j) * x[j];
    x[k] = std::abs(a(k, k)) > 1e-14 * scale ? s / a(k, k) : 0;
  }
  return x;
}

DVec nnls(const DMat& a, const DVec& b) {
  std::size_t m = a.rows(), n = a.cols();
  DVec x(n, 0);
  if (n == 0) return x;
  std::vector<bool> passive(n, false);
  auto gradient = [&]() {
    DVec r = b;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) r[i] -= a(i, j) * x[j];
    DVec w(n, 0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < m; ++i) w[j] += a(i, j) * r[i];
    return w;
  };
  double anorm = frobenius_norm(a), bnorm = norm2(b);
  double tol = 1e-13 * std::max(1.0, anorm) * std::max(1.0, bnorm);
  auto solve_passive = [&]() {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < n; ++j)
      if (passive[j]) idx.push_back(j);
    DMat sub(m, idx.size());
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < idx.size(); ++k) sub(i, k) = a(i, idx[k]);
    DVec zs = least_squares(sub, b);
    DVec z(n, 0);
    for (std::size_t k = 0; k < idx.size(); ++k) z[idx[k]] = zs[k];
    return z;
  };
  std::size_t outer = 0;
  for (;;) {
    if (++outer > 3 * n + 10) break;
    DVec w = gradient();
    std::size_t best = n;
    for (std::size_t j = 0; j < n; ++j)
      if (!passive[j] && w[j] > tol && (best == n || w[j] > w[best])) best = j;
    if (best == n) break;
    passive[best] = true;
    for (std::size_t inner = 0; inner < 3 * n + 10; ++inner) {
      DVec z = solve_passive();
      bool ok = true;
      for (std::size_t j = 0; j < n; ++j)
        if (passive[j] && z[j] <= 0) ok = false;
      if (ok) {
        x = z;
        break;
      }
      double alpha = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < n; ++j)
        if (passive[j] && z[j] <= 0) alpha = std::min(alpha, x[j] / (x[j] - z[j]));
      for (std::size_t j = 0; j < n; ++j) x[j] += alpha * (z[j] - x[j]);
      for (std::size_t j = 0; j < n; ++j)
        if (passive[j] && x[j] <= 1e-15) {
          passive[j] = false;
          x[j] = 0;
        }
    }
  }
  return x;
}

FitResult conic_fit(const DVec& target, std::vector<DVec> atoms,
                    const std::function<std::optional<DVec>(const DVec&)>& oracle,
                    int max_rounds, double rel_tol) {
  std::size_t m = target.size();
  double goal = rel_tol * std::max(1.0, norm2(target));
  FitResult out;
  auto refit = [&]() {
    DMat a(m, atoms.size());
    for (std::size_t k = 0; k < atoms.size(); ++k)
      for (std::size_t i = 0; i < m; ++i) a(i, k) = atoms[k][i];
    DVec w = nnls(a, target);
    DVec r = target;
    for (std::size_t k = 0; k < atoms.size(); ++k)
      for (std::size_t i = 0; i < m; ++i) r[i] -= w[k] * atoms[k][i];
    // Drop atoms that carry no weight to keep the active set small.
    std::vector<DVec> kept;
    DVec kw;
    for (std::size_t k = 0; k < atoms.size(); ++k)
      if (w[k] > 0) {
        kept.push_back(atoms[k]);
        kw.push_back(w[k]);
      }
    atoms = std::move(kept);
    out.weights = std::move(kw);
    out.last_residual = r;
    out.residual = norm2(r);
  };
  refit();
  for (int round = 0; round < max_rounds; ++round) {
    if (out.residual <= goal) {
      out.converged = true;
      break;
    }
    auto atom = oracle(out.last_residual);
    if (!atom) break;
    out.last_gain = dot(*atom, out.last_residual);
    if (out.last_gain <= 1e-14 * out.residual) break;
    atoms.push_back(*atom);
    refit();
  }
  if (out.residual <= goal) out.converged = true;
  out.atoms = atoms;
  return out;
}

}  // namespace conekit
