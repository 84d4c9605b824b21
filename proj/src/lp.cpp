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

#include "conekit/lp.hpp"

namespace conekit {

namespace {

// Dense simplex tableau. Rows 0..m-1 are constraints, row m holds reduced
// costs; the last column is the right-hand side (negated objective in row m).
class Tableau {
 public:
  Tableau(std::size_t m, std::size_t ncols) : m_(m), n_(ncols), t_(m + 1, ncols + 1) {}

  Rational& at(std::size_t i, std::size_t j) { return t_(i, j); }
  const Rational& at(std::size_t i, std::size_t j) const { return t_(i, j); }
  Rational& rhs(std::size_t i) { return t_(i, n_); }
  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  std::vector<std::size_t> basis;

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / t_(r, c);
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= n_; ++j)
      if (sgn(t_(r, j)) != 0) {
        t_(r, j) *= inv;
        nz.push_back(j);
      }
    Rational f;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r || sgn(t_(i, c)) == 0) continue;
      f = t_(i, c);
      for (std::size_t j : nz) t_(i, j) -= f * t_(r, j);
    }
    basis[r] = c;
  }

  // Bland's rule over columns allowed[j]; returns false when unbounded
  // (entering column stored in `unbounded_col`).
  bool optimize(const std::vector<bool>& allowed, std::size_t& unbounded_col) {
    for (;;) {
      std::size_t enter = n_;
      for (std::size_t j = 0; j < n_; ++j)
        if (allowed[j] && sgn(t_(m_, j)) < 0) {
          enter = j;
          break;
        }
      if (enter == n_) return true;
      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(t_(i, enter)) <= 0) continue;
        Rational ratio = t_(i, n_) / t_(i, enter);
        if (leave == m_ || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) {
        unbounded_col = enter;
        return false;
      }
      pivot(leave, enter);
    }
  }

 private:
  std::size_t m_, n_;
  QMat t_;
};

}  // namespace

bool check_feasible(const QMat& a, const QVec& b, const QVec& x) {
  if (x.size() != a.cols() || b.size() != a.rows()) return false;
  for (const auto& v : x)
    if (sgn(v) < 0) return false;
  return matvec(a, x) == b;
}

bool check_farkas(const QMat& a, const QVec& b, const QVec& y) {
  if (y.size() != a.rows() || b.size() != a.rows()) return false;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (sgn(y[i]) != 0) s += y[i] * a(i, j);
    if (sgn(s) > 0) return false;
  }
  return sgn(dot(y, b)) > 0;
}

LpResult lp_solve(const LpProblem& p) {
  const QMat& a = p.a;
  std::size_t m = a.rows(), n = a.cols();
  if (p.b.size() != m) throw DimensionError("lp_solve: rhs length mismatch");
  if (p.c && p.c->size() != n) throw DimensionError("lp_solve: objective length mismatch");
  LpResult res;

  // Reduce [A | b] to row echelon form while tracking the row operations, so
  // the working system has full row rank and certificates lift back.
  QMat aug(m, n + 1 + m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = p.b[i];
    aug(i, n + 1 + i) = 1;
  }
  // Eliminate on the first n+1 columns only.
  std::vector<std::size_t> pivots;
  {
    std::size_t r = 0;
    Rational f;
    for (std::size_t c = 0; c <= n && r < m; ++c) {
      std::size_t q = r;
      while (q < m && sgn(aug(q, c)) == 0) ++q;
      if (q == m) continue;
      if (q != r)
        for (std::size_t j = 0; j < aug.cols(); ++j) std::swap(aug(q, j), aug(r, j));
      Rational inv = 1 / aug(r, c);
      std::vector<std::size_t> nz;
      for (std::size_t j = 0; j < aug.cols(); ++j)
        if (sgn(aug(r, j)) != 0) {
          aug(r, j) *= inv;
          nz.push_back(j);
        }
      for (std::size_t i = 0; i < m; ++i) {
        if (i == r || sgn(aug(i, c)) == 0) continue;
        f = aug(i, c);
        for (std::size_t j : nz) aug(i, j) -= f * aug(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
  }
  auto multipliers = [&](std::size_t row) {
    QVec y(m);
    for (std::size_t i = 0; i < m; ++i) y[i] = aug(row, n + 1 + i);
    return y;
  };
  if (!pivots.empty() && pivots.back() == n) {
    // 0 = 1 is implied: the tracked combination is a Farkas vector.
    res.status = LpStatus::Infeasible;
    res.farkas = multipliers(pivots.size() - 1);
    return res;
  }
  std::size_t r = pivots.size();

  // Phase 1 on the reduced system with artificials on every row.
  Tableau tab(r, n + r);
  std::vector<int> sign(r, 1);
  for (std::size_t i = 0; i < r; ++i) {
    if (sgn(aug(i, n)) < 0) sign[i] = -1;
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(aug(i, j)) != 0) tab.at(i, j) = sign[i] < 0 ? Rational(-aug(i, j)) : aug(i, j);
    tab.at(i, n + i) = 1;
    tab.rhs(i) = sign[i] < 0 ? Rational(-aug(i, n)) : aug(i, n);
  }
  tab.basis.resize(r);
  for (std::size_t i = 0; i < r; ++i) tab.basis[i] = n + i;
  for (std::size_t j = 0; j < n; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < r; ++i) s += tab.at(i, j);
    tab.at(r, j) = -s;
  }
  {
    Rational s = 0;
    for (std::size_t i = 0; i < r; ++i) s += tab.rhs(i);
    tab.rhs(r) = -s;
  }
  std::vector<bool> all(n + r, true);
  std::size_t dummy = 0;
  tab.optimize(all, dummy);

  if (sgn(tab.rhs(r)) != 0) {
    // Phase-1 duals: y_i = 1 - (reduced cost of artificial i).
    QVec yred(r);
    for (std::size_t i = 0; i < r; ++i) yred[i] = (1 - tab.at(r, n + i)) * sign[i];
    QVec y(m, 0);
    for (std::size_t i = 0; i < r; ++i) {
      if (sgn(yred[i]) == 0) continue;
      auto mi = multipliers(i);
      for (std::size_t k = 0; k < m; ++k) y[k] += yred[i] * mi[k];
    }
    res.status = LpStatus::Infeasible;
    res.farkas = std::move(y);
    if (!check_farkas(a, p.b, res.farkas))
      throw Error(ErrorCode::Internal, "lp_solve: Farkas certificate failed verification");
    return res;
  }

  // Drive artificials out of the basis (rows are independent, so a pivot exists).
  for (std::size_t i = 0; i < r; ++i) {
    if (tab.basis[i] < n) continue;
    std::size_t c = n;
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(tab.at(i, j)) != 0) {
        c = j;
        break;
      }
    if (c == n) throw Error(ErrorCode::Internal, "lp_solve: redundant row after reduction");
    tab.pivot(i, c);
  }

  if (p.c) {
    for (std::size_t j = 0; j <= n + r; ++j) tab.at(r, j) = 0;
    for (std::size_t j = 0; j < n; ++j) tab.at(r, j) = (*p.c)[j];
    for (std::size_t i = 0; i < r; ++i) {
      std::size_t bj = tab.basis[i];
      Rational cb = (*p.c)[bj];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= n + r; ++j)
        if (sgn(tab.at(i, j)) != 0) tab.at(r, j) -= cb * tab.at(i, j);
    }
    std::vector<bool> orig(n + r, false);
    for (std::size_t j = 0; j < n; ++j) orig[j] = true;
    std::size_t col = 0;
    if (!tab.optimize(orig, col)) {
      QVec ray(n, 0);
      ray[col] = 1;
      for (std::size_t i = 0; i < r; ++i)
        if (tab.basis[i] < n) ray[tab.basis[i]] = -tab.at(i, col);
      res.status = LpStatus::Unbounded;
      res.ray = std::move(ray);
      res.x.assign(n, 0);
      for (std::size_t i = 0; i < r; ++i)
        if (tab.basis[i] < n) res.x[tab.basis[i]] = tab.rhs(i);
      return res;
    }
  }
  res.status = LpStatus::Feasible;
  res.x.assign(n, 0);
  for (std::size_t i = 0; i < r; ++i)
    if (tab.basis[i] < n) res.x[tab.basis[i]] = tab.rhs(i);
  if (!check_feasible(a, p.b, res.x))
    throw Error(ErrorCode::Internal, "lp_solve: solution failed verification");
  if (p.c) res.objective = dot(*p.c, res.x);
  return res;
}

// ---- builder ----

std::size_t LpBuilder::add_variable(bool free_var) {
  free_.push_back(free_var);
  return free_.size() - 1;
}

std::size_t LpBuilder::add_variables(std::size_t count, bool free_var) {
  std::size_t first = free_.size();
  for (std::size_t i = 0; i < count; ++i) free_.push_back(free_var);
  return first;
}

void LpBuilder::add_row(Terms terms, Sense sense, const Rational& rhs) {
  for (const auto& t : terms)
    if (t.first >= free_.size()) throw DimensionError("LpBuilder: unknown variable");
  rows_.push_back(std::move(terms));
  sense_.push_back(sense);
  rhs_.push_back(rhs);
}

void LpBuilder::set_objective(Terms terms) { objective_ = std::move(terms); }

QMat LpBuilder::row_matrix() const {
  QMat m(rows_.size(), free_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [v, c] : rows_[r]) m(r, v) += c;
  return m;
}

LpBuilder::Solution LpBuilder::solve() const {
  // Columns: x+ for every variable, x- for free ones, then one slack per >= row.
  std::size_t nv = free_.size();
  std::vector<std::size_t> neg_col(nv, 0), slack_col(rows_.size(), 0);
  std::size_t cols = nv;
  for (std::size_t v = 0; v < nv; ++v)
    if (free_[v]) neg_col[v] = cols++;
  for (std::size_t r = 0; r < rows_.size(); ++r)
    if (sense_[r] == Sense::Ge) slack_col[r] = cols++;
  LpProblem p;
  p.a = QMat(rows_.size(), cols);
  p.b = rhs_;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (const auto& [v, c] : rows_[r]) {
      p.a(r, v) += c;
      if (free_[v]) p.a(r, neg_col[v]) -= c;
    }
    if (sense_[r] == Sense::Ge) p.a(r, slack_col[r]) = -1;
  }
  if (!objective_.empty()) {
    QVec c(cols, 0);
    for (const auto& [v, coef] : objective_) {
      c[v] += coef;
      if (free_[v]) c[neg_col[v]] -= coef;
    }
    p.c = c;
  }
  auto res = lp_solve(p);
  Solution s;
  s.status = res.status;
  if (res.status == LpStatus::Infeasible) {
    s.multipliers = res.farkas;
    return s;
  }
  s.values.assign(nv, 0);
  for (std::size_t v = 0; v < nv; ++v) {
    s.values[v] = res.x[v];
    if (free_[v]) s.values[v] -= res.x[neg_col[v]];
  }
  if (!objective_.empty()) {
    Rational o = 0;
    for (const auto& [v, coef] : objective_) o += coef * s.values[v];
    s.objective = o;
  }
  return s;
}

bool LpBuilder::check_values(const QVec& values) const {
  if (values.size() != free_.size()) return false;
  for (std::size_t v = 0; v < values.size(); ++v)
    if (!free_[v] && sgn(values[v]) < 0) return false;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Rational s = 0;
    for (const auto& [v, c] : rows_[r]) s += c * values[v];
    if (sense_[r] == Sense::Eq ? s != rhs_[r] : s < rhs_[r]) return false;
  }
  return true;
}

bool LpBuilder::check_multipliers(const QVec& y) const {
  return check_row_multipliers(row_matrix(), sense_, rhs_, free_, y);
}

bool check_row_multipliers(const QMat& rows, const std::vector<LpBuilder::Sense>& senses,
                           const QVec& rhs, const std::vector<bool>& free_vars,
                           const QVec& y) {
  if (y.size() != rows.rows() || senses.size() != rows.rows() || rhs.size() != rows.rows() ||
      free_vars.size() != rows.cols())
    return false;
  for (std::size_t r = 0; r < y.size(); ++r)
    if (senses[r] == LpBuilder::Sense::Ge && sgn(y[r]) < 0) return false;
  for (std::size_t v = 0; v < rows.cols(); ++v) {
    Rational s = 0;
    for (std::size_t r = 0; r < rows.rows(); ++r)
      if (sgn(y[r]) != 0 && sgn(rows(r, v)) != 0) s += y[r] * rows(r, v);
    if (free_vars[v] ? sgn(s) != 0 : sgn(s) > 0) return false;
  }
  return sgn(dot(y, rhs)) > 0;
}

}  // namespace conekit
