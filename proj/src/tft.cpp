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

#include "conekit/tft.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace conekit {

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

void check_caps(const TftLevel& level, const TftCaps& caps) {
  if (level.m == 0) throw DimensionError("tft: m must be positive");
  if (level.k > caps.max_k || level.m > caps.max_m)
    throw CapExceeded("tft: level (m=" + std::to_string(level.m) + ", k=" +
                      std::to_string(level.k) + ") exceeds caps (m<=" +
                      std::to_string(caps.max_m) + ", k<=" + std::to_string(caps.max_k) + ")");
}

std::vector<QVec> pairing_vectors(const TftLevel& level) {
  std::vector<QVec> out;
  for (const auto& s : permutations(level.k)) out.push_back(pairing_vector(level.m, s));
  return out;
}

}  // namespace

std::size_t TftLevel::ambient() const { return ipow(m, 2 * k); }

std::vector<std::vector<std::size_t>> permutations(std::size_t k) {
  std::vector<std::size_t> p(k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

QVec pairing_vector(std::size_t m, const std::vector<std::size_t>& sigma) {
  std::size_t k = sigma.size(), half = ipow(m, k);
  QVec v(half * half, 0);
  std::vector<std::size_t> i(k), j(k);
  for (std::size_t ii = 0; ii < half; ++ii) {
    std::size_t rest = ii;
    for (std::size_t a = k; a-- > 0;) {
      i[a] = rest % m;
      rest /= m;
    }
    for (std::size_t a = 0; a < k; ++a) j[sigma[a]] = i[a];
    std::size_t jj = 0;
    for (std::size_t a = 0; a < k; ++a) jj = jj * m + j[a];
    v[ii * half + jj] = 1;
  }
  return v;
}

ConePtr b_cone(const TftLevel& level, const TftCaps& caps) {
  check_caps(level, caps);
  return Cone::poly_v(level.ambient(), pairing_vectors(level));
}

ConePtr a_cone(const TftLevel& level, const TftCaps& caps) {
  check_caps(level, caps);
  return Cone::poly_h(level.ambient(), pairing_vectors(level));
}

QVec merge_levels(std::size_t m, std::size_t k, std::size_t l, const QVec& x, const QVec& y) {
  std::size_t hk = ipow(m, k), hl = ipow(m, l);
  if (x.size() != hk * hk || y.size() != hl * hl)
    throw DimensionError("merge_levels: vector length does not match the level");
  QVec out(hk * hk * hl * hl, 0);
  for (std::size_t xa = 0; xa < x.size(); ++xa) {
    if (sgn(x[xa]) == 0) continue;
    std::size_t ix = xa / hk, jx = xa % hk;
    for (std::size_t ya = 0; ya < y.size(); ++ya) {
      if (sgn(y[ya]) == 0) continue;
      std::size_t iy = ya / hl, jy = ya % hl;
      out[((ix * hl + iy) * hk + jx) * hl + jy] = x[xa] * y[ya];
    }
  }
  return out;
}

bool TftDualityReport::all_pass() const {
  bool full_ok = level.k == 0 || level.m < 2 || b_not_full;
  bool sharp_ok = level.k == 0 || level.m < 2 || a_not_sharp;
  return b_in_a && dual_a_is_b && dual_b_is_a && full_ok && sharp_ok;
}

std::string TftDualityReport::text() const {
  std::ostringstream os;
  auto yn = [](bool b) { return b ? "pass" : "FAIL"; };
  bool trivial = level.k == 0 || level.m < 2;
  auto yn_strict = [&](bool b) { return trivial ? "n/a" : (b ? "pass" : "FAIL"); };
  os << "TFT level k=" << level.k << ", m=" << level.m << " (ambient " << level.ambient() << ")\n"
     << "  generators of B(k): " << generators << ", extreme: " << extreme << "\n"
     << "  B(k) subset of A(k): " << yn(b_in_a) << "\n"
     << "  dual A(k) = B(k): " << yn(dual_a_is_b) << "\n"
     << "  dual B(k) = A(k): " << yn(dual_b_is_a) << "\n"
     << "  B(k) not full (rank " << rank << " < " << level.ambient()
     << "): " << yn_strict(b_not_full) << "\n"
     << "  A(k) not sharp (lineality dim " << lineality << "): " << yn_strict(a_not_sharp) << "\n";
  return os.str();
}

TftDualityReport verify_tft_duality(const TftLevel& level, const SolveOptions& opt,
                                    const TftCaps& caps) {
  TftDualityReport r;
  r.level = level;
  auto b = b_cone(level, caps);
  auto a = a_cone(level, caps);
  const auto& gens = b->vectors();
  r.generators = gens.size();
  r.extreme = extreme_rays(b)->vectors().size();
  r.rank = rank(gens, level.ambient());
  r.b_not_full = r.rank < level.ambient();
  r.b_in_a = true;
  for (const auto& g : gens)
    for (const auto& h : a->vectors())
      if (sgn(dot(g, h)) < 0) r.b_in_a = false;
  r.dual_a_is_b = cones_equal(dual_explicit(a, opt.dd_cap), b, opt) == Outcome::Yes;
  r.dual_b_is_a = cones_equal(dual(b), a, opt) == Outcome::Yes;
  auto vf = double_description(level.ambient(), a->vectors(), opt.dd_cap);
  r.lineality = vf.lineality.size();
  r.a_not_sharp = r.lineality > 0;
  return r;
}

namespace {

/** Random member of A(k): random integers pushed inside along the sum of generators. */
QVec random_a_member(const TftLevel& level, std::mt19937_64& rng) {
  auto fs = pairing_vectors(level);
  std::uniform_int_distribution<int> u(-3, 3);
  QVec r(level.ambient());
  for (auto& v : r) v = u(rng);
  QVec g(level.ambient(), 0);
  for (const auto& f : fs)
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += f[i];
  Rational t = 0;
  for (const auto& f : fs) {
    Rational need = -dot(f, r) / dot(f, g);
    if (need > t) t = need;
  }
  return axpy(t, g, r);
}

}  // namespace

AssumptionWitness assumption_failure_witness(std::size_t m, std::size_t k, std::size_t l,
                                             const SolveOptions& opt) {
  AssumptionWitness w;
  w.m = m;
  w.k = k;
  w.l = l;
  TftLevel lk{m, k}, ll{m, l}, kl{m, k + l};
  TftCaps caps;
  check_caps(lk, caps);
  check_caps(ll, caps);
  check_caps(kl, caps);
  auto perms = permutations(k + l);
  auto rng = rng_stream(opt.seed, 0);
  for (int attempt = 0; attempt < opt.budget; ++attempt) {
    ++w.attempts;
    QVec s = random_a_member(lk, rng), t = random_a_member(ll, rng);
    QVec x = merge_levels(m, k, l, s, t);
    for (std::size_t p = 0; p < perms.size(); ++p) {
      Rational v = dot(pairing_vector(m, perms[p]), x);
      if (sgn(v) < 0) {
        w.found = true;
        w.s = std::move(s);
        w.t = std::move(t);
        w.x = std::move(x);
        w.halfspace = p;
        w.sigma = perms[p];
        w.value = v;
        return w;
      }
    }
  }
  w.reason = "no violating product found within " + std::to_string(opt.budget) + " attempts";
  return w;
}

bool check_assumption_witness(const AssumptionWitness& w) {
  if (!w.found) return false;
  TftLevel lk{w.m, w.k}, ll{w.m, w.l};
  if (w.s.size() != lk.ambient() || w.t.size() != ll.ambient()) return false;
  for (const auto& f : pairing_vectors(lk))
    if (sgn(dot(f, w.s)) < 0) return false;
  for (const auto& f : pairing_vectors(ll))
    if (sgn(dot(f, w.t)) < 0) return false;
  if (merge_levels(w.m, w.k, w.l, w.s, w.t) != w.x) return false;
  auto perms = permutations(w.k + w.l);
  if (w.halfspace >= perms.size() || perms[w.halfspace] != w.sigma) return false;
  Rational v = dot(pairing_vector(w.m, w.sigma), w.x);
  return v == w.value && sgn(v) < 0;
}

}  // namespace conekit
