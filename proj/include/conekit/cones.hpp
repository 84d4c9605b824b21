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

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "conekit/hermitian.hpp"
#include "conekit/verdict.hpp"

namespace conekit {

enum class ConeKind { PolyV, PolyH, Simplex, Lorentz, Psd, MinTensor, MaxTensor, Preimage };

const char* cone_kind_name(ConeKind k);

class Cone;
using ConePtr = std::shared_ptr<const Cone>;

/**
 * Closed convex cone in ℝⁿ. Immutable; build through the static factories.
 *
 * Psd(d) lives on HermSpace(d) coordinates. Its dual under the dot product is
 * G·Psd(d) with G the HermSpace Gram matrix; that cone is Psd(d) with the
 * dual flag set. Preimage(T, K) is {x : T x ∈ K}.
 */
class Cone {
 public:
  static ConePtr poly_v(std::size_t ambient, std::vector<QVec> generators);
  static ConePtr poly_h(std::size_t ambient, std::vector<QVec> halfspaces);
  static ConePtr simplex(std::vector<QVec> basis);
  /** ℝⁿ₊ as the simplex cone of the standard basis. */
  static ConePtr orthant(std::size_t n);
  static ConePtr lorentz(std::size_t d);
  static ConePtr psd(std::size_t d, bool dual = false);
  static ConePtr min_node(ConePtr left, ConePtr right);
  static ConePtr max_node(ConePtr left, ConePtr right);
  static ConePtr preimage(QMat map, ConePtr inner);

  ConeKind kind() const { return kind_; }
  std::size_t ambient() const { return ambient_; }
  /** Generators (PolyV), halfspaces (PolyH) or basis (Simplex). */
  const std::vector<QVec>& vectors() const { return vectors_; }
  std::size_t d() const { return d_; }
  bool dual_flag() const { return dual_; }
  const ConePtr& left() const { return left_; }
  const ConePtr& right() const { return right_; }
  const ConePtr& inner() const { return left_; }
  const QMat& map() const { return map_; }

  bool is_polyhedral() const {
    return kind_ == ConeKind::PolyV || kind_ == ConeKind::PolyH || kind_ == ConeKind::Simplex;
  }
  bool is_psd() const { return kind_ == ConeKind::Psd; }

 private:
  Cone() = default;
  ConeKind kind_ = ConeKind::PolyV;
  std::size_t ambient_ = 0;
  std::vector<QVec> vectors_;
  std::size_t d_ = 0;
  bool dual_ = false;
  ConePtr left_, right_;
  QMat map_;
  // Memo for polyhedral conversions, filled on first request.
  mutable std::mutex memo_mu_;
  mutable std::optional<std::vector<QVec>> memo_gens_, memo_hs_;
  friend std::vector<QVec> generators_of(const ConePtr& c, std::size_t cap);
  friend std::vector<QVec> halfspaces_of(const ConePtr& c, std::size_t cap);
};

// ---- polyhedral conversions ----

/** Extreme rays of the pointed part plus a basis of the lineality space. */
struct VForm {
  std::vector<QVec> rays;
  std::vector<QVec> lineality;
};

/**
 * Extreme rays of {x : h·x ≥ 0 for h in halfspaces}. Halfspaces are inserted
 * in input order; adjacency is decided by an exact rank test on the common
 * active set. Pairs ±h are treated as equalities and the lineality space is
 * split off first, so `cap` bounds the dimension of the pointed part.
 */
VForm double_description(std::size_t n, const std::vector<QVec>& halfspaces,
                         std::size_t cap = 12);

/** Generator list (rays and ±lineality) of a polyhedral cone. */
std::vector<QVec> generators_of(const ConePtr& c, std::size_t cap = 12);
/** Halfspace list of a polyhedral cone. */
std::vector<QVec> halfspaces_of(const ConePtr& c, std::size_t cap = 12);
ConePtr to_poly_v(const ConePtr& c, std::size_t cap = 12);
ConePtr to_poly_h(const ConePtr& c, std::size_t cap = 12);

// ---- duality and tensor products ----

/** Structural dual: PolyV ↔ PolyH, Simplex → dual basis, min ↔ max nodes. */
ConePtr dual(const ConePtr& c);
/** Dual with an explicit generator form when c is polyhedral. */
ConePtr dual_explicit(const ConePtr& c, std::size_t cap = 12);

ConePtr min_tensor(const ConePtr& c, const ConePtr& d, std::size_t cap = 12);
ConePtr max_tensor(const ConePtr& c, const ConePtr& d, std::size_t cap = 12);

/** Irredundant generators: g is dropped when it lies in the cone of the rest. */
ConePtr extreme_rays(const ConePtr& c);

// ---- membership ----

struct MemberCert {
  enum class Type {
    None,
    Combination,    // Σ coefficients·vectors = x, vectors among the generators
    Inequalities,   // every halfspace holds at x
    ExactCheck,     // named closed-form test, re-run on replay
    Separator,      // functional in the dual cone negative at x
    Halfspace,      // listed halfspace `index` negative at x
    HermWitness,    // z*Hz < 0 (on the partial transpose when flagged)
    ProductWitness, // (z⊗w)* M (z⊗w) < 0
    Decomposition,  // M = Σ left_k ⊗ right_k with psd factors
    Nested,         // functional on factor `side`, inner cert on the contraction
    Factorwise,     // per-factor-generator or per-halfspace inner certs
    Orthogonal,     // functional h⊗u vanishing on the node, positive at x
    Pullback,       // inner cert on the image under the preimage map
  };
  Type type = Type::None;
  std::string check;
  std::vector<QVec> vectors;
  std::vector<QVec> vectors2;
  QVec coefficients;
  QVec functional;
  QVec functional2;
  std::size_t index = 0;
  int side = 0;
  bool partial_transpose = false;
  QCVec z, w;
  std::vector<QCMat> left, right;
  /** Relative residual allowance for float certificates; zero means exact. */
  double tol = 0;
  std::vector<MemberCert> inner;
};

const char* member_cert_type_name(MemberCert::Type t);

struct MemberResult {
  Outcome outcome = Outcome::Unknown;
  MemberCert cert;
  std::string reason;
  /** Which oracle decided (for example "ppt_small_dimension"). */
  std::string oracle;
};

MemberResult member(const ConePtr& c, const QVec& x, const SolveOptions& opt = {});

/** Membership for MinTensor / MaxTensor nodes. */
MemberResult tensor_member(const ConePtr& node, const QVec& x, const SolveOptions& opt = {});

/** Independent replay of a membership certificate. */
bool check_member_cert(const ConePtr& c, const QVec& x, Outcome claimed,
                       const MemberCert& cert, std::size_t cap = 12);

/** y·v ≥ 0 on every generator (or y a listed halfspace) of a polyhedral cone. */
bool functional_in_dual(const ConePtr& c, const QVec& y, std::size_t cap = 12);

// ---- containment ----

struct ContainResult {
  Outcome outcome = Outcome::Unknown;
  /** For No: a vector of the inner cone outside the outer one (when known). */
  QVec witness;
  /** Certificates per generator of the inner cone (or per outer halfspace). */
  std::vector<QVec> tested;
  std::vector<MemberResult> results;
  /** True when the test ran over halfspaces of the outer cone. */
  bool by_halfspaces = false;
  std::string reason;
};

/** Decides inner ⊆ outer. */
ContainResult cone_contains(const ConePtr& outer, const ConePtr& inner,
                            const SolveOptions& opt = {});

/** Mutual containment of two cones. */
Outcome cones_equal(const ConePtr& a, const ConePtr& b, const SolveOptions& opt = {});

// ---- helpers shared with other modules ----

/** Hermitian matrix described by Psd coordinates (undoing the Gram scaling when dual). */
QCMat psd_coords_matrix(const QVec& x, std::size_t d, bool dual);

/** (φ⊗id)(x) for side 0 or (id⊗φ)(x) for side 1, x over ℝ^{na}⊗ℝ^{nb}. */
QVec contract(const QVec& x, std::size_t na, std::size_t nb, const QVec& phi, int side);

/** Maximally entangled vector Σ e_i⊗e_i in ℝ^{n}⊗ℝ^{n}. */
QVec max_entangled(std::size_t n);

}  // namespace conekit
