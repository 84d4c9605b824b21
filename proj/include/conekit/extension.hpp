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

#include <string>
#include <vector>

#include "conekit/cones.hpp"
#include "conekit/cpmaps.hpp"
#include "conekit/lp.hpp"

namespace conekit {

/**
 * Extension problem: find Φ: V → W with Φ(C) ⊆ D and Φ u_j = psi_j.
 * The scalar case is W = ℝ, D = ℝ₊.
 */
struct ExtProblem {
  ConePtr c;                 // polyhedral, in V
  ConePtr d;                 // polyhedral, in W
  std::vector<QVec> u;       // basis of U ⊆ V
  std::vector<QVec> psi;     // psi_j ∈ W, the prescribed value on u_j
  /** Optional group: Φ ρ_k = σ_k Φ for every k. */
  std::vector<QMat> rho, sigma;
};

enum class ExtKind { Extension, Obstruction, Unknown };

const char* ext_kind_name(ExtKind k);

struct ExtCert {
  ExtKind kind = ExtKind::Unknown;
  /** Extension: Φ as a dim W × dim V matrix. */
  QMat phi;
  /** Obstruction: LP multipliers (one per row of the problem LP). */
  QVec multipliers;
  /**
   * Obstruction: τ = Σ y g_i ⊗ h ∈ (C ⊗min D∨) ∩ (U ⊗ W′), V-major, whose
   * pairing with the prescribed map is negative.
   */
  QVec witness;
  std::string reason;
};

struct ExtHypotheses {
  /** A point of U in the interior of C, when one exists. */
  bool meets_interior = false;
  QVec interior_point;
  bool d_sharp = false;
};

struct CriterionReport {
  bool evaluated = false;
  std::size_t tested = 0;
  bool holds = false;
  /** Generator of (C⊗min D∨) ∩ (U⊗W′) whose image leaves D ⊗min D∨. */
  QVec violation;
  std::string reason;
};

struct ExtResult {
  ExtCert cert;
  ExtHypotheses hypotheses;
  CriterionReport criterion;
  /** Invariant problems: Fix(ρ), B(ρ) = Fix(ρ) ∩ C, A(ρ) cut out by invariant f ∈ C∨. */
  std::vector<QVec> fix_basis;
  ConePtr b_rho, a_rho;
};

ExtHypotheses check_hypotheses(const ExtProblem& p, std::size_t cap = 12);

/** Scalar extension of psi (values on the basis u) to a functional in C∨. */
ExtResult riesz_extend(const ConePtr& c, const std::vector<QVec>& u, const QVec& psi,
                       std::size_t cap = 12);

/** Throws PreconditionError when D is not sharp or U misses int(C). */
ExtResult riesz_extend_vector(const ExtProblem& p, std::size_t cap = 12);

/** Finite group given as index-aligned lists ρ_k on (C, V) and σ_k on (D, W). */
ExtResult invariant_extend(const ExtProblem& p, std::size_t cap = 12);

/** Validates closure, inverses and positivity of a represented group on a cone. */
void validate_group(const std::vector<QMat>& rho, const ConePtr& c, std::size_t cap = 12);

/** Independent replay of an extension certificate. */
bool check_ext_cert(const ExtProblem& p, const ExtCert& cert, std::size_t cap = 12);

/** The LP behind every polyhedral extension problem. */
LpBuilder extension_lp(const ExtProblem& p, std::size_t cap = 12);

// ---- operator extension ----

/**
 * Θ: X → Her_d and Ψ: X → Her_t on a real space X of dimension p, as
 * d²×p and t²×p matrices in HermSpace coordinates.
 */
struct ArvesonProblem {
  std::size_t d = 1, t = 1;
  QMat theta, psi;
};

struct ArvesonResult {
  Outcome outcome = Outcome::Unknown;  // never No
  DCMat choi;                          // of Φ: Her_d → Her_t
  KrausList kraus;
  double residual = 0;
  int iterations = 0;
  std::string hypotheses;
  std::string reason;
};

ArvesonResult arveson_extend(const ArvesonProblem& p, int iters = 5000, double tol = 1e-9);
/** ‖Φ∘Θ − Ψ‖_F / max(1, ‖Ψ‖_F) with Φ rebuilt from the Kraus list. */
double arveson_residual(const ArvesonProblem& p, const KrausList& kraus);

}  // namespace conekit
