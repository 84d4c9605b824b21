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

#include <functional>
#include <string>
#include <vector>

#include "conekit/cones.hpp"
#include "conekit/systems.hpp"

namespace conekit {

/**
 * Linear map Her_d → Her_t as a t²×d² rational matrix in HermSpace
 * coordinates: column k is the image of basis element k of Her_d.
 */
struct LinMap {
  std::size_t d = 1;
  std::size_t t = 1;
  QMat matrix;

  LinMap() = default;
  LinMap(std::size_t dom, std::size_t cod, QMat m);

  QVec apply(const QVec& a) const { return matvec(matrix, a); }
  /** Complex-linear extension to arbitrary d×d matrices. */
  QCMat apply(const QCMat& a) const;
  DCMat apply(const DCMat& a) const;
};

LinMap map_from_function(std::size_t d, std::size_t t,
                         const std::function<QCMat(const QCMat&)>& f);
LinMap identity_map(std::size_t d);
LinMap transpose_map(std::size_t d);
/** A ↦ M*AM for a d×t matrix M. */
LinMap compression_map(const QCMat& m);
/** A ↦ tr(A)·ρ. */
LinMap trace_map(std::size_t d, const QCMat& rho);
LinMap compose(const LinMap& second, const LinMap& first);
LinMap add_maps(const LinMap& a, const LinMap& b);

/**
 * Choi matrix Σ_ij Ψ(E_ij) ⊗ E_ij, a (td)×(td) Hermitian matrix; the row
 * index (a,i) is a·d + i with a in the codomain.
 */
QCMat choi(const LinMap& psi);
DCMat choi(const DMat& matrix, std::size_t d, std::size_t t);
/** Inverse of choi: Ψ(A)_ab = Σ_ij A_ij C[(a,i),(b,j)]. */
LinMap reshuffle(const QCMat& c, std::size_t d, std::size_t t);

/** Kraus operators are d×t: Ψ(A) = Σ T*AT. */
using KrausList = std::vector<DCMat>;

/** Kraus operators from the eigenpairs of a Choi matrix with λ > tol·max(1, λ_max). */
KrausList kraus_from_choi(const DCMat& c, std::size_t d, std::size_t t, double tol);
DCMat kraus_apply(const KrausList& kraus, const DCMat& a);
DMat kraus_to_matrix(const KrausList& kraus, std::size_t d, std::size_t t);
/** ‖matrix(kraus) − Ψ‖_F / max(1, ‖Ψ‖_F). */
double kraus_reconstruction_error(const LinMap& psi, const KrausList& kraus);

struct CpResult {
  bool cp = false;
  KrausList kraus;
  /** Not cp: x with ⟨x, C x⟩ < 0, exact. */
  QCVec witness;
  /** ⟨x, Cx⟩/⟨x, x⟩ of the witness. */
  double witness_value = 0;
  double lambda_min = 0;
  bool exact = true;
};

CpResult cp_check(const LinMap& psi, const SolveOptions& opt = {});
/** Throws PreconditionError when the map is not cp. */
KrausList kraus(const LinMap& psi, const SolveOptions& opt = {});

// ---- k-positivity ----

struct KposResult {
  Outcome outcome = Outcome::Unknown;
  /** No: x = Σ_r a_r ⊗ b_r with ⟨x, Cx⟩ < 0; a_r in C^t, b_r in C^d. */
  std::vector<QCVec> a, b;
  double value = 0;
  std::string oracle;
  std::string reason;
};

KposResult k_positivity(const LinMap& psi, std::size_t k, const SolveOptions& opt = {});

/**
 * Replays a k-positivity witness without the Choi matrix: the psd input
 * Σ_{r,r'} b̄_r b̄_r'* ⊗ E_rr' is mapped by Ψ⊗id_k and paired with the
 * output vector Σ a_r ⊗ e_r.
 */
bool check_kpos_witness(const LinMap& psi, std::size_t k, const std::vector<QCVec>& a,
                        const std::vector<QCVec>& b);

// ---- entanglement breaking ----

/** Ψ(A) = Σ_k tr(Q_k A)·P_k with Q_k, P_k psd. */
struct EbFactorization {
  std::vector<QCMat> measure;  // Q_k, d×d
  std::vector<QCMat> prepare;  // P_k, t×t
  double tol = 0;
};

struct EbResult {
  Outcome outcome = Outcome::Unknown;
  MemberResult member;  // Choi matrix against Psd_t ⊗min Psd_d
  EbFactorization factorization;
  std::string reason;
};

EbResult eb_check(const LinMap& psi, const SolveOptions& opt = {});
bool check_eb_factorization(const LinMap& psi, const EbFactorization& f);

// ---- factorization through Her_s ----

struct CpFactorization {
  Outcome outcome = Outcome::Unknown;
  LinMap first, second;  // Ψ = second ∘ first, both cp
  std::string oracle;
  std::string reason;
};

CpFactorization cp_factorization(const LinMap& psi, std::size_t s, const SolveOptions& opt = {});

// ---- maps between systems ----

/** Operator-stem system over Her_d whose level s is Psd_{ds}. */
System psd_system(std::size_t d, const std::vector<std::size_t>& levels);

struct CpBetweenResult {
  Outcome outcome = Outcome::Unknown;
  std::size_t level = 0;
  QVec x;  // element of g(level)
  MemberResult x_member;
  QVec y;  // (Ψ⊗id)(x), outside e(level)
  MemberResult y_member;
  /** Yes by base positivity: the elements tested and their memberships. */
  std::vector<QVec> base_tested;
  std::vector<MemberResult> base_checks;
  std::string oracle;
  std::string reason;
};

CpBetweenResult cp_between_systems(const LinMap& psi, System& g, System& e,
                                   const SolveOptions& opt = {});
bool check_cp_between(const LinMap& psi, System& g, System& e, const CpBetweenResult& r);

}  // namespace conekit
