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

#include <map>
#include <string>
#include <vector>

#include "conekit/cones.hpp"

namespace conekit {

enum class StemKind { Simplex, Operator, Tft };

const char* stem_name(StemKind k);

/**
 * Concrete stem. Levels are integers: a simplex dimension, a Hilbert space
 * dimension s (level space Her_s), or the TFT level k over V = ℝ^m.
 */
struct Stem {
  StemKind kind = StemKind::Simplex;
  std::size_t m = 4;  // TFT only

  std::size_t level_dim(std::size_t c) const;
  /** Level of the unit object 𝟏. */
  std::size_t unit_level() const;
  ConePtr intrinsic(std::size_t c) const;    // A(c)
  ConePtr cointrinsic(std::size_t c) const;  // B(c)
};

enum class SystemMode { Min, Max, Generated, Explicit };

const char* system_mode_name(SystemMode m);

struct Level {
  ConePtr cone;        // null when unknown
  std::string reason;  // why the level is not represented
};

/** One generator of a finitely generated system: an element at some level. */
struct LevelElement {
  std::size_t level = 0;
  QVec element;
};

/** A truncated S-system: only the named levels are materialized. */
struct System {
  Stem stem;
  std::size_t base_dim = 1;
  ConePtr base;  // base cone D when the mode refers to one
  SystemMode mode = SystemMode::Explicit;
  std::vector<LevelElement> generators;
  std::map<std::size_t, Level> levels;
  std::size_t cap = 12;

  std::size_t level_dim(std::size_t c) const { return base_dim * stem.level_dim(c); }
  /** Stored level, materializing it from the mode when possible. */
  const Level& level(std::size_t c);
};

System min_system(const Stem& stem, const ConePtr& d, const std::vector<std::size_t>& levels,
                  std::size_t cap = 12);
System max_system(const Stem& stem, const ConePtr& d, const std::vector<std::size_t>& levels,
                  std::size_t cap = 12);
/** System generated by elements; simplex-stem levels are explicit, operator levels unknown. */
System generated_system(const Stem& stem, std::size_t base_dim,
                        const std::vector<LevelElement>& gens,
                        const std::vector<std::size_t>& levels, std::size_t cap = 12);

/**
 * Levelwise dual, rewritten back into the standard coordinates of each level
 * (Gram scaling on Her_s, block swap on TFT levels).
 */
System dual_system(const System& g);

enum class SystemOp { Sum, Intersect, DirectSum, Image, Preimage };

const char* system_op_name(SystemOp op);

/**
 * Levelwise operation. `psi` is the base map for image (X → Y, size dim Y ×
 * dim X) and preimage (Z → X, size dim X × dim Z); `h` is the second operand
 * for sum, intersect and direct sum.
 */
System system_op(SystemOp op, const System& g, const System* h = nullptr, const QMat* psi = nullptr);

/** (Ψ ⊗ id) on level coordinates, base-major. */
QMat lift_base_map(const QMat& psi, std::size_t level_dim);

// ---- generated membership ----

/** One term c·(id ⊗ Φ)(a_gen) of a generated combination. */
struct GeneratedTerm {
  std::size_t gen = 0;
  /** Simplex stem: nonnegative t×c matrix. Operator stem: compression M (s×t, A ↦ M*AM). */
  QCMat morphism;
  Rational coef;
};

struct GeneratedVerdict {
  Outcome outcome = Outcome::Unknown;
  std::vector<GeneratedTerm> terms;
  /** Relative residual allowance of the combination; zero means exact. */
  double tol = 0;
  QVec functional;  // No: φ(x) < 0, nonnegative on the generated level
  std::string oracle;
  std::string reason;
};

/** (id ⊗ Φ)(a) for a morphism between levels of the stem. */
QVec apply_morphism(const Stem& stem, std::size_t base_dim, std::size_t from, std::size_t to,
                    const QCMat& morphism, const QVec& a);

GeneratedVerdict generated_membership(const Stem& stem, std::size_t base_dim,
                                      const std::vector<LevelElement>& gens, std::size_t level,
                                      const QVec& x, const SolveOptions& opt = {});

bool check_generated(const Stem& stem, std::size_t base_dim, const std::vector<LevelElement>& gens,
                     std::size_t level, const QVec& x, const GeneratedVerdict& v);

/**
 * Operator stem side condition for a functional φ at level t: for every
 * generator a at level s, Σ_p A_p ⊗ F_pᵀ is psd, where A_p and F_p are the
 * Hermitian blocks of a and of φ (as a trace pairing).
 */
bool operator_functional_nonneg(std::size_t base_dim, const LevelElement& gen, std::size_t t,
                                const QVec& phi);

// ---- sampled compatibility ----

struct CompatibilityReport {
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::vector<std::string> failures;
};

/** Samples morphisms between materialized levels and checks they map level c into level d. */
CompatibilityReport check_compatibility(System& g, const SolveOptions& opt = {});

}  // namespace conekit
