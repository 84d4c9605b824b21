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

namespace conekit {

/**
 * Level k of the one-dimensional TFT stem over V = ℝ^m: the space
 * V^{⊗k} ⊗ (V′)^{⊗k}, flattened with the k V-indices first and the k
 * V′-indices after them, row-major (last index fastest).
 */
struct TftLevel {
  std::size_t m = 2;
  std::size_t k = 1;
  std::size_t ambient() const;
};

struct TftCaps {
  std::size_t max_k = 4;
  std::size_t max_m = 4;
};

/** Permutations of {0..k-1} in lexicographic order. */
std::vector<std::vector<std::size_t>> permutations(std::size_t k);

/**
 * 0/1 vector with a one exactly at the multi-indices (i, j) with
 * i_a = j_{σ(a)} for every a. As a generator it is the product of maximally
 * entangled states along the pairing; as a functional it is the matching
 * evaluation (contraction) map.
 */
QVec pairing_vector(std::size_t m, const std::vector<std::size_t>& sigma);

ConePtr b_cone(const TftLevel& level, const TftCaps& caps = {});
ConePtr a_cone(const TftLevel& level, const TftCaps& caps = {});

/** x ⊗ y for x at level k and y at level l, re-indexed to level k+l. */
QVec merge_levels(std::size_t m, std::size_t k, std::size_t l, const QVec& x, const QVec& y);

struct TftDualityReport {
  TftLevel level;
  std::size_t generators = 0;
  std::size_t extreme = 0;
  std::size_t rank = 0;
  std::size_t lineality = 0;
  bool b_in_a = false;
  bool dual_a_is_b = false;
  bool dual_b_is_a = false;
  bool b_not_full = false;
  bool a_not_sharp = false;
  bool all_pass() const;
  std::string text() const;
};

TftDualityReport verify_tft_duality(const TftLevel& level, const SolveOptions& opt = {},
                                    const TftCaps& caps = {});

struct AssumptionWitness {
  bool found = false;
  std::size_t m = 2, k = 1, l = 1;
  QVec s, t;  // members of A(k) and A(l)
  QVec x;     // s ⊗ t at level k+l
  std::size_t halfspace = 0;  // index of the violated A(k+l) functional
  std::vector<std::size_t> sigma;
  Rational value;  // functional at x, negative
  std::size_t attempts = 0;
  std::string reason;
};

/** Random search for s ∈ A(k), t ∈ A(l) with s ⊗ t outside A(k+l). */
AssumptionWitness assumption_failure_witness(std::size_t m, std::size_t k, std::size_t l,
                                             const SolveOptions& opt = {});

/** Re-checks s ∈ A(k), t ∈ A(l), x = s⊗t and the violated functional. */
bool check_assumption_witness(const AssumptionWitness& w);

}  // namespace conekit
