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

#include <cstdint>
#include <string>

#include "conekit/linalg.hpp"
#include "conekit/parallel.hpp"

namespace conekit {

enum class Outcome { Yes, No, Unknown };

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Yes:
      return "yes";
    case Outcome::No:
      return "no";
    default:
      return "unknown";
  }
}

/** Knobs shared by every solver. */
struct SolveOptions {
  bool exact = true;
  double tol = kDefaultTol;
  std::uint64_t seed = kDefaultSeed;
  int restarts = 32;
  int iterations = 200;
  /** Rounds for search-style procedures (fitting, sampling). */
  int budget = 200;
  /** Cap on the pointed dimension handled by double description. */
  std::size_t dd_cap = 12;
  /** Morphism samples per level pair in system searches. */
  int samples = 64;
};

}  // namespace conekit
