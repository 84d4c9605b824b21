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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace conekit {

/** Worker count: CONEKIT_THREADS if set and positive, else hardware concurrency. */
std::size_t thread_budget();

/** Runs fn(i) for i in [0, n); results must not depend on scheduling. */
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

/** Independent generator for stream `index` derived from `seed` (splitmix64). */
std::mt19937_64 rng_stream(std::uint64_t seed, std::uint64_t index);

}  // namespace conekit
