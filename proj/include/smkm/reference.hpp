// Copyright 2026 The Authors.
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

// Exact optimum by enumeration and the streaming greedy baseline.

#ifndef SMKM_REFERENCE_HPP_
#define SMKM_REFERENCE_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "smkm/ground.hpp"
#include "smkm/matroids.hpp"
#include "smkm/rational.hpp"
#include "smkm/submodular.hpp"

namespace smkm {

// Visits every common independent subset of `candidates` (including the
// empty set) in lexicographic order of sorted member lists. Supersets of
// dependent sets are skipped.
void for_each_common_independent(
    const CommonOracle& oracle, std::span<const ElementId> candidates,
    const std::function<void(const ElementSet&)>& visit);

struct OptResult {
  ElementSet set;
  Rational value;
};

// Maximum-value common independent set; ties go to the lexicographically
// smallest member list. Requires ground size <= 20.
OptResult brute_force_opt(const ValueOracle& f, const CommonOracle& oracle);
OptResult brute_force_opt(const ValueOracle& f,
                          const std::vector<MatroidPtr>& ms);

// Same over an explicit candidate list of any ground size; the caller keeps
// the candidate count small.
OptResult best_subset(const ValueOracle* f, const CommonOracle& oracle,
                      std::span<const ElementId> candidates);

// Largest common independent subset of `candidates`, lexicographic ties.
ElementSet max_cardinality_subset(const CommonOracle& oracle,
                                  std::span<const ElementId> candidates);

// Single pass: keep u when the current solution plus u is common
// independent (and, with require_nonnegative, f(u | solution) >= 0).
ElementSet streaming_greedy(const Stream& stream, const CommonOracle& oracle,
                            const ValueOracle* f = nullptr,
                            bool require_nonnegative = false);

}  // namespace smkm

#endif  // SMKM_REFERENCE_HPP_
