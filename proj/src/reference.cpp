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

#include "smkm/reference.hpp"

#include <algorithm>
#include <stdexcept>

namespace smkm {
namespace {

void extend(const CommonOracle& oracle, std::span<const ElementId> cand,
            std::size_t from, const ElementSet& current,
            const std::function<void(const ElementSet&)>& visit) {
  visit(current);
  for (std::size_t i = from; i < cand.size(); ++i) {
    ElementSet next = current.with(cand[i]);
    if (oracle.is_independent(next)) extend(oracle, cand, i + 1, next, visit);
  }
}

std::vector<ElementId> sorted_unique(std::span<const ElementId> ids) {
  std::vector<ElementId> v(ids.begin(), ids.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

void for_each_common_independent(
    const CommonOracle& oracle, std::span<const ElementId> candidates,
    const std::function<void(const ElementSet&)>& visit) {
  std::vector<ElementId> cand = sorted_unique(candidates);
  extend(oracle, cand, 0, ElementSet{}, visit);
}

OptResult best_subset(const ValueOracle* f, const CommonOracle& oracle,
                      std::span<const ElementId> candidates) {
  OptResult best{ElementSet{}, f ? f->value(ElementSet{}) : Rational(0)};
  // Visit order is lexicographic, so keeping the first maximum breaks ties
  // toward the smallest member list.
  for_each_common_independent(oracle, candidates, [&](const ElementSet& s) {
    Rational v = f ? f->value(s) : Rational(static_cast<unsigned long>(s.size()));
    if (v > best.value) best = OptResult{s, v};
  });
  return best;
}

OptResult brute_force_opt(const ValueOracle& f, const CommonOracle& oracle) {
  const std::size_t n = oracle.ground_size();
  if (n > 20) {
    throw std::invalid_argument("brute_force_opt needs n <= 20, got " +
                                std::to_string(n));
  }
  if (f.ground_size() != n) {
    throw std::invalid_argument("objective and constraints differ in n");
  }
  std::vector<ElementId> all(n);
  for (std::size_t u = 0; u < n; ++u) all[u] = static_cast<ElementId>(u);
  return best_subset(&f, oracle, all);
}

OptResult brute_force_opt(const ValueOracle& f,
                          const std::vector<MatroidPtr>& ms) {
  return brute_force_opt(f, MatroidIntersection(ms));
}

ElementSet max_cardinality_subset(const CommonOracle& oracle,
                                  std::span<const ElementId> candidates) {
  return best_subset(nullptr, oracle, candidates).set;
}

ElementSet streaming_greedy(const Stream& stream, const CommonOracle& oracle,
                            const ValueOracle* f, bool require_nonnegative) {
  ElementSet out;
  StreamCursor cursor(stream);
  while (auto u = cursor.next()) {
    ElementSet next = out.with(*u);
    if (!oracle.is_independent(next)) continue;
    if (f && require_nonnegative && f->value(next) < f->value(out)) continue;
    out = std::move(next);
  }
  return out;
}

}  // namespace smkm
