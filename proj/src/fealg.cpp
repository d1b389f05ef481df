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

#include "smkm/fealg.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace smkm {

std::uint64_t fe_mark_bound(std::uint64_t k, std::uint64_t rho) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  if (k == 0) throw std::invalid_argument("fe_mark_bound needs k >= 1");
  std::uint64_t sum = 0;
  std::uint64_t term = 1;
  const std::uint64_t terms = rho * k;
  for (std::uint64_t t = 0; t < terms; ++t) {
    if (sum > kMax - term) return kMax;
    sum += term;
    if (k > 1 && term > kMax / k) {
      // Every later term saturates the sum.
      return t + 1 < terms ? kMax : sum;
    }
    term *= k;
  }
  return sum;
}

FeState::FeState(std::vector<MatroidPtr> ms, std::size_t rho, bool dedup)
    : ms_(std::move(ms)), rho_(rho), dedup_(dedup) {
  if (ms_.empty()) throw std::invalid_argument("FEAlg needs k >= 1 matroids");
  budget_ = fe_mark_bound(ms_.size(), rho_);
  states_.push_back(Tuple{std::vector<ElementSet>(ms_.size())});
}

bool FeState::process(ElementId u) {
  auto pos = std::lower_bound(seen_.begin(), seen_.end(), u);
  if (pos != seen_.end() && *pos == u) {
    throw std::logic_error("FEAlg fed element " + std::to_string(u) + " twice");
  }
  seen_.insert(pos, u);
  ++processed_;

  const std::size_t k = ms_.size();
  std::vector<Tuple> next;
  next.reserve(states_.size());
  bool marked = false;
  for (Tuple& s : states_) {
    std::vector<ElementSet> grown(k);
    bool fits = true;
    for (std::size_t i = 0; i < k && fits; ++i) {
      grown[i] = s.sets[i].with(u);
      fits = ms_[i]->is_independent(grown[i]);
    }
    if (!fits) {
      next.push_back(std::move(s));
      continue;
    }
    marked = true;
    for (std::size_t i = 0; i < k; ++i) {
      Tuple child = s;
      child.sets[i] = std::move(grown[i]);
      next.push_back(std::move(child));
    }
  }
  if (dedup_) {
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
  }
  states_ = std::move(next);
  if (marked) marked_.push_back(u);

  if (marked_.size() > budget_) {
    throw std::logic_error("FEAlg mark budget exceeded; rank bound too small");
  }
  const std::uint64_t state_budget =
      budget_ > (std::numeric_limits<std::uint64_t>::max() - 1) / k
          ? std::numeric_limits<std::uint64_t>::max()
          : 1 + k * budget_;
  if (states_.size() > state_budget) {
    throw std::logic_error("FEAlg state budget exceeded; rank bound too small");
  }
  return marked;
}

}  // namespace smkm
