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

// Online marking for the first-element problem over k matroids.

#ifndef SMKM_FEALG_HPP_
#define SMKM_FEALG_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "smkm/ground.hpp"
#include "smkm/matroids.hpp"

namespace smkm {

// Sum_{t=0}^{rho*k-1} k^t, saturating at UINT64_MAX.
std::uint64_t fe_mark_bound(std::uint64_t k, std::uint64_t rho);

// Keeps a collection of k-tuples of sets, tuple entry i independent in M_i.
// An arriving element that fits every entry of a tuple marks itself and
// splits the tuple into k tuples, one per entry it is added to.
//
// Invariants, asserted after every element: at most fe_mark_bound(k, rho)
// marked elements and at most 1 + k * fe_mark_bound(k, rho) tuples, where
// rho bounds the rank of every M_i.
class FeState {
 public:
  // With `dedup`, equal tuples are merged; marking decisions are unchanged.
  FeState(std::vector<MatroidPtr> ms, std::size_t rho, bool dedup = false);

  // Returns whether u was marked. Throws std::logic_error when u was
  // processed before or a budget is exceeded.
  bool process(ElementId u);

  std::size_t k() const { return ms_.size(); }
  std::size_t rho() const { return rho_; }
  std::uint64_t mark_budget() const { return budget_; }
  std::size_t state_count() const { return states_.size(); }
  std::size_t marked_count() const { return marked_.size(); }
  std::size_t processed_count() const { return processed_; }
  const std::vector<ElementId>& marked() const { return marked_; }

 private:
  struct Tuple {
    std::vector<ElementSet> sets;
    friend bool operator==(const Tuple&, const Tuple&) = default;
    friend auto operator<=>(const Tuple& a, const Tuple& b) {
      return a.sets <=> b.sets;
    }
  };

  std::vector<MatroidPtr> ms_;
  std::size_t rho_;
  bool dedup_;
  std::uint64_t budget_;
  std::vector<Tuple> states_;
  std::vector<ElementId> marked_;
  std::vector<ElementId> seen_;
  std::size_t processed_ = 0;
};

}  // namespace smkm

#endif  // SMKM_FEALG_HPP_
