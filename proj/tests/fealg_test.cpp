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

#include <cstdint>
#include <vector>

#include "doctest.h"
#include "smkm/fealg.hpp"
#include "smkm/hardgen.hpp"
#include "smkm/reference.hpp"
#include "smkm/verify.hpp"

namespace smkm {
namespace {

// Direct power sum, no saturation; small arguments only.
std::uint64_t power_sum(std::uint64_t k, std::uint64_t rho) {
  std::uint64_t sum = 0;
  std::uint64_t term = 1;
  for (std::uint64_t t = 0; t < k * rho; ++t) {
    sum += term;
    term *= k;
  }
  return sum;
}

// Tuples of bitmasks, split without merging; the reference for FeState.
struct MaskFe {
  std::vector<MatroidPtr> ms;
  std::vector<std::vector<std::uint64_t>> tuples{
      std::vector<std::vector<std::uint64_t>>(1)};

  explicit MaskFe(std::vector<MatroidPtr> m) : ms(std::move(m)) {
    tuples[0].assign(ms.size(), 0);
  }

  bool process(ElementId u) {
    std::vector<std::vector<std::uint64_t>> next;
    bool marked = false;
    for (const auto& t : tuples) {
      bool fits = true;
      for (std::size_t i = 0; i < ms.size(); ++i) {
        fits = fits && ms[i]->is_independent(
                           ElementSet::from_mask(t[i] | (1ull << u)));
      }
      if (!fits) {
        next.push_back(t);
        continue;
      }
      marked = true;
      for (std::size_t i = 0; i < ms.size(); ++i) {
        auto child = t;
        child[i] |= 1ull << u;
        next.push_back(child);
      }
    }
    tuples = std::move(next);
    return marked;
  }
};

TEST_CASE("mark bound values") {
  CHECK(fe_mark_bound(2, 2) == 15);
  CHECK(fe_mark_bound(1, 3) == 3);
  CHECK(fe_mark_bound(3, 0) == 0);
  CHECK(fe_mark_bound(3, 2) == 364);
  for (std::uint64_t k = 1; k <= 4; ++k) {
    for (std::uint64_t rho = 0; rho <= 3; ++rho) {
      CHECK(fe_mark_bound(k, rho) == power_sum(k, rho));
    }
  }
  CHECK(fe_mark_bound(2, 64) == UINT64_MAX);
  CHECK_THROWS_AS(fe_mark_bound(0, 1), std::invalid_argument);
}

TEST_CASE("first element marks and splits into k tuples") {
  std::vector<MatroidPtr> ms{std::make_shared<FreeMatroid>(4),
                             std::make_shared<FreeMatroid>(4),
                             std::make_shared<FreeMatroid>(4)};
  FeState fe(ms, 4);
  CHECK(fe.state_count() == 1);
  CHECK(fe.process(2));
  CHECK(fe.state_count() == 3);
  CHECK(fe.marked() == std::vector<ElementId>{2});
  CHECK_THROWS_AS(fe.process(2), std::logic_error);
}

TEST_CASE("loops never mark") {
  // Element 0 sits alone in a zero-capacity block.
  auto loopy = std::make_shared<PartitionMatroid>(
      std::vector<std::uint32_t>{0, 1, 1}, std::vector<std::uint32_t>{0, 1});
  FeState fe({loopy, std::make_shared<FreeMatroid>(3)}, 2);
  CHECK_FALSE(fe.process(0));
  CHECK(fe.state_count() == 1);
  CHECK(fe.process(1));
  CHECK(fe.state_count() == 2);
  // Element 2 only fits the tuple that placed 1 in the free matroid.
  CHECK(fe.process(2));
  CHECK(fe.state_count() == 3);
}

TEST_CASE("a rank bound that is too small fails loudly") {
  std::vector<MatroidPtr> ms{std::make_shared<FreeMatroid>(8)};
  FeState fe(ms, 1);
  CHECK(fe.process(0));
  CHECK_THROWS_AS(fe.process(1), std::logic_error);
}

TEST_CASE("matches the bitmask reference on random partition instances") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(mix64(seed));
    const std::uint32_t k = 1 + static_cast<std::uint32_t>(seed % 3);
    Instance inst = gen_random_partition(9, k, ObjectiveKind::kCoverage, rng);
    std::size_t rho = 0;
    for (const auto& m : inst.matroids) rho = std::max(rho, full_rank(*m));
    FeState fe(inst.matroids, rho);
    FeState merged(inst.matroids, rho, true);
    MaskFe ref(inst.matroids);
    for (ElementId u : inst.stream.order()) {
      const bool want = ref.process(u);
      CHECK(fe.process(u) == want);
      CHECK(merged.process(u) == want);
      CHECK(fe.state_count() == ref.tuples.size());
      CHECK(merged.state_count() <= fe.state_count());
    }
    CHECK(fe.marked_count() <= fe_mark_bound(k, rho));
    CHECK(fe.state_count() <= 1 + k * fe_mark_bound(k, rho));
  }
}

TEST_CASE("contract holds on hidden-chain streams") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Rng rng(seed);
    Instance inst = gen_hidden_chain(3, 4, rng).to_instance(seed);
    PropertyReport r = check_fealg_contract(inst);
    CHECK(r.trials > 0);
    CHECK(r.ok());
  }
}

}  // namespace
}  // namespace smkm
