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
#include "smkm/hardgen.hpp"
#include "smkm/reference.hpp"
#include "smkm/streaming.hpp"
#include "smkm/verify.hpp"

namespace smkm {
namespace {

// Smallest t >= 0 with (1+eps)^t >= j^2/eps, by direct multiplication.
unsigned bucket_oracle(std::size_t j, const Rational& eps) {
  const Rational target = Rational(static_cast<unsigned long>(j * j)) / eps;
  Rational power(1);
  unsigned t = 0;
  while (power < target) {
    power *= 1 + eps;
    ++t;
  }
  return t;
}

Rational alg2_factor(const Rational& eps) {
  return (1 - 6 * eps * (1 + eps)) / (2 + eps);
}

Rational alg3_factor(const Rational& eps) {
  return (1 - eps - 6 * eps * (1 + eps)) / (2 + eps);
}

std::shared_ptr<PartitionMatroid> uniform(std::size_t n, std::uint32_t r) {
  return std::make_shared<PartitionMatroid>(std::vector<std::uint32_t>(n, 0),
                                            std::vector<std::uint32_t>{r});
}

TEST_CASE("max bucket matches repeated multiplication") {
  for (const Rational& eps :
       {Rational(1, 4), Rational(1, 10), Rational(1, 20), Rational(1, 8)}) {
    for (std::size_t j = 1; j <= 12; ++j) {
      CHECK(max_bucket(j, eps) == bucket_oracle(j, eps));
    }
  }
  // (5/4)^6 < 4 <= (5/4)^7.
  CHECK(max_bucket(1, Rational(1, 4)) == 7);
}

TEST_CASE("tau grid snapshot") {
  // m = 1, k = 2, |G| = 1, eps = 1/4: powers of two in [1, 32].
  auto grid = TauGrid::live_exponents(Rational(1), 2, 1, Rational(1, 4));
  CHECK(grid == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(TauGrid::within_bound(6, 2, 1, Rational(1, 4)));
  CHECK_FALSE(TauGrid::within_bound(7, 2, 1, Rational(1, 4)));
  CHECK(TauGrid::live_exponents(Rational(0), 2, 1, Rational(1, 4)).empty());
  // Non-power-of-two m rounds the lower end up.
  auto odd = TauGrid::live_exponents(Rational(3), 1, 1, Rational(1, 2));
  CHECK(odd == std::vector<int>{2, 3});
}

TEST_CASE("rank tracker follows greedy rank") {
  HiddenChainSystem hc(2, 3, {1});
  RankTracker rt(hc.matroids());
  CHECK(rt.min_rank() == 0);
  rt.add(0);
  CHECK(rt.rank(0) == 1);
  rt.add(2);
  // M_1 caps block 1 at one element; 2 is in block 1 too.
  CHECK(rt.rank(0) == 1);
  CHECK(rt.rank(1) == 1);
  // u_1 = 1 is free in M_2.
  rt.add(1);
  CHECK(rt.rank(1) == 2);
  CHECK(rt.min_rank() == 1);
}

TEST_CASE("argument checks") {
  CardinalityFn f(3);
  std::vector<MatroidPtr> ms{uniform(3, 1)};
  Stream s({0, 1, 2}, 3);
  CHECK_THROWS_AS(run_alg2(s, f, ms, Rational(1, 7), Rational(1), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_alg2(s, f, ms, Rational(0), Rational(1), 1),
                  std::invalid_argument);
  CutFn cut(3, {{0, 1, Rational(1)}});
  CHECK_THROWS_AS(run_alg2(s, cut, ms, Rational(1, 10), Rational(1), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_streaming(s, cut, ms, Rational(1, 10), true),
                  std::invalid_argument);
}

TEST_CASE("rank one with cardinality picks one element") {
  CardinalityFn f(4);
  std::vector<MatroidPtr> ms{uniform(4, 1)};
  Stream s({2, 0, 3, 1}, 4);
  RunResult r = run_alg2(s, f, ms, Rational(1, 10), Rational(1), 1);
  CHECK(r.output.size() == 1);
  CHECK(r.value == 1);
}

TEST_CASE("an identically zero objective gives a feasible zero output") {
  CutFn zero(4, {});
  std::vector<MatroidPtr> ms{uniform(4, 2)};
  Stream s({0, 1, 2, 3}, 4);
  RunResult r = run_alg3(s, zero, ms, Rational(1, 10), Rational(1), 2);
  CHECK(r.value == 0);
  CHECK(common_independent(ms, r.output));
}

TEST_CASE("zero iterations keep a single branch") {
  CardinalityFn f(4);
  std::vector<MatroidPtr> ms{uniform(4, 2)};
  Stream s({0, 1, 2, 3}, 4);
  RunResult r = run_alg2(s, f, ms, Rational(1, 8), Rational(2), 0);
  CHECK(r.output.empty());
  CHECK(r.metrics.peak_live_branches == 1);
}

TEST_CASE("single element streams") {
  for (std::uint32_t k = 1; k <= 3; ++k) {
    std::vector<MatroidPtr> ms;
    for (std::uint32_t i = 0; i < k; ++i) ms.push_back(uniform(5, 2));
    CardinalityFn f(5);
    RunResult r =
        run_streaming(Stream({3}, 5), f, ms, Rational(1, 10), true);
    CHECK(r.output == ElementSet{3});
    CHECK(r.value == 1);
  }
  CardinalityFn f(5);
  RunResult empty =
      run_streaming(Stream({}, 5), f, {uniform(5, 2)}, Rational(1, 10), true);
  CHECK(empty.output.empty());
}

TEST_CASE("iteration growth stays within the bucket count times marks") {
  // k = 2 partition matroids of rank 1, one iteration.
  std::vector<MatroidPtr> ms{uniform(5, 1), uniform(5, 1)};
  CardinalityFn f(5);
  Stream s({4, 1, 0, 3, 2}, 5);
  const Rational eps(1, 8);
  RunResult r = run_alg2(s, f, ms, eps, Rational(1), 1);
  REQUIRE(r.metrics.spawned_per_iteration.size() >= 1);
  const std::uint64_t grown = r.metrics.spawned_per_iteration[0];
  CHECK(grown <= (max_bucket(1, eps) + 2) * r.metrics.max_fe_marks);
  // Every marginal is 1 = tau, so only bucket 0 is fed; its first element
  // marks once, and the skip guess adds the second child.
  CHECK(grown == 2);
  CHECK(r.metrics.max_fe_marks == 1);
  CHECK(r.value == 1);
}

TEST_CASE("known tau guarantees against brute force") {
  const Rational eps(1, 20);
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(mix64(seed + 100));
    const auto kind = seed % 2 ? ObjectiveKind::kCut : ObjectiveKind::kCoverage;
    Instance inst = gen_random_partition(9, 2, kind, rng);
    OptResult opt = brute_force_opt(*inst.objective, inst.matroids);
    if (opt.value == 0) continue;
    ++checked;
    RunResult r3 = run_alg3(inst.stream, *inst.objective, inst.matroids, eps,
                            opt.value, opt.set.size());
    CHECK(common_independent(inst.matroids, r3.output));
    CHECK(r3.value == inst.objective->value(r3.output));
    CHECK(r3.value >= alg3_factor(eps) * opt.value);
    if (inst.objective->monotone()) {
      RunResult r2 = run_alg2(inst.stream, *inst.objective, inst.matroids,
                              eps, opt.value, opt.set.size());
      CHECK(common_independent(inst.matroids, r2.output));
      CHECK(r2.value >= alg2_factor(eps) * opt.value);
      // run_alg3 on a monotone objective meets the run_alg2 bound.
      CHECK(r3.value >= alg2_factor(eps) * opt.value);
    }
  }
  CHECK(checked >= 30);
}

TEST_CASE("wrong tau still gives feasible outputs") {
  Rng rng(77);
  Instance inst = gen_random_partition(10, 3, ObjectiveKind::kCut, rng);
  for (const Rational& tau : {Rational(1, 3), Rational(5), Rational(1000)}) {
    RunResult r = run_alg3(inst.stream, *inst.objective, inst.matroids,
                           Rational(1, 10), tau, 3);
    CHECK(common_independent(inst.matroids, r.output));
  }
}

TEST_CASE("pruning unfilled groups never beats picking among them") {
  const Rational eps(1, 10);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    Instance inst = gen_random_partition(8, 2, ObjectiveKind::kCut, rng);
    OptResult opt = brute_force_opt(*inst.objective, inst.matroids);
    if (opt.value == 0) continue;
    StreamingConfig prune;
    prune.prune_unfilled = true;
    RunResult a = run_alg3(inst.stream, *inst.objective, inst.matroids, eps,
                           opt.value, opt.set.size());
    RunResult b = run_alg3(inst.stream, *inst.objective, inst.matroids, eps,
                           opt.value, opt.set.size(), prune);
    CHECK(a.value >= b.value);
    CHECK(common_independent(inst.matroids, b.output));
  }
}

TEST_CASE("halving eps does not shrink peak branches") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Rng rng(seed + 40);
    Instance inst = gen_random_partition(8, 2, ObjectiveKind::kCoverage, rng);
    OptResult opt = brute_force_opt(*inst.objective, inst.matroids);
    std::size_t last = 0;
    for (const Rational& eps : {Rational(1, 8), Rational(1, 16)}) {
      RunResult r = run_alg2(inst.stream, *inst.objective, inst.matroids, eps,
                             opt.value, opt.set.size());
      CHECK(r.metrics.peak_live_branches >= last);
      last = r.metrics.peak_live_branches;
    }
  }
}

TEST_CASE("branch cap fails loudly") {
  Rng rng(9);
  Instance inst = gen_random_partition(10, 2, ObjectiveKind::kCoverage, rng);
  StreamingConfig tight;
  tight.branch_cap = 2;
  CHECK_THROWS_AS(run_streaming(inst.stream, *inst.objective, inst.matroids,
                                Rational(1, 10), true, tight),
                  BranchBudgetExceeded);
}

TEST_CASE("pipeline grid stays within its bound and replays") {
  auto corpus = build_corpus(1, 12);
  const Rational eps(1, 20);
  for (const auto& e : corpus) {
    RunResult a;
    PropertyReport g = check_guarantee(e, eps, &a);
    CHECK(g.ok());
    CHECK(check_grid_bound(e.inst, a, eps).ok());
    RunResult b = run_streaming(e.inst.stream, *e.inst.objective,
                                e.inst.matroids, eps, e.monotone);
    CHECK(a.output == b.output);
    CHECK(a.path == b.path);
    CHECK(a.metrics.grid_history == b.metrics.grid_history);
  }
}

}  // namespace
}  // namespace smkm
