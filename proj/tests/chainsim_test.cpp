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
#include "smkm/chainsim.hpp"
#include "smkm/hardgen.hpp"

namespace smkm {
namespace {

void check_hops(const ProtocolResult& r, std::uint32_t n) {
  std::uint64_t peak = 0;
  for (const Hop& h : r.transcript.hops) {
    CHECK(h.bits == 8 * h.payload.size() + h.indices.size() * index_bits(n));
    peak = std::max(peak, h.bits);
  }
  CHECK(meter(r.transcript) == peak);
  CHECK(r.transcript.verdict == r.verdict);
}

// Stores its stream and outputs a random feasible subset of it.
class RandomFeasibleInner : public InnerAlgorithm {
 public:
  explicit RandomFeasibleInner(std::uint64_t seed) : seed_(seed) {}
  std::string name() const override { return "random"; }
  void process(ElementId u, const InnerContext&) override {
    stored_.push_back(u);
  }
  ElementSet output(const InnerContext& ctx) const override {
    Rng rng(mix64(seed_ ^ stored_.size()));
    std::vector<ElementId> order = stored_;
    rng.shuffle(order);
    ElementSet out;
    for (ElementId u : order) {
      if (rng.coin() && ctx.oracle->is_independent(out.with(u))) {
        out = out.with(u);
      }
    }
    return out;
  }
  std::vector<std::uint8_t> save() const override {
    return encode_ids(3, stored_);
  }
  void load(std::span<const std::uint8_t> bytes) override {
    stored_ = decode_ids(3, bytes);
  }

 private:
  std::uint64_t seed_;
  std::vector<ElementId> stored_;
};

TEST_CASE("chain instances enforce the promise") {
  // p = 3, n = 2; x^1_{t^2} and x^2_{t^3} must equal the case bit.
  ChainInstance ok(3, 2, {{1, 0}, {0, 1}}, {1, 2}, 1);
  CHECK(ok.bit(1, 1));
  CHECK(ok.index(3) == 2);
  CHECK_THROWS_AS(ChainInstance(3, 2, {{1, 0}, {0, 1}}, {2, 2}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(ChainInstance(3, 2, {{1, 0}}, {1, 2}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(ChainInstance(3, 2, {{1, 0}, {0, 1}}, {3, 2}, 1),
                  std::invalid_argument);
}

TEST_CASE("sampled instances keep the promise") {
  Rng rng(6);
  int ones = 0;
  for (int trial = 0; trial < 200; ++trial) {
    ChainInstance c = sample_chain(4, 8, rng);
    ones += c.chain_case();
    for (std::uint32_t i = 1; i < 4; ++i) {
      CHECK(c.bit(i, c.index(i + 1)) == (c.chain_case() == 1));
    }
  }
  CHECK(ones > 60);
  CHECK(ones < 140);
  ChainInstance forced = sample_chain(2, 5, rng, 0);
  CHECK(forced.chain_case() == 0);
}

TEST_CASE("index widths and copy counts") {
  CHECK(index_bits(1) == 0);
  CHECK(index_bits(2) == 1);
  CHECK(index_bits(16) == 4);
  CHECK(index_bits(17) == 5);
  CHECK(boosted_copies(4, Rational(1, 2)) == 64);
  CHECK(boosted_copies(3, Rational(2, 5)) == 45);
  CHECK(meter(Transcript{}) == 0);
}

TEST_CASE("state encoding round trips and rejects foreign bytes") {
  std::vector<ElementId> ids{7, 0, 300000};
  auto bytes = encode_ids(2, ids);
  CHECK(bytes.size() == 2 + 4 + 12);
  CHECK(bytes[0] == 1);
  CHECK(bytes[1] == 2);
  // Little-endian count.
  CHECK(bytes[2] == 3);
  CHECK(decode_ids(2, bytes) == ids);
  CHECK_THROWS_AS(decode_ids(1, bytes), std::invalid_argument);
  auto truncated = bytes;
  truncated.pop_back();
  CHECK_THROWS_AS(decode_ids(2, truncated), std::invalid_argument);
  auto versioned = bytes;
  versioned[0] = 9;
  CHECK_THROWS_AS(decode_ids(2, versioned), std::invalid_argument);

  GreedyInner g;
  g.load(encode_ids(2, {1, 4}));
  CHECK(g.save() == encode_ids(2, {1, 4}));
  CHECK_THROWS_AS(g.load(encode_ids(1, {1})), std::invalid_argument);
  CHECK_THROWS_AS(make_inner("random"), std::invalid_argument);
}

TEST_CASE("capped greedy respects its caps") {
  CappedGreedy g([](ElementId u) { return u % 2; }, {1, 2});
  MatroidIntersection oracle({std::make_shared<FreeMatroid>(10)});
  InnerContext ctx{&oracle, nullptr};
  for (ElementId u = 0; u < 10; ++u) g.process(u, ctx);
  CHECK(g.output(ctx) == ElementSet{0, 1, 3});
}

TEST_CASE("protocol 1 with the exact inner algorithm decides both cases") {
  Rng rng(21);
  auto exact = make_inner("exact");
  for (int trial = 0; trial < 30; ++trial) {
    const int want = trial % 2;
    ChainInstance c = sample_chain(3, 6, rng, want);
    ProtocolResult r = run_protocol1(c, exact, 2, trial);
    CHECK(r.verdict == want);
    CHECK(r.transcript.hops.size() == 2);
    CHECK(r.outputs.size() == 2);
    check_hops(r, 6);
  }
}

TEST_CASE("protocol 1 with greedy never errs on the 0-case") {
  Rng rng(22);
  auto greedy = make_inner("greedy");
  for (int trial = 0; trial < 30; ++trial) {
    ChainInstance c = sample_chain(4, 8, rng, 0);
    CHECK(run_protocol1(c, greedy, 3, trial).verdict == 0);
  }
}

TEST_CASE("protocol 1 greedy transcript size is pinned") {
  // k = 4, m = 16: the largest hop carries one stored id (4 + 10 bytes)
  // and two 4-bit indices.
  Rng rng(1);
  ChainInstance c = sample_chain(4, 16, rng, 1);
  ProtocolResult r = run_protocol1(c, make_inner("greedy"), 1, 1);
  CHECK(meter(r.transcript) == 120);
  CHECK(meter(r.transcript) <= 8 * (4 + 6 + 4 * 4) + 2 * index_bits(16));
  // Greedy stores the first streamed element and misses the chain.
  CHECK(r.verdict == 0);
}

TEST_CASE("protocol 1 says 0 on the 0-case for any feasible outputs") {
  Rng rng(25);
  InnerFactory random = [](std::uint64_t seed) {
    return std::make_unique<RandomFeasibleInner>(seed);
  };
  std::size_t nonempty = 0;
  for (int trial = 0; trial < 100; ++trial) {
    ChainInstance c = sample_chain(3 + trial % 3, 6, rng, 0);
    ProtocolResult r = run_protocol1(c, random, 4, trial);
    CHECK(r.verdict == 0);
    for (const auto& s : r.outputs) nonempty += s.empty() ? 0 : 1;
  }
  CHECK(nonempty > 100);
}

TEST_CASE("coordinate tree numbering") {
  CoordinateTree t{3, 4, 5, 1};
  CHECK(t.level_offset(1) == 0);
  CHECK(t.level_offset(2) == 1);
  CHECK(t.node_count() == 5);
  CHECK(t.node({}) == 0);
  CHECK(t.node({3}) == 3);
  CHECK_THROWS_AS(t.node({5}), std::out_of_range);
  // Children avoid the hidden vector of their parent in every coordinate.
  auto root = t.layer({});
  auto child = t.layer({2});
  for (const auto& v : child) {
    for (std::size_t c = 0; c < 5; ++c) CHECK(v[c] != root[1][c]);
  }
  CHECK(t.layer({2}) == child);
}

TEST_CASE("tree oracle refuses nodes it was not given") {
  CoordinateTreeOracle oracle(3, 2);
  oracle.add_node(0, {{1, 1}, {2, 2}});
  CHECK(oracle.is_independent(ElementSet{0}));
  CHECK(oracle.is_independent(ElementSet{0, 1}));
  // Element 2 is vector 0 of node 1 and shares coordinate 1 with element 0.
  oracle.add_node(1, {{1, 2}, {2, 1}});
  CHECK_FALSE(oracle.is_independent(ElementSet{0, 2}));
  CHECK_THROWS_AS(oracle.is_independent(ElementSet{4}), std::logic_error);
}

TEST_CASE("protocol 2 lazy and exhaustive trees agree") {
  Rng rng(23);
  auto exact = make_inner("exact");
  for (int trial = 0; trial < 10; ++trial) {
    const int want = trial % 2;
    ChainInstance c = sample_chain(3, 4, rng, want);
    ProtocolResult lazy = run_protocol2(c, 24, exact, trial, TreeMode::kLazy);
    ProtocolResult full =
        run_protocol2(c, 24, exact, trial, TreeMode::kExhaustive);
    CHECK(lazy.verdict == full.verdict);
    CHECK(lazy.outputs == full.outputs);
    if (want == 1) CHECK(lazy.verdict == 1);
    check_hops(lazy, 4);
    // Hop r forwards t^2..t^r.
    REQUIRE(lazy.transcript.hops.size() == 2);
    for (std::size_t r = 1; r <= 2; ++r) {
      CHECK(lazy.transcript.hops[r - 1].indices.size() == r - 1);
    }
  }
  ChainInstance big = sample_chain(5, 100, rng);
  CHECK_THROWS_AS(run_protocol2(big, 4, exact, 0), std::invalid_argument);
}

TEST_CASE("protocol 2 always finds the 1-case at k = 12") {
  Rng rng(26);
  auto exact = make_inner("exact");
  std::size_t correct = 0;
  for (int trial = 0; trial < 100; ++trial) {
    ChainInstance c = sample_chain(3, 4, rng, 1);
    correct += run_protocol2(c, 12, exact, trial).verdict == 1 ? 1 : 0;
  }
  CHECK(correct == 100);
}

TEST_CASE("protocol 3 with exact storage decides both cases") {
  Rng rng(24);
  std::vector<BipartiteLayer> layers{to_bipartite({4, {{0, 1}, {2, 3}}}),
                                     to_bipartite({4, {{0, 1}, {2, 3}}})};
  auto exact = make_inner("exact");
  for (int trial = 0; trial < 10; ++trial) {
    const int want = trial % 2;
    ChainInstance c = sample_chain(3, 3, rng, want);
    ProtocolResult r =
        run_protocol3(c, layers, Rational(1, 4), Rational(3), exact, trial);
    CHECK(r.verdict == want);
    check_hops(r, 3);
  }
}

}  // namespace
}  // namespace smkm
