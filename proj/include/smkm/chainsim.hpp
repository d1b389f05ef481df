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

// Simulator for the multi-player chain problem: instance sampling, metered
// one-way messages and the reductions that run a streaming algorithm across
// the players.

#ifndef SMKM_CHAINSIM_HPP_
#define SMKM_CHAINSIM_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smkm/ground.hpp"
#include "smkm/matroids.hpp"
#include "smkm/rational.hpp"
#include "smkm/submodular.hpp"

namespace smkm {

// Player i < p holds the bit string x^i, player i >= 2 holds the index t^i.
// Promise: x^i_{t^{i+1}} equals the case bit for every i < p. All indices
// are 1-based.
class ChainInstance {
 public:
  // x has p-1 strings of length n; t holds t^2..t^p. Throws
  // std::invalid_argument on bad sizes or a broken promise.
  ChainInstance(std::uint32_t p, std::uint32_t n,
                std::vector<std::vector<std::uint8_t>> x,
                std::vector<std::uint32_t> t, int chain_case);

  std::uint32_t p() const { return p_; }
  std::uint32_t n() const { return n_; }
  int chain_case() const { return case_; }
  bool bit(std::uint32_t i, std::uint32_t j) const;
  std::uint32_t index(std::uint32_t i) const;

 private:
  std::uint32_t p_;
  std::uint32_t n_;
  std::vector<std::vector<std::uint8_t>> x_;
  std::vector<std::uint32_t> t_;
  int case_;
};

// Requires p >= 2 and n >= 1. The case is a fair coin unless forced.
ChainInstance sample_chain(std::uint32_t p, std::uint32_t n, Rng& rng,
                           std::optional<int> forced_case = std::nullopt);

struct Hop {
  std::vector<std::uint8_t> payload;
  // Indices t^2..t^i forwarded with the message from player i.
  std::vector<std::uint32_t> indices;
  std::uint64_t bits = 0;
};

struct Transcript {
  std::vector<Hop> hops;
  int verdict = 0;
};

// Largest hop in bits; 0 for an empty transcript.
std::uint64_t meter(const Transcript& t);

// Bits to write one index in 1..n.
std::uint32_t index_bits(std::uint32_t n);

// What a player can ask about the elements it has seen so far. `objective`
// is null for cardinality.
struct InnerContext {
  const CommonOracle* oracle = nullptr;
  const ValueOracle* objective = nullptr;
};

// A streaming algorithm whose whole memory is its serialized state. Each
// player rebuilds the algorithm from the received bytes.
class InnerAlgorithm {
 public:
  virtual ~InnerAlgorithm() = default;
  virtual std::string name() const = 0;
  virtual void process(ElementId u, const InnerContext& ctx) = 0;
  virtual ElementSet output(const InnerContext& ctx) const = 0;
  virtual std::vector<std::uint8_t> save() const = 0;
  // Throws std::invalid_argument on bytes it did not write.
  virtual void load(std::span<const std::uint8_t> bytes) = 0;
};

using InnerFactory =
    std::function<std::unique_ptr<InnerAlgorithm>(std::uint64_t seed)>;

// State layout shared by the built-in algorithms:
// [u8 version][u8 tag][u32 count][count x u32 id], little endian.
std::vector<std::uint8_t> encode_ids(std::uint8_t tag,
                                     const std::vector<ElementId>& ids);
std::vector<ElementId> decode_ids(std::uint8_t tag,
                                  std::span<const std::uint8_t> bytes);

// Stores the stream; outputs the best feasible subset by brute force.
class ExactStoreAll : public InnerAlgorithm {
 public:
  std::string name() const override { return "exact"; }
  void process(ElementId u, const InnerContext& ctx) override;
  ElementSet output(const InnerContext& ctx) const override;
  std::vector<std::uint8_t> save() const override;
  void load(std::span<const std::uint8_t> bytes) override;

 private:
  std::vector<ElementId> stored_;
};

// Keeps u when the set stays feasible and u has positive marginal gain
// (always, for cardinality).
class GreedyInner : public InnerAlgorithm {
 public:
  std::string name() const override { return "greedy"; }
  void process(ElementId u, const InnerContext& ctx) override;
  ElementSet output(const InnerContext&) const override { return set_; }
  std::vector<std::uint8_t> save() const override;
  void load(std::span<const std::uint8_t> bytes) override;

 protected:
  virtual bool admits(ElementId u) const;
  ElementSet set_;
};

// Greedy that keeps at most caps[g] elements of group g.
class CappedGreedy : public GreedyInner {
 public:
  CappedGreedy(std::function<std::uint32_t(ElementId)> group,
               std::vector<std::size_t> caps);
  std::string name() const override { return "capped_greedy"; }

 protected:
  bool admits(ElementId u) const override;

 private:
  std::function<std::uint32_t(ElementId)> group_;
  std::vector<std::size_t> caps_;
};

// "exact" or "greedy"; throws std::invalid_argument otherwise.
InnerFactory make_inner(std::string_view name);

// ceil(2 k^2 / eps) independent copies.
std::size_t boosted_copies(std::uint32_t k, const Rational& eps);

struct ProtocolResult {
  int verdict = 0;
  Transcript transcript;
  // Final output of each copy.
  std::vector<ElementSet> outputs;
};

// Hidden-chain reduction: k = inst.p() players, blocks of m = inst.n()
// elements. Player i < k streams e^i_j for every x^i_j = 1, player k streams
// its whole block. Says 1 iff some copy outputs at least two elements.
// Copy c uses seed mix64(seed + c).
ProtocolResult run_protocol1(const ChainInstance& inst,
                             const InnerFactory& factory, std::size_t copies,
                             std::uint64_t seed);

// Sizes of the shared-randomness tree for p players and n = m.
struct CoordinateTree {
  std::uint32_t p = 0;
  std::uint32_t m = 0;
  std::uint32_t k = 0;
  std::uint64_t seed = 0;

  // Number of level-r nodes is m^(r-1); levels are 1..p-1.
  std::uint64_t level_offset(std::uint32_t r) const;
  std::uint64_t node_count() const;
  // Node reached by indices t^2..t^r (1-based), r = path.size() + 1.
  std::uint64_t node(const std::vector<std::uint32_t>& path) const;
  // Vectors of node `path`, sampled from seed mix64(seed + node) while
  // avoiding the hidden vectors of its ancestors.
  std::vector<std::vector<std::uint32_t>> layer(
      const std::vector<std::uint32_t>& path) const;
};

// Coordinate constraints over materialized tree nodes. Querying an element
// of a node that was not materialized throws std::logic_error.
class CoordinateTreeOracle : public CommonOracle {
 public:
  CoordinateTreeOracle(std::uint64_t nodes, std::uint32_t m);
  void add_node(std::uint64_t node, std::vector<std::vector<std::uint32_t>> vs);
  std::size_t ground_size() const override;
  bool is_independent(const ElementSet& s) const override;

 private:
  const std::vector<std::uint32_t>& vec(ElementId u) const;

  std::uint64_t nodes_;
  std::uint32_t m_;
  std::map<std::uint64_t, std::vector<std::vector<std::uint32_t>>> layers_;
};

enum class TreeMode { kLazy, kExhaustive };

// Coordinate reduction: p = inst.p() players, m = inst.n(), k coordinates.
// Player r streams the elements j of its tree node with x^r_j = 1; the last
// player says 1 iff the output has at least two elements. Throws
// std::invalid_argument when m^(p-2) > 1e5.
ProtocolResult run_protocol2(const ChainInstance& inst, std::uint32_t k,
                             const InnerFactory& factory, std::uint64_t seed,
                             TreeMode mode = TreeMode::kLazy);

// Family reduction: p = layers.size() layers, inst.p() = p + 1 players and
// copies = inst.n(). Player i streams copies (e, j) of layer i with
// x^i_j = 1 under o_1..o_{i-1}; the last player says 1 iff
// f(S) >= 1 + p / (1 + alpha) with o_i = t^{i+1}.
ProtocolResult run_protocol3(const ChainInstance& inst,
                             const std::vector<BipartiteLayer>& layers,
                             const Rational& eps, const Rational& alpha,
                             const InnerFactory& factory, std::uint64_t seed);

}  // namespace smkm

#endif  // SMKM_CHAINSIM_HPP_
