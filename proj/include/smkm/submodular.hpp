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

// Exact-rational set functions and randomized property checkers.

#ifndef SMKM_SUBMODULAR_HPP_
#define SMKM_SUBMODULAR_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "smkm/ground.hpp"
#include "smkm/rational.hpp"

namespace smkm {

class ValueOracle {
 public:
  virtual ~ValueOracle() = default;

  std::size_t ground_size() const { return ground_size_; }
  // True when the function is known to be monotone.
  bool monotone() const { return monotone_; }

  // Bounds checked; throws std::logic_error on a negative value.
  Rational value(const ElementSet& s) const;
  // f(s + u) - f(s); throws std::invalid_argument when u is in s.
  Rational marginal(ElementId u, const ElementSet& s) const;

  virtual std::string kind() const = 0;

 protected:
  ValueOracle(std::size_t ground_size, bool monotone)
      : ground_size_(ground_size), monotone_(monotone) {}
  virtual Rational evaluate(const ElementSet& s) const = 0;

 private:
  std::size_t ground_size_;
  bool monotone_;
};

using ValuePtr = std::shared_ptr<const ValueOracle>;

class CardinalityFn : public ValueOracle {
 public:
  explicit CardinalityFn(std::size_t n) : ValueOracle(n, true) {}
  std::string kind() const override { return "cardinality"; }

 protected:
  Rational evaluate(const ElementSet& s) const override {
    return Rational(static_cast<unsigned long>(s.size()));
  }
};

// Weighted coverage: element u covers items covers[u] of a universe with
// non-negative item weights.
class CoverageFn : public ValueOracle {
 public:
  CoverageFn(std::vector<std::vector<std::uint32_t>> covers,
             std::vector<Rational> weights);

  const std::vector<std::vector<std::uint32_t>>& covers() const {
    return covers_;
  }
  const std::vector<Rational>& weights() const { return weights_; }
  std::string kind() const override { return "coverage"; }

 protected:
  Rational evaluate(const ElementSet& s) const override;

 private:
  std::vector<std::vector<std::uint32_t>> covers_;
  std::vector<Rational> weights_;
};

struct WeightedEdge {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  Rational w;
};

// Weight of edges with exactly one endpoint in the set. Ground set is the
// vertex set.
class CutFn : public ValueOracle {
 public:
  CutFn(std::size_t vertices, std::vector<WeightedEdge> edges);
  const std::vector<WeightedEdge>& edges() const { return edges_; }
  std::string kind() const override { return "cut"; }

 protected:
  Rational evaluate(const ElementSet& s) const override;

 private:
  std::vector<WeightedEdge> edges_;
};

// Bipartite graph with explicit sides; edges are (left, right).
struct BipartiteLayer {
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

// Maximum matching size (Edmonds via Boost.Graph) and one maximum matching
// as edge indices.
std::size_t max_matching_size(const BipartiteLayer& g);
std::vector<std::size_t> max_matching(const BipartiteLayer& g);

// Layer-indexed family over parallel edge copies. Layer i (1-based) holds
// |E_i| * copies elements; copy (e, j) of layer i has id
// offset(i) + e * copies + j, with e and j 0-based.
//
// Per layer, a counts copies with index o_i and b the others. They are
// clamped against the capacity m_i as a' = min(a, m_i), b' = min(b, m_i - a'),
// giving s = (a' + b') / m_i and s_not = b' / m_i. On sets with a + b <= m_i
// this is the unclamped definition, and it keeps the function monotone on
// every set.
class ChainFamilyFn : public ValueOracle {
 public:
  // o[i-1] is o_i; nullopt marks an index not yet revealed.
  ChainFamilyFn(std::vector<BipartiteLayer> layers, std::uint32_t copies,
                Rational eps, std::vector<std::optional<std::uint32_t>> o);

  std::uint32_t p() const { return static_cast<std::uint32_t>(layers_.size()); }
  std::uint32_t copies() const { return copies_; }
  const Rational& eps() const { return eps_; }
  const std::vector<BipartiteLayer>& layers() const { return layers_; }
  const std::vector<std::optional<std::uint32_t>>& o() const { return o_; }
  // 1-based layer accessors.
  const Rational& m(std::uint32_t i) const { return m_[i - 1]; }
  std::size_t matching_size(std::uint32_t i) const { return nu_[i - 1]; }
  std::size_t offset(std::uint32_t i) const { return offsets_[i - 1]; }

  struct Copy {
    std::uint32_t layer;  // 1-based
    std::uint32_t edge;
    std::uint32_t index;
  };
  Copy decode(ElementId u) const;
  ElementId id(std::uint32_t layer, std::uint32_t edge,
               std::uint32_t index) const;

  // Same graphs, different (possibly partial) index vector.
  std::shared_ptr<ChainFamilyFn> with_indices(
      std::vector<std::optional<std::uint32_t>> o) const;

  std::string kind() const override { return "chain_family"; }

 protected:
  // Single pass collecting (a, b) per layer, then a right fold. Throws when
  // an unrevealed o_i is needed, which happens only when the set reaches
  // past layer i.
  Rational evaluate(const ElementSet& s) const override;

 private:
  std::vector<BipartiteLayer> layers_;
  std::uint32_t copies_;
  Rational eps_;
  std::vector<std::optional<std::uint32_t>> o_;
  std::vector<std::size_t> nu_;
  std::vector<Rational> m_;
  std::vector<std::size_t> offsets_;
};

// Memoizing wrapper; not thread safe.
class CachedValue {
 public:
  explicit CachedValue(const ValueOracle& f) : f_(&f) {}
  const Rational& value(const ElementSet& s);
  Rational marginal(ElementId u, const ElementSet& s);
  const ValueOracle& oracle() const { return *f_; }
  std::size_t size() const { return cache_.size(); }

 private:
  const ValueOracle* f_;
  std::unordered_map<ElementSet, Rational, ElementSetHash> cache_;
};

// Produces the outer set of each trial.
using SetSampler = std::function<ElementSet(Rng&)>;

// Each element independently with probability 1/2.
SetSampler uniform_sampler(std::size_t n);

struct PropertyReport {
  std::size_t trials = 0;
  std::size_t violations = 0;
  std::vector<std::string> witnesses;
  bool ok() const { return violations == 0; }
};

// Trials draw C from the sampler; monotonicity compares a random subset
// A of C against C.
PropertyReport check_monotone(const ValueOracle& f, std::size_t trials,
                              Rng& rng, const SetSampler& sampler);
PropertyReport check_monotone(const ValueOracle& f, std::size_t trials,
                              Rng& rng);

// Trials draw C, pick u in C, set B = C - u and a random A within B, and
// compare f(u | A) >= f(u | B). Empty draws are redrawn, so exactly `trials`
// triples are compared.
PropertyReport check_submodular(const ValueOracle& f, std::size_t trials,
                                Rng& rng, const SetSampler& sampler);
PropertyReport check_submodular(const ValueOracle& f, std::size_t trials,
                                Rng& rng);

PropertyReport check_nonnegative(const ValueOracle& f, std::size_t trials,
                                 Rng& rng);

// Random sets whose per-layer edges form a matching, using random copy
// indices. Optionally skips copies carrying the layer's o index.
SetSampler matching_sampler(const ChainFamilyFn& f, bool avoid_o = false);

// Union over layers of a maximum matching, each edge taken with copy o_i.
ElementSet o_indexed_max_matchings(const ChainFamilyFn& f);

// Exact checks of the family's structural properties.
// (a): f1 and f2 agree on `queries` random subsets of layers 1..i; requires
// their first i-1 indices to match.
PropertyReport family_property_a(const ChainFamilyFn& f1,
                                 const ChainFamilyFn& f2, std::uint32_t i,
                                 std::size_t queries, Rng& rng);
// (c): value of o_indexed_max_matchings(f) is at least p / (1 + eps).
PropertyReport family_property_c(const ChainFamilyFn& f);
// (d): for `s` with |s in layer i| <= m_i / alpha and no o-indexed copy,
// the value is below 1 + p / (alpha + 1). Throws std::invalid_argument when
// the premise fails.
PropertyReport family_property_d(const ChainFamilyFn& f, const ElementSet& s,
                                 const Rational& alpha);

}  // namespace smkm

#endif  // SMKM_SUBMODULAR_HPP_
