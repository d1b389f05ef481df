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

// Instance generators: hidden-chain streams, coordinate instances with a
// hidden optimum, chain-family instances and small random corpora.

#ifndef SMKM_HARDGEN_HPP_
#define SMKM_HARDGEN_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "smkm/ground.hpp"
#include "smkm/matroids.hpp"
#include "smkm/rational.hpp"
#include "smkm/submodular.hpp"

namespace smkm {

// Family-independent view of a generated instance; this is what the JSON
// instance files hold.
struct Instance {
  std::string family;
  std::uint64_t seed = 0;
  std::size_t ground_size = 0;
  // Coordinate vectors, present only for coordinate instances.
  std::shared_ptr<const CoordinateSystem> coordinates;
  std::vector<MatroidPtr> matroids;
  ValuePtr objective;
  Stream stream;
  std::vector<ElementId> hidden;
};

struct HiddenChainInstance {
  std::uint32_t k = 0;
  std::uint32_t m = 0;
  std::shared_ptr<const HiddenChainSystem> system;
  // Blocks in order, each block uniformly shuffled.
  Stream stream;

  const std::vector<ElementId>& hidden() const { return system->hidden(); }
  Instance to_instance(std::uint64_t seed) const;
};

// Requires k >= 2 and m >= 1.
HiddenChainInstance gen_hidden_chain(std::uint32_t k, std::uint32_t m,
                                     Rng& rng);

struct CoordinateInstance {
  std::uint32_t p = 0;
  std::uint32_t m = 0;
  std::uint32_t k = 0;
  // Element (r-1)*m + j is vector j of S_r, r = 1..p-1.
  std::shared_ptr<const CoordinateSystem> system;
  // hidden[r-1] is o^(r), an element of S_r.
  std::vector<ElementId> hidden;
  Stream stream;

  std::vector<MatroidPtr> matroids() const;
  Instance to_instance(std::uint64_t seed) const;
};

// m vectors of [p]^k drawn with replacement, each coordinate uniform over the
// values no vector of `avoid` uses in that coordinate. Throws if that leaves
// no value.
std::vector<std::vector<std::uint32_t>> sample_coordinate_layer(
    std::uint32_t p, std::uint32_t k, std::uint32_t m,
    const std::vector<std::vector<std::uint32_t>>& avoid, Rng& rng);

// Requires p >= 2, m >= 1, k >= 1.
CoordinateInstance gen_coordinate(std::uint32_t p, std::uint32_t m,
                                  std::uint32_t k, Rng& rng);

// Every pair of non-hidden elements shares a coordinate.
bool is_successful(const CoordinateInstance& inst);

// Undirected graph on vertices 0..vertices-1.
struct LayerGraph {
  std::uint32_t vertices = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

// Two-colors g by BFS (lowest vertex of each component on the left) and
// relabels each side in vertex order. Throws std::invalid_argument when g
// has an odd cycle or a self-loop.
BipartiteLayer to_bipartite(const LayerGraph& g);

struct ChainFamilyInstance {
  std::shared_ptr<const ChainFamilyFn> objective;
  // Partition matroids on (layer, left vertex) and (layer, right vertex).
  std::vector<MatroidPtr> matroids;
  // Layers in order, each layer uniformly shuffled.
  Stream stream;

  Instance to_instance(std::uint64_t seed) const;
};

// The matching constraint of a family: a set is feasible iff its edges in
// every layer form a matching.
std::vector<MatroidPtr> matching_matroids(const ChainFamilyFn& f);

// An empty `o` draws every index uniformly from 0..copies-1.
ChainFamilyInstance gen_chain_family_instance(
    const std::vector<LayerGraph>& graphs, std::uint32_t copies,
    const Rational& eps, std::vector<std::optional<std::uint32_t>> o,
    Rng& rng);

enum class ObjectiveKind { kCoverage, kCut };

// Coverage over 6..10 items with weights in 1..4; every element covers at
// least one item.
ValuePtr random_coverage(std::size_t n, Rng& rng);

// Cut of a graph on n vertices, each pair an edge with probability 1/3 and
// weight in 1..4.
ValuePtr random_cut(std::size_t n, Rng& rng);

// k random partition matroids on n elements with a random coverage or cut
// objective and a uniformly random stream order.
Instance gen_random_partition(std::size_t n, std::uint32_t k,
                              ObjectiveKind objective, Rng& rng);

}  // namespace smkm

#endif  // SMKM_HARDGEN_HPP_
