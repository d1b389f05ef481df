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

#include "smkm/hardgen.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace smkm {
namespace {

// Concatenates `groups` in order, shuffling inside each group.
Stream grouped_stream(std::vector<std::vector<ElementId>> groups,
                      std::size_t ground_size, Rng& rng) {
  std::vector<ElementId> order;
  order.reserve(ground_size);
  for (auto& g : groups) {
    rng.shuffle(g);
    order.insert(order.end(), g.begin(), g.end());
  }
  return Stream(std::move(order), ground_size);
}

bool share_coordinate(const std::vector<std::uint32_t>& a,
                      const std::vector<std::uint32_t>& b) {
  for (std::size_t c = 0; c < a.size(); ++c) {
    if (a[c] == b[c]) return true;
  }
  return false;
}

}  // namespace

Instance HiddenChainInstance::to_instance(std::uint64_t seed) const {
  Instance inst;
  inst.family = "hidden_chain";
  inst.seed = seed;
  inst.ground_size = system->ground_size();
  inst.matroids = system->matroids();
  inst.objective = std::make_shared<CardinalityFn>(inst.ground_size);
  inst.stream = stream;
  inst.hidden = system->hidden();
  return inst;
}

HiddenChainInstance gen_hidden_chain(std::uint32_t k, std::uint32_t m,
                                     Rng& rng) {
  if (k < 2 || m < 1) {
    throw std::invalid_argument("hidden chain needs k >= 2 and m >= 1");
  }
  std::vector<ElementId> hidden;
  for (std::uint32_t i = 1; i < k; ++i) {
    hidden.push_back(static_cast<ElementId>((i - 1) * m + rng.below(m)));
  }
  HiddenChainInstance inst;
  inst.k = k;
  inst.m = m;
  inst.system = std::make_shared<HiddenChainSystem>(k, m, hidden);
  std::vector<std::vector<ElementId>> blocks(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    for (std::uint32_t j = 0; j < m; ++j) blocks[i].push_back(i * m + j);
  }
  inst.stream = grouped_stream(std::move(blocks), std::size_t{k} * m, rng);
  return inst;
}

std::vector<MatroidPtr> CoordinateInstance::matroids() const {
  std::vector<MatroidPtr> ms;
  for (std::uint32_t i = 1; i <= k; ++i) {
    ms.push_back(coordinate_matroid(system, i));
  }
  return ms;
}

Instance CoordinateInstance::to_instance(std::uint64_t seed) const {
  Instance inst;
  inst.family = "coordinate";
  inst.seed = seed;
  inst.ground_size = system->ground_size();
  inst.coordinates = system;
  inst.matroids = matroids();
  inst.objective = std::make_shared<CardinalityFn>(inst.ground_size);
  inst.stream = stream;
  inst.hidden = hidden;
  return inst;
}

std::vector<std::vector<std::uint32_t>> sample_coordinate_layer(
    std::uint32_t p, std::uint32_t k, std::uint32_t m,
    const std::vector<std::vector<std::uint32_t>>& avoid, Rng& rng) {
  std::vector<std::vector<std::uint32_t>> allowed(k);
  for (std::uint32_t c = 0; c < k; ++c) {
    for (std::uint32_t v = 1; v <= p; ++v) {
      bool used = false;
      for (const auto& a : avoid) used = used || a[c] == v;
      if (!used) allowed[c].push_back(v);
    }
    if (allowed[c].empty()) {
      throw std::invalid_argument("no coordinate value left to sample");
    }
  }
  std::vector<std::vector<std::uint32_t>> layer(m,
                                                std::vector<std::uint32_t>(k));
  for (auto& vec : layer) {
    for (std::uint32_t c = 0; c < k; ++c) {
      vec[c] = allowed[c][rng.below(allowed[c].size())];
    }
  }
  return layer;
}

CoordinateInstance gen_coordinate(std::uint32_t p, std::uint32_t m,
                                  std::uint32_t k, Rng& rng) {
  if (p < 2 || m < 1 || k < 1) {
    throw std::invalid_argument("coordinate instance needs p >= 2, m, k >= 1");
  }
  auto sys = std::make_shared<CoordinateSystem>();
  sys->p = p;
  sys->k = k;
  CoordinateInstance inst;
  inst.p = p;
  inst.m = m;
  inst.k = k;
  std::vector<std::vector<std::uint32_t>> prior;
  std::vector<std::vector<ElementId>> layers;
  for (std::uint32_t r = 1; r < p; ++r) {
    auto layer = sample_coordinate_layer(p, k, m, prior, rng);
    const auto o = static_cast<std::uint32_t>(rng.below(m));
    std::vector<ElementId> ids;
    for (std::uint32_t j = 0; j < m; ++j) {
      for (const auto& h : prior) {
        if (share_coordinate(h, layer[j])) {
          throw std::logic_error("sampled vector meets a hidden coordinate");
        }
      }
      ids.push_back(static_cast<ElementId>(sys->coords.size()));
      sys->coords.push_back(layer[j]);
    }
    inst.hidden.push_back(ids[o]);
    prior.push_back(layer[o]);
    layers.push_back(std::move(ids));
  }
  sys->validate();
  inst.system = sys;
  std::vector<ElementId> order;
  for (const auto& ids : layers) order.insert(order.end(), ids.begin(), ids.end());
  inst.stream = Stream(std::move(order), sys->ground_size());
  if (!common_independent(inst.matroids(), ElementSet(inst.hidden))) {
    throw std::logic_error("hidden set is not common independent");
  }
  return inst;
}

bool is_successful(const CoordinateInstance& inst) {
  const ElementSet hidden(inst.hidden);
  std::vector<ElementId> rest;
  for (std::size_t u = 0; u < inst.system->ground_size(); ++u) {
    if (!hidden.contains(static_cast<ElementId>(u))) {
      rest.push_back(static_cast<ElementId>(u));
    }
  }
  const auto& coords = inst.system->coords;
  for (std::size_t a = 0; a < rest.size(); ++a) {
    for (std::size_t b = a + 1; b < rest.size(); ++b) {
      if (!share_coordinate(coords[rest[a]], coords[rest[b]])) return false;
    }
  }
  return true;
}

BipartiteLayer to_bipartite(const LayerGraph& g) {
  std::vector<std::vector<std::uint32_t>> adj(g.vertices);
  for (auto [a, b] : g.edges) {
    if (a >= g.vertices || b >= g.vertices) {
      throw std::invalid_argument("edge endpoint outside the graph");
    }
    if (a == b) throw std::invalid_argument("layer graph has a self-loop");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> color(g.vertices, -1);
  for (std::uint32_t s = 0; s < g.vertices; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::queue<std::uint32_t> q;
    q.push(s);
    while (!q.empty()) {
      std::uint32_t v = q.front();
      q.pop();
      for (std::uint32_t w : adj[v]) {
        if (color[w] == -1) {
          color[w] = 1 - color[v];
          q.push(w);
        } else if (color[w] == color[v]) {
          throw std::invalid_argument("layer graph is not bipartite");
        }
      }
    }
  }
  std::vector<std::uint32_t> label(g.vertices);
  BipartiteLayer out;
  for (std::uint32_t v = 0; v < g.vertices; ++v) {
    label[v] = color[v] == 0 ? out.left++ : out.right++;
  }
  for (auto [a, b] : g.edges) {
    if (color[a] == 0) {
      out.edges.emplace_back(label[a], label[b]);
    } else {
      out.edges.emplace_back(label[b], label[a]);
    }
  }
  return out;
}

Instance ChainFamilyInstance::to_instance(std::uint64_t seed) const {
  Instance inst;
  inst.family = "chain_family";
  inst.seed = seed;
  inst.ground_size = objective->ground_size();
  inst.matroids = matroids;
  inst.objective = objective;
  inst.stream = stream;
  for (std::uint32_t i = 1; i <= objective->p(); ++i) {
    const auto& oi = objective->o()[i - 1];
    if (!oi) continue;
    const auto& layer = objective->layers()[i - 1];
    for (std::uint32_t e = 0; e < layer.edges.size(); ++e) {
      inst.hidden.push_back(objective->id(i, e, *oi));
    }
  }
  return inst;
}

std::vector<MatroidPtr> matching_matroids(const ChainFamilyFn& f) {
  const std::size_t n = f.ground_size();
  std::vector<std::uint32_t> left_block(n);
  std::vector<std::uint32_t> right_block(n);
  std::uint32_t left_base = 0;
  std::uint32_t right_base = 0;
  for (std::uint32_t i = 1; i <= f.p(); ++i) {
    const auto& layer = f.layers()[i - 1];
    for (std::uint32_t e = 0; e < layer.edges.size(); ++e) {
      for (std::uint32_t c = 0; c < f.copies(); ++c) {
        ElementId u = f.id(i, e, c);
        left_block[u] = left_base + layer.edges[e].first;
        right_block[u] = right_base + layer.edges[e].second;
      }
    }
    left_base += layer.left;
    right_base += layer.right;
  }
  return {std::make_shared<PartitionMatroid>(
              std::move(left_block), std::vector<std::uint32_t>(left_base, 1)),
          std::make_shared<PartitionMatroid>(
              std::move(right_block),
              std::vector<std::uint32_t>(right_base, 1))};
}

ChainFamilyInstance gen_chain_family_instance(
    const std::vector<LayerGraph>& graphs, std::uint32_t copies,
    const Rational& eps, std::vector<std::optional<std::uint32_t>> o,
    Rng& rng) {
  if (graphs.empty()) throw std::invalid_argument("family needs p >= 1");
  if (copies < 1) throw std::invalid_argument("family needs copies >= 1");
  std::vector<BipartiteLayer> layers;
  for (const auto& g : graphs) layers.push_back(to_bipartite(g));
  if (o.empty()) {
    for (std::size_t i = 0; i < layers.size(); ++i) {
      o.emplace_back(static_cast<std::uint32_t>(rng.below(copies)));
    }
  }
  ChainFamilyInstance inst;
  auto f = std::make_shared<ChainFamilyFn>(std::move(layers), copies, eps,
                                           std::move(o));
  inst.matroids = matching_matroids(*f);
  std::vector<std::vector<ElementId>> groups(f->p());
  for (std::uint32_t i = 1; i <= f->p(); ++i) {
    const std::size_t end =
        i == f->p() ? f->ground_size() : f->offset(i + 1);
    for (std::size_t u = f->offset(i); u < end; ++u) {
      groups[i - 1].push_back(static_cast<ElementId>(u));
    }
  }
  inst.stream = grouped_stream(std::move(groups), f->ground_size(), rng);
  inst.objective = std::move(f);
  return inst;
}

ValuePtr random_coverage(std::size_t n, Rng& rng) {
  const auto items = static_cast<std::uint32_t>(6 + rng.below(5));
  std::vector<std::vector<std::uint32_t>> covers(n);
  for (auto& c : covers) {
    for (std::uint32_t x = 0; x < items; ++x) {
      if (rng.chance(1, 3)) c.push_back(x);
    }
    if (c.empty()) c.push_back(static_cast<std::uint32_t>(rng.below(items)));
  }
  std::vector<Rational> weights(items);
  for (auto& w : weights) w = static_cast<unsigned long>(1 + rng.below(4));
  return std::make_shared<CoverageFn>(std::move(covers), std::move(weights));
}

ValuePtr random_cut(std::size_t n, Rng& rng) {
  std::vector<WeightedEdge> edges;
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = a + 1; b < n; ++b) {
      if (rng.chance(1, 3)) {
        edges.push_back(
            {a, b, Rational(static_cast<unsigned long>(1 + rng.below(4)))});
      }
    }
  }
  return std::make_shared<CutFn>(n, std::move(edges));
}

Instance gen_random_partition(std::size_t n, std::uint32_t k,
                              ObjectiveKind objective, Rng& rng) {
  if (n < 1 || k < 1) {
    throw std::invalid_argument("random partition needs n >= 1 and k >= 1");
  }
  Instance inst;
  inst.family = "random_partition";
  inst.ground_size = n;
  for (std::uint32_t i = 0; i < k; ++i) {
    const auto blocks = static_cast<std::uint32_t>(2 + rng.below(3));
    std::vector<std::uint32_t> block_of(n);
    for (auto& b : block_of) b = static_cast<std::uint32_t>(rng.below(blocks));
    std::vector<std::uint32_t> capacity(blocks);
    for (auto& c : capacity) c = static_cast<std::uint32_t>(1 + rng.below(2));
    inst.matroids.push_back(std::make_shared<PartitionMatroid>(
        std::move(block_of), std::move(capacity)));
  }
  inst.objective = objective == ObjectiveKind::kCoverage
                      ? random_coverage(n, rng)
                      : random_cut(n, rng);
  inst.stream = random_permutation(n, rng);
  return inst;
}

}  // namespace smkm
