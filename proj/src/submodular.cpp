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

#include "smkm/submodular.hpp"

#include <algorithm>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>
#include <stdexcept>

namespace smkm {

Rational ValueOracle::value(const ElementSet& s) const {
  check_within(s, ground_size_);
  Rational v = evaluate(s);
  if (v < 0) {
    throw std::logic_error(kind() + " oracle returned a negative value on " +
                           s.to_string());
  }
  return v;
}

Rational ValueOracle::marginal(ElementId u, const ElementSet& s) const {
  if (s.contains(u)) {
    throw std::invalid_argument("marginal of element " + std::to_string(u) +
                                " already in the set");
  }
  return value(set_insert(s, u, ground_size_)) - value(s);
}

CoverageFn::CoverageFn(std::vector<std::vector<std::uint32_t>> covers,
                       std::vector<Rational> weights)
    : ValueOracle(covers.size(), true),
      covers_(std::move(covers)),
      weights_(std::move(weights)) {
  for (const auto& w : weights_) {
    if (w < 0) throw std::invalid_argument("coverage weight is negative");
  }
  for (const auto& c : covers_) {
    for (std::uint32_t item : c) {
      if (item >= weights_.size()) {
        throw std::invalid_argument("coverage item outside universe");
      }
    }
  }
}

Rational CoverageFn::evaluate(const ElementSet& s) const {
  std::vector<bool> covered(weights_.size(), false);
  Rational total = 0;
  for (ElementId u : s) {
    for (std::uint32_t item : covers_[u]) {
      if (!covered[item]) {
        covered[item] = true;
        total += weights_[item];
      }
    }
  }
  return total;
}

CutFn::CutFn(std::size_t vertices, std::vector<WeightedEdge> edges)
    : ValueOracle(vertices, false), edges_(std::move(edges)) {
  for (const auto& e : edges_) {
    if (e.a >= vertices || e.b >= vertices) {
      throw std::invalid_argument("cut edge endpoint outside vertex set");
    }
    if (e.w < 0) throw std::invalid_argument("cut edge weight is negative");
  }
}

Rational CutFn::evaluate(const ElementSet& s) const {
  Rational total = 0;
  for (const auto& e : edges_) {
    if (s.contains(e.a) != s.contains(e.b)) total += e.w;
  }
  return total;
}

namespace {

using MatchGraph =
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;

std::vector<std::size_t> matching_mates(const BipartiteLayer& g) {
  MatchGraph graph(g.left + g.right);
  for (const auto& [l, r] : g.edges) {
    if (l >= g.left || r >= g.right) {
      throw std::invalid_argument("layer edge endpoint outside its side");
    }
    boost::add_edge(l, g.left + r, graph);
  }
  std::vector<boost::graph_traits<MatchGraph>::vertex_descriptor> mate(
      g.left + g.right);
  boost::edmonds_maximum_cardinality_matching(graph, &mate[0]);
  std::vector<std::size_t> out(mate.size());
  const auto null = boost::graph_traits<MatchGraph>::null_vertex();
  for (std::size_t v = 0; v < mate.size(); ++v) {
    out[v] = mate[v] == null ? static_cast<std::size_t>(-1) : mate[v];
  }
  return out;
}

std::size_t total_copies(const std::vector<BipartiteLayer>& layers,
                         std::uint32_t copies) {
  std::size_t total = 0;
  for (const auto& layer : layers) total += layer.edges.size() * copies;
  return total;
}

}  // namespace

std::vector<std::size_t> max_matching(const BipartiteLayer& g) {
  std::vector<std::size_t> mate = matching_mates(g);
  std::vector<std::size_t> chosen;
  std::vector<bool> used(g.left, false);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [l, r] = g.edges[e];
    if (!used[l] && mate[l] == g.left + r) {
      used[l] = true;
      chosen.push_back(e);
    }
  }
  return chosen;
}

std::size_t max_matching_size(const BipartiteLayer& g) {
  return max_matching(g).size();
}

ChainFamilyFn::ChainFamilyFn(std::vector<BipartiteLayer> layers,
                             std::uint32_t copies, Rational eps,
                             std::vector<std::optional<std::uint32_t>> o)
    : ValueOracle(total_copies(layers, copies), true),
      layers_(std::move(layers)),
      copies_(copies),
      eps_(std::move(eps)),
      o_(std::move(o)) {
  if (layers_.empty()) throw std::invalid_argument("family needs p >= 1");
  if (copies_ == 0) throw std::invalid_argument("family needs copies >= 1");
  if (eps_ <= 0) throw std::invalid_argument("family needs eps > 0");
  if (o_.size() != layers_.size()) {
    throw std::invalid_argument("family needs one index slot per layer");
  }
  for (const auto& oi : o_) {
    if (oi && *oi >= copies_) throw std::invalid_argument("o index >= copies");
  }
  std::size_t offset = 0;
  for (const auto& layer : layers_) {
    offsets_.push_back(offset);
    offset += layer.edges.size() * copies_;
    std::size_t nu = max_matching_size(layer);
    nu_.push_back(nu);
    Rational base = 1 + eps_;
    m_.push_back(pow(base, ceil_log(base, Rational(static_cast<unsigned long>(nu)))));
  }
}

ChainFamilyFn::Copy ChainFamilyFn::decode(ElementId u) const {
  if (u >= ground_size()) throw OutOfGroundSet(u, ground_size());
  std::uint32_t layer = 0;
  while (layer + 1 < offsets_.size() && offsets_[layer + 1] <= u) ++layer;
  std::size_t local = u - offsets_[layer];
  return Copy{layer + 1, static_cast<std::uint32_t>(local / copies_),
              static_cast<std::uint32_t>(local % copies_)};
}

ElementId ChainFamilyFn::id(std::uint32_t layer, std::uint32_t edge,
                            std::uint32_t index) const {
  if (layer < 1 || layer > p() || edge >= layers_[layer - 1].edges.size() ||
      index >= copies_) {
    throw std::out_of_range("edge copy outside the family's ground set");
  }
  return static_cast<ElementId>(offsets_[layer - 1] +
                                std::size_t{edge} * copies_ + index);
}

std::shared_ptr<ChainFamilyFn> ChainFamilyFn::with_indices(
    std::vector<std::optional<std::uint32_t>> o) const {
  return std::make_shared<ChainFamilyFn>(layers_, copies_, eps_, std::move(o));
}

Rational ChainFamilyFn::evaluate(const ElementSet& s) const {
  const std::uint32_t layers = p();
  std::vector<std::size_t> a(layers, 0);
  std::vector<std::size_t> b(layers, 0);
  std::uint32_t top = 0;  // highest non-empty layer, 1-based
  for (ElementId u : s) {
    Copy c = decode(u);
    top = std::max(top, c.layer);
    const auto& oi = o_[c.layer - 1];
    if (oi && *oi == c.index) {
      ++a[c.layer - 1];
    } else {
      ++b[c.layer - 1];
    }
  }
  Rational inner = 0;  // f over layers above the current one
  for (std::uint32_t i = layers; i >= 1; --i) {
    const Rational& mi = m_[i - 1];
    if (!o_[i - 1] && i < top && i < layers) {
      throw std::logic_error("index o_" + std::to_string(i) +
                             " is needed for this query but not revealed");
    }
    Rational ca = std::min(Rational(static_cast<unsigned long>(a[i - 1])), mi);
    Rational room = mi - ca;
    Rational cb = std::min(Rational(static_cast<unsigned long>(b[i - 1])), room);
    Rational s_all = (ca + cb) / mi;
    Rational s_not = cb / mi;
    Rational cap = static_cast<unsigned long>(layers + 1 - i);
    Rational v = s_all + (1 - s_not / cap) * inner;
    inner = std::min(cap, v);
  }
  return inner;
}

const Rational& CachedValue::value(const ElementSet& s) {
  auto it = cache_.find(s);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(s, f_->value(s)).first->second;
}

Rational CachedValue::marginal(ElementId u, const ElementSet& s) {
  if (s.contains(u)) {
    throw std::invalid_argument("marginal of element already in the set");
  }
  Rational base = value(s);
  return value(set_insert(s, u, f_->ground_size())) - base;
}

SetSampler uniform_sampler(std::size_t n) {
  return [n](Rng& rng) {
    std::vector<ElementId> ids;
    for (std::size_t u = 0; u < n; ++u) {
      if (rng.coin()) ids.push_back(static_cast<ElementId>(u));
    }
    return ElementSet(std::move(ids));
  };
}

namespace {

ElementSet random_subset(const ElementSet& s, Rng& rng) {
  std::vector<ElementId> ids;
  for (ElementId u : s) {
    if (rng.coin()) ids.push_back(u);
  }
  return ElementSet(std::move(ids));
}

void record(PropertyReport& r, std::string witness) {
  ++r.violations;
  if (r.witnesses.size() < 8) r.witnesses.push_back(std::move(witness));
}

}  // namespace

PropertyReport check_monotone(const ValueOracle& f, std::size_t trials,
                              Rng& rng, const SetSampler& sampler) {
  PropertyReport r;
  for (std::size_t t = 0; t < trials; ++t) {
    ElementSet big = sampler(rng);
    ElementSet small = random_subset(big, rng);
    ++r.trials;
    Rational fa = f.value(small);
    Rational fb = f.value(big);
    if (fa > fb) {
      record(r, "f(" + small.to_string() + ")=" + to_string(fa) + " > f(" +
                    big.to_string() + ")=" + to_string(fb));
    }
  }
  return r;
}

PropertyReport check_monotone(const ValueOracle& f, std::size_t trials,
                              Rng& rng) {
  return check_monotone(f, trials, rng, uniform_sampler(f.ground_size()));
}

PropertyReport check_submodular(const ValueOracle& f, std::size_t trials,
                                Rng& rng, const SetSampler& sampler) {
  PropertyReport r;
  // Empty samples carry no triple and are redrawn.
  for (std::size_t attempts = 0; r.trials < trials; ++attempts) {
    if (attempts >= 100 * trials + 100) {
      throw std::runtime_error("sampler keeps returning empty sets");
    }
    ElementSet outer = sampler(rng);
    if (outer.empty()) continue;
    ElementId u = outer.members()[rng.below(outer.size())];
    ElementSet b = outer.without(u);
    ElementSet a = random_subset(b, rng);
    ++r.trials;
    Rational ma = f.marginal(u, a);
    Rational mb = f.marginal(u, b);
    if (ma < mb) {
      record(r, "u=" + std::to_string(u) + " A=" + a.to_string() + " B=" +
                    b.to_string() + ": " + to_string(ma) + " < " +
                    to_string(mb));
    }
  }
  return r;
}

PropertyReport check_submodular(const ValueOracle& f, std::size_t trials,
                                Rng& rng) {
  return check_submodular(f, trials, rng, uniform_sampler(f.ground_size()));
}

PropertyReport check_nonnegative(const ValueOracle& f, std::size_t trials,
                                 Rng& rng) {
  PropertyReport r;
  SetSampler sampler = uniform_sampler(f.ground_size());
  for (std::size_t t = 0; t < trials; ++t) {
    ElementSet s = sampler(rng);
    ++r.trials;
    // value() itself throws on a negative result; keep the check explicit.
    if (f.value(s) < 0) record(r, s.to_string());
  }
  return r;
}

SetSampler matching_sampler(const ChainFamilyFn& f, bool avoid_o) {
  return [&f, avoid_o](Rng& rng) {
    std::vector<ElementId> ids;
    for (std::uint32_t i = 1; i <= f.p(); ++i) {
      const BipartiteLayer& layer = f.layers()[i - 1];
      std::vector<std::uint32_t> order(layer.edges.size());
      for (std::uint32_t e = 0; e < order.size(); ++e) order[e] = e;
      rng.shuffle(order);
      std::vector<bool> left(layer.left, false);
      std::vector<bool> right(layer.right, false);
      for (std::uint32_t e : order) {
        auto [l, r] = layer.edges[e];
        if (left[l] || right[r] || !rng.coin()) continue;
        std::uint32_t j = static_cast<std::uint32_t>(rng.below(f.copies()));
        const auto& oi = f.o()[i - 1];
        if (avoid_o && oi && *oi == j) continue;
        left[l] = right[r] = true;
        ids.push_back(f.id(i, e, j));
      }
    }
    return ElementSet(std::move(ids));
  };
}

ElementSet o_indexed_max_matchings(const ChainFamilyFn& f) {
  std::vector<ElementId> ids;
  for (std::uint32_t i = 1; i <= f.p(); ++i) {
    const auto& oi = f.o()[i - 1];
    if (!oi) throw std::invalid_argument("all indices must be revealed");
    for (std::size_t e : max_matching(f.layers()[i - 1])) {
      ids.push_back(f.id(i, static_cast<std::uint32_t>(e), *oi));
    }
  }
  return ElementSet(std::move(ids));
}

PropertyReport family_property_a(const ChainFamilyFn& f1,
                                 const ChainFamilyFn& f2, std::uint32_t i,
                                 std::size_t queries, Rng& rng) {
  if (f1.ground_size() != f2.ground_size() || i < 1 || i > f1.p()) {
    throw std::invalid_argument("property (a) needs matching families");
  }
  for (std::uint32_t q = 0; q + 1 < i; ++q) {
    if (f1.o()[q] != f2.o()[q]) {
      throw std::invalid_argument("property (a) premise: o_1..o_{i-1} differ");
    }
  }
  PropertyReport r;
  const std::size_t limit =
      i < f1.p() ? f1.offset(i + 1) : f1.ground_size();
  for (std::size_t t = 0; t < queries; ++t) {
    std::vector<ElementId> ids;
    for (std::size_t u = 0; u < limit; ++u) {
      if (rng.coin()) ids.push_back(static_cast<ElementId>(u));
    }
    ElementSet s(std::move(ids));
    ++r.trials;
    Rational v1 = f1.value(s);
    Rational v2 = f2.value(s);
    if (v1 != v2) {
      record(r, s.to_string() + ": " + to_string(v1) + " vs " + to_string(v2));
    }
  }
  return r;
}

PropertyReport family_property_c(const ChainFamilyFn& f) {
  PropertyReport r;
  ElementSet s = o_indexed_max_matchings(f);
  Rational v = f.value(s);
  Rational bound = Rational(static_cast<unsigned long>(f.p())) / (1 + f.eps());
  r.trials = 1;
  if (v < bound) {
    record(r, "f=" + to_string(v) + " < " + to_string(bound));
  }
  return r;
}

PropertyReport family_property_d(const ChainFamilyFn& f, const ElementSet& s,
                                 const Rational& alpha) {
  if (alpha <= 0) throw std::invalid_argument("alpha must be positive");
  std::vector<std::size_t> count(f.p(), 0);
  for (ElementId u : s) {
    auto c = f.decode(u);
    const auto& oi = f.o()[c.layer - 1];
    if (oi && *oi == c.index) {
      throw std::invalid_argument("property (d) premise: o-indexed copy");
    }
    ++count[c.layer - 1];
  }
  for (std::uint32_t i = 1; i <= f.p(); ++i) {
    if (Rational(static_cast<unsigned long>(count[i - 1])) > f.m(i) / alpha) {
      throw std::invalid_argument("property (d) premise: layer " +
                                  std::to_string(i) + " too large");
    }
  }
  PropertyReport r;
  r.trials = 1;
  Rational v = f.value(s);
  Rational bound = 1 + Rational(static_cast<unsigned long>(f.p())) / (alpha + 1);
  if (v >= bound) record(r, "f=" + to_string(v) + " >= " + to_string(bound));
  return r;
}

}  // namespace smkm
