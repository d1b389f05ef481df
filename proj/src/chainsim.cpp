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

#include "smkm/chainsim.hpp"

#include <algorithm>
#include <stdexcept>

#include "smkm/hardgen.hpp"
#include "smkm/reference.hpp"

namespace smkm {
namespace {

constexpr std::uint8_t kStateVersion = 1;
constexpr std::uint8_t kExactTag = 1;
constexpr std::uint8_t kGreedyTag = 2;
constexpr std::uint64_t kTreeBudget = 100000;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t at) {
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b) v |= std::uint32_t{in[at + b]} << (8 * b);
  return v;
}

// Length-prefixed concatenation of the copies' states.
std::vector<std::uint8_t> pack(const std::vector<std::vector<std::uint8_t>>& states) {
  std::vector<std::uint8_t> out;
  for (const auto& s : states) {
    put_u32(out, static_cast<std::uint32_t>(s.size()));
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

std::vector<std::vector<std::uint8_t>> unpack(std::span<const std::uint8_t> in,
                                              std::size_t copies) {
  std::vector<std::vector<std::uint8_t>> out;
  std::size_t at = 0;
  for (std::size_t c = 0; c < copies; ++c) {
    if (at + 4 > in.size()) throw std::invalid_argument("truncated message");
    const std::uint32_t len = get_u32(in, at);
    at += 4;
    if (at + len > in.size()) throw std::invalid_argument("truncated message");
    out.emplace_back(in.begin() + at, in.begin() + at + len);
    at += len;
  }
  if (at != in.size()) throw std::invalid_argument("trailing message bytes");
  return out;
}

Hop make_hop(std::vector<std::uint8_t> payload,
             std::vector<std::uint32_t> indices, std::uint32_t n) {
  Hop hop;
  hop.bits = 8 * payload.size() + indices.size() * std::uint64_t{index_bits(n)};
  hop.payload = std::move(payload);
  hop.indices = std::move(indices);
  return hop;
}

// Runs one player's turn for every copy: rebuild, stream, save.
std::vector<std::vector<std::uint8_t>> player_turn(
    const InnerFactory& factory, std::uint64_t seed,
    const std::vector<std::vector<std::uint8_t>>& received,
    const std::vector<ElementId>& elements, const InnerContext& ctx,
    std::size_t copies) {
  std::vector<std::vector<std::uint8_t>> out;
  for (std::size_t c = 0; c < copies; ++c) {
    auto alg = factory(mix64(seed + c));
    if (!received.empty()) alg->load(received[c]);
    for (ElementId u : elements) alg->process(u, ctx);
    out.push_back(alg->save());
  }
  return out;
}

std::vector<ElementSet> final_outputs(
    const InnerFactory& factory, std::uint64_t seed,
    const std::vector<std::vector<std::uint8_t>>& received,
    const InnerContext& ctx, std::size_t copies) {
  std::vector<ElementSet> out;
  for (std::size_t c = 0; c < copies; ++c) {
    auto alg = factory(mix64(seed + c));
    alg->load(received[c]);
    ElementSet s = alg->output(ctx);
    if (!ctx.oracle->is_independent(s)) {
      throw std::logic_error(alg->name() + " returned an infeasible set");
    }
    out.push_back(std::move(s));
  }
  return out;
}

void check_streamed(const std::vector<ElementSet>& outputs,
                    const std::vector<ElementId>& streamed) {
  const ElementSet all(streamed);
  for (const auto& s : outputs) {
    if (!s.is_subset_of(all)) {
      throw std::logic_error("output contains an element never streamed");
    }
  }
}

}  // namespace

ChainInstance::ChainInstance(std::uint32_t p, std::uint32_t n,
                             std::vector<std::vector<std::uint8_t>> x,
                             std::vector<std::uint32_t> t, int chain_case)
    : p_(p), n_(n), x_(std::move(x)), t_(std::move(t)), case_(chain_case) {
  if (p_ < 2 || n_ < 1) throw std::invalid_argument("chain needs p >= 2, n >= 1");
  if (case_ != 0 && case_ != 1) throw std::invalid_argument("case must be 0 or 1");
  if (x_.size() != p_ - 1 || t_.size() != p_ - 1) {
    throw std::invalid_argument("chain needs p-1 strings and p-1 indices");
  }
  for (const auto& xi : x_) {
    if (xi.size() != n_) throw std::invalid_argument("bit string length != n");
    for (std::uint8_t b : xi) {
      if (b > 1) throw std::invalid_argument("bit strings hold 0 or 1");
    }
  }
  for (std::uint32_t ti : t_) {
    if (ti < 1 || ti > n_) throw std::invalid_argument("index outside 1..n");
  }
  for (std::uint32_t i = 1; i < p_; ++i) {
    if (bit(i, index(i + 1)) != (case_ == 1)) {
      throw std::invalid_argument("promise broken at player " +
                                  std::to_string(i));
    }
  }
}

bool ChainInstance::bit(std::uint32_t i, std::uint32_t j) const {
  if (i < 1 || i >= p_ || j < 1 || j > n_) {
    throw std::out_of_range("bit index outside the instance");
  }
  return x_[i - 1][j - 1] != 0;
}

std::uint32_t ChainInstance::index(std::uint32_t i) const {
  if (i < 2 || i > p_) throw std::out_of_range("index holder outside 2..p");
  return t_[i - 2];
}

ChainInstance sample_chain(std::uint32_t p, std::uint32_t n, Rng& rng,
                           std::optional<int> forced_case) {
  if (p < 2 || n < 1) throw std::invalid_argument("chain needs p >= 2, n >= 1");
  const int c = forced_case ? *forced_case : static_cast<int>(rng.coin());
  std::vector<std::uint32_t> t(p - 1);
  for (auto& ti : t) ti = static_cast<std::uint32_t>(1 + rng.below(n));
  std::vector<std::vector<std::uint8_t>> x(p - 1, std::vector<std::uint8_t>(n));
  for (std::uint32_t i = 0; i + 1 < p; ++i) {
    for (auto& b : x[i]) b = rng.coin() ? 1 : 0;
    x[i][t[i] - 1] = static_cast<std::uint8_t>(c);
  }
  return ChainInstance(p, n, std::move(x), std::move(t), c);
}

std::uint64_t meter(const Transcript& t) {
  std::uint64_t best = 0;
  for (const Hop& h : t.hops) best = std::max(best, h.bits);
  return best;
}

std::uint32_t index_bits(std::uint32_t n) {
  std::uint32_t b = 0;
  while ((std::uint64_t{1} << b) < n) ++b;
  return b;
}

std::vector<std::uint8_t> encode_ids(std::uint8_t tag,
                                     const std::vector<ElementId>& ids) {
  std::vector<std::uint8_t> out{kStateVersion, tag};
  put_u32(out, static_cast<std::uint32_t>(ids.size()));
  for (ElementId u : ids) put_u32(out, u);
  return out;
}

std::vector<ElementId> decode_ids(std::uint8_t tag,
                                  std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 6 || bytes[0] != kStateVersion || bytes[1] != tag) {
    throw std::invalid_argument("state has the wrong version or tag");
  }
  const std::uint32_t count = get_u32(bytes, 2);
  if (bytes.size() != 6 + std::size_t{count} * 4) {
    throw std::invalid_argument("state length does not match its count");
  }
  std::vector<ElementId> ids(count);
  for (std::uint32_t i = 0; i < count; ++i) ids[i] = get_u32(bytes, 6 + 4 * i);
  return ids;
}

void ExactStoreAll::process(ElementId u, const InnerContext&) {
  stored_.push_back(u);
}

ElementSet ExactStoreAll::output(const InnerContext& ctx) const {
  std::vector<ElementId> sorted = stored_;
  std::sort(sorted.begin(), sorted.end());
  return best_subset(ctx.objective, *ctx.oracle, sorted).set;
}

std::vector<std::uint8_t> ExactStoreAll::save() const {
  return encode_ids(kExactTag, stored_);
}

void ExactStoreAll::load(std::span<const std::uint8_t> bytes) {
  stored_ = decode_ids(kExactTag, bytes);
}

void GreedyInner::process(ElementId u, const InnerContext& ctx) {
  if (!admits(u)) return;
  ElementSet next = set_.with(u);
  if (!ctx.oracle->is_independent(next)) return;
  if (ctx.objective && ctx.objective->marginal(u, set_) <= 0) return;
  set_ = std::move(next);
}

bool GreedyInner::admits(ElementId) const { return true; }

std::vector<std::uint8_t> GreedyInner::save() const {
  return encode_ids(kGreedyTag, set_.members());
}

void GreedyInner::load(std::span<const std::uint8_t> bytes) {
  set_ = ElementSet(decode_ids(kGreedyTag, bytes));
}

CappedGreedy::CappedGreedy(std::function<std::uint32_t(ElementId)> group,
                           std::vector<std::size_t> caps)
    : group_(std::move(group)), caps_(std::move(caps)) {}

bool CappedGreedy::admits(ElementId u) const {
  const std::uint32_t g = group_(u);
  if (g >= caps_.size()) return false;
  std::size_t have = 0;
  for (ElementId v : set_) have += group_(v) == g ? 1 : 0;
  return have < caps_[g];
}

InnerFactory make_inner(std::string_view name) {
  if (name == "exact") {
    return [](std::uint64_t) { return std::make_unique<ExactStoreAll>(); };
  }
  if (name == "greedy") {
    return [](std::uint64_t) { return std::make_unique<GreedyInner>(); };
  }
  throw std::invalid_argument("unknown inner algorithm: " + std::string(name));
}

std::size_t boosted_copies(std::uint32_t k, const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  Rational kk = static_cast<unsigned long>(k);
  return static_cast<std::size_t>(ceil(2 * kk * kk / eps).get_ui());
}

ProtocolResult run_protocol1(const ChainInstance& inst,
                             const InnerFactory& factory, std::size_t copies,
                             std::uint64_t seed) {
  if (copies < 1) throw std::invalid_argument("need at least one copy");
  const std::uint32_t k = inst.p();
  const std::uint32_t m = inst.n();
  std::vector<ElementId> hidden;
  for (std::uint32_t i = 1; i < k; ++i) {
    hidden.push_back((i - 1) * m + inst.index(i + 1) - 1);
  }
  ProtocolResult result;
  std::vector<std::vector<std::uint8_t>> received;
  std::vector<ElementId> streamed;
  std::vector<std::uint32_t> forwarded;
  for (std::uint32_t i = 1; i < k; ++i) {
    if (i >= 2) forwarded.push_back(inst.index(i));
    const std::vector<ElementId> known(hidden.begin(), hidden.begin() + (i - 1));
    PrefixChainOracle oracle(k, m, known, i);
    std::vector<ElementId> elements;
    for (std::uint32_t j = 1; j <= m; ++j) {
      if (inst.bit(i, j)) elements.push_back((i - 1) * m + j - 1);
    }
    streamed.insert(streamed.end(), elements.begin(), elements.end());
    received = player_turn(factory, seed, received, elements,
                           InnerContext{&oracle, nullptr}, copies);
    const std::vector<std::uint8_t> payload = pack(received);
    result.transcript.hops.push_back(make_hop(payload, forwarded, m));
    received = unpack(payload, copies);
  }
  HiddenChainSystem system(k, m, hidden);
  CommonOraclePtr full = system.common_oracle();
  std::vector<ElementId> last;
  for (std::uint32_t j = 1; j <= m; ++j) last.push_back((k - 1) * m + j - 1);
  streamed.insert(streamed.end(), last.begin(), last.end());
  const InnerContext ctx{full.get(), nullptr};
  received = player_turn(factory, seed, received, last, ctx, copies);
  result.outputs = final_outputs(factory, seed, received, ctx, copies);
  check_streamed(result.outputs, streamed);
  for (const auto& s : result.outputs) {
    if (s.size() >= 2) result.verdict = 1;
  }
  result.transcript.verdict = result.verdict;
  return result;
}

std::uint64_t CoordinateTree::level_offset(std::uint32_t r) const {
  std::uint64_t offset = 0;
  std::uint64_t width = 1;
  for (std::uint32_t s = 1; s < r; ++s) {
    offset += width;
    width *= m;
  }
  return offset;
}

std::uint64_t CoordinateTree::node_count() const { return level_offset(p); }

std::uint64_t CoordinateTree::node(const std::vector<std::uint32_t>& path) const {
  std::uint64_t v = 0;
  for (std::uint32_t t : path) {
    if (t < 1 || t > m) throw std::out_of_range("tree index outside 1..m");
    v = v * m + (t - 1);
  }
  return level_offset(static_cast<std::uint32_t>(path.size()) + 1) + v;
}

std::vector<std::vector<std::uint32_t>> CoordinateTree::layer(
    const std::vector<std::uint32_t>& path) const {
  if (path.size() + 1 >= p) throw std::out_of_range("tree level outside 1..p-1");
  std::vector<std::vector<std::uint32_t>> avoid;
  std::vector<std::uint32_t> prefix;
  for (std::size_t s = 0;; ++s) {
    Rng rng(mix64(seed + node(prefix)));
    auto vs = sample_coordinate_layer(p, k, m, avoid, rng);
    if (s == path.size()) return vs;
    avoid.push_back(vs[path[s] - 1]);
    prefix.push_back(path[s]);
  }
}

CoordinateTreeOracle::CoordinateTreeOracle(std::uint64_t nodes,
                                           std::uint32_t m)
    : nodes_(nodes), m_(m) {}

void CoordinateTreeOracle::add_node(std::uint64_t node,
                                    std::vector<std::vector<std::uint32_t>> vs) {
  if (node >= nodes_ || vs.size() != m_) {
    throw std::invalid_argument("tree node does not fit the oracle");
  }
  layers_[node] = std::move(vs);
}

std::size_t CoordinateTreeOracle::ground_size() const {
  return static_cast<std::size_t>(nodes_ * m_);
}

const std::vector<std::uint32_t>& CoordinateTreeOracle::vec(ElementId u) const {
  auto it = layers_.find(u / m_);
  if (it == layers_.end()) {
    throw std::logic_error("element " + std::to_string(u) +
                           " belongs to a tree node nobody computed");
  }
  return it->second[u % m_];
}

bool CoordinateTreeOracle::is_independent(const ElementSet& s) const {
  check_within(s, ground_size());
  const auto& ids = s.members();
  for (std::size_t a = 0; a < ids.size(); ++a) {
    const auto& va = vec(ids[a]);
    for (std::size_t b = a + 1; b < ids.size(); ++b) {
      const auto& vb = vec(ids[b]);
      for (std::size_t c = 0; c < va.size(); ++c) {
        if (va[c] == vb[c]) return false;
      }
    }
  }
  return true;
}

ProtocolResult run_protocol2(const ChainInstance& inst, std::uint32_t k,
                             const InnerFactory& factory, std::uint64_t seed,
                             TreeMode mode) {
  const std::uint32_t p = inst.p();
  const std::uint32_t m = inst.n();
  if (k < 1) throw std::invalid_argument("need k >= 1 coordinates");
  std::uint64_t widest = 1;
  for (std::uint32_t s = 2; s < p; ++s) {
    widest *= m;
    if (widest > kTreeBudget) {
      throw std::invalid_argument("precomputation tree exceeds m^(p-2) <= 1e5");
    }
  }
  const CoordinateTree tree{p, m, k, seed};
  CoordinateTreeOracle oracle(tree.node_count(), m);
  if (mode == TreeMode::kExhaustive) {
    std::vector<std::uint32_t> path;
    // Depth-first over every index sequence of length 0..p-2.
    std::function<void()> visit = [&] {
      oracle.add_node(tree.node(path), tree.layer(path));
      if (path.size() + 2 >= p) return;
      for (std::uint32_t t = 1; t <= m; ++t) {
        path.push_back(t);
        visit();
        path.pop_back();
      }
    };
    visit();
  }
  ProtocolResult result;
  std::vector<std::vector<std::uint8_t>> received;
  std::vector<std::uint32_t> path;
  std::vector<ElementId> streamed;
  for (std::uint32_t r = 1; r < p; ++r) {
    if (r >= 2) path.push_back(inst.index(r));
    const std::uint64_t node = tree.node(path);
    if (mode == TreeMode::kLazy) oracle.add_node(node, tree.layer(path));
    std::vector<ElementId> elements;
    for (std::uint32_t j = 1; j <= m; ++j) {
      if (inst.bit(r, j)) elements.push_back(static_cast<ElementId>(node * m + j - 1));
    }
    streamed.insert(streamed.end(), elements.begin(), elements.end());
    received = player_turn(factory, seed, received, elements,
                           InnerContext{&oracle, nullptr}, 1);
    const std::vector<std::uint8_t> payload = pack(received);
    result.transcript.hops.push_back(make_hop(payload, path, m));
    received = unpack(payload, 1);
  }
  const InnerContext ctx{&oracle, nullptr};
  result.outputs = final_outputs(factory, seed, received, ctx, 1);
  check_streamed(result.outputs, streamed);
  result.verdict = result.outputs[0].size() >= 2 ? 1 : 0;
  result.transcript.verdict = result.verdict;
  return result;
}

ProtocolResult run_protocol3(const ChainInstance& inst,
                             const std::vector<BipartiteLayer>& layers,
                             const Rational& eps, const Rational& alpha,
                             const InnerFactory& factory, std::uint64_t seed) {
  if (alpha <= 0) throw std::invalid_argument("alpha must be positive");
  const auto p = static_cast<std::uint32_t>(layers.size());
  if (inst.p() != p + 1) {
    throw std::invalid_argument("family reduction needs p + 1 players");
  }
  const std::uint32_t n = inst.n();
  std::vector<std::optional<std::uint32_t>> o(p);
  auto full = std::make_shared<ChainFamilyFn>(layers, n, eps, o);
  for (std::uint32_t i = 1; i <= p; ++i) o[i - 1] = inst.index(i + 1) - 1;
  full = full->with_indices(o);
  MatroidIntersection oracle(matching_matroids(*full));
  ProtocolResult result;
  std::vector<std::vector<std::uint8_t>> received;
  std::vector<std::uint32_t> forwarded;
  std::vector<ElementId> streamed;
  for (std::uint32_t i = 1; i <= p; ++i) {
    if (i >= 2) forwarded.push_back(inst.index(i));
    std::vector<std::optional<std::uint32_t>> known(p);
    for (std::uint32_t h = 1; h < i; ++h) known[h - 1] = o[h - 1];
    auto f = full->with_indices(known);
    std::vector<ElementId> elements;
    for (std::uint32_t j = 1; j <= n; ++j) {
      if (!inst.bit(i, j)) continue;
      for (std::uint32_t e = 0; e < layers[i - 1].edges.size(); ++e) {
        elements.push_back(full->id(i, e, j - 1));
      }
    }
    streamed.insert(streamed.end(), elements.begin(), elements.end());
    received = player_turn(factory, seed, received, elements,
                           InnerContext{&oracle, f.get()}, 1);
    const std::vector<std::uint8_t> payload = pack(received);
    result.transcript.hops.push_back(make_hop(payload, forwarded, n));
    received = unpack(payload, 1);
  }
  const InnerContext ctx{&oracle, full.get()};
  result.outputs = final_outputs(factory, seed, received, ctx, 1);
  check_streamed(result.outputs, streamed);
  const Rational threshold =
      1 + Rational(static_cast<unsigned long>(p)) / (1 + alpha);
  result.verdict = full->value(result.outputs[0]) >= threshold ? 1 : 0;
  result.transcript.verdict = result.verdict;
  return result;
}

}  // namespace smkm
