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

#include "smkm/matroids.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace smkm {

PartitionMatroid::PartitionMatroid(std::vector<std::uint32_t> block_of,
                                   std::vector<std::uint32_t> capacity)
    : Matroid(block_of.size()),
      block_of_(std::move(block_of)),
      capacity_(std::move(capacity)) {
  for (std::uint32_t b : block_of_) {
    if (b >= capacity_.size()) {
      throw std::invalid_argument("partition matroid: block " +
                                  std::to_string(b) + " has no capacity");
    }
  }
}

bool PartitionMatroid::independent(const ElementSet& s) const {
  if (s.size() <= 1) {
    return s.empty() || capacity_[block_of_[*s.begin()]] >= 1;
  }
  std::vector<std::uint32_t> used(capacity_.size(), 0);
  for (ElementId u : s) {
    std::uint32_t b = block_of_[u];
    if (++used[b] > capacity_[b]) return false;
  }
  return true;
}

void CoordinateSystem::validate() const {
  if (p == 0 || k == 0) {
    throw std::invalid_argument("coordinate system needs p >= 1 and k >= 1");
  }
  for (std::size_t u = 0; u < coords.size(); ++u) {
    if (coords[u].size() != k) {
      throw std::invalid_argument("element " + std::to_string(u) +
                                  " does not have k coordinates");
    }
    for (std::uint32_t c : coords[u]) {
      if (c < 1 || c > p) {
        throw std::invalid_argument("coordinate of element " +
                                    std::to_string(u) + " outside 1..p");
      }
    }
  }
}

CoordinateMatroid::CoordinateMatroid(
    std::shared_ptr<const CoordinateSystem> sys, std::uint32_t index)
    : Matroid(sys->ground_size()), sys_(std::move(sys)), index_(index) {
  if (index_ < 1 || index_ > sys_->k) {
    throw std::out_of_range("coordinate index " + std::to_string(index_) +
                            " outside 1.." + std::to_string(sys_->k));
  }
}

bool CoordinateMatroid::independent(const ElementSet& s) const {
  std::vector<bool> seen(sys_->p + 1, false);
  for (ElementId u : s) {
    std::uint32_t c = sys_->coords[u][index_ - 1];
    if (seen[c]) return false;
    seen[c] = true;
  }
  return true;
}

MatroidPtr coordinate_matroid(std::shared_ptr<const CoordinateSystem> sys,
                              std::uint32_t index) {
  return std::make_shared<CoordinateMatroid>(std::move(sys), index);
}

TruncatedMatroid::TruncatedMatroid(MatroidPtr base, std::size_t rank_bound)
    : Matroid(base->ground_size()), base_(std::move(base)), bound_(rank_bound) {}

bool TruncatedMatroid::independent(const ElementSet& s) const {
  return s.size() <= bound_ && base_->is_independent(s);
}

MatroidPtr truncate(MatroidPtr m, std::size_t rank_bound) {
  return std::make_shared<TruncatedMatroid>(std::move(m), rank_bound);
}

ContractedMatroid::ContractedMatroid(MatroidPtr base, ElementSet contracted)
    : Matroid(base->ground_size()),
      base_(std::move(base)),
      contracted_(std::move(contracted)) {
  if (!base_->is_independent(contracted_)) {
    throw std::invalid_argument("cannot contract dependent set " +
                                contracted_.to_string());
  }
}

bool ContractedMatroid::independent(const ElementSet& s) const {
  if (s.intersects(contracted_)) {
    throw std::invalid_argument("query " + s.to_string() +
                                " meets contracted set " +
                                contracted_.to_string());
  }
  return base_->is_independent(s.united(contracted_));
}

MatroidPtr contract(MatroidPtr m, const ElementSet& s) {
  return std::make_shared<ContractedMatroid>(std::move(m), s);
}

std::size_t rank(const Matroid& m, const ElementSet& s) {
  ElementSet basis;
  for (ElementId u : s) {
    ElementSet next = basis.with(u);
    if (m.is_independent(next)) basis = std::move(next);
  }
  return basis.size();
}

std::size_t full_rank(const Matroid& m) {
  std::vector<ElementId> all(m.ground_size());
  for (std::size_t u = 0; u < all.size(); ++u) all[u] = static_cast<ElementId>(u);
  return rank(m, ElementSet(std::move(all)));
}

bool is_loop(const Matroid& m, ElementId u) {
  return !m.is_independent(ElementSet{u});
}

MatroidIntersection::MatroidIntersection(std::vector<MatroidPtr> ms)
    : ms_(std::move(ms)) {
  if (ms_.empty()) throw std::invalid_argument("empty matroid list");
  for (const auto& m : ms_) {
    if (m->ground_size() != ms_.front()->ground_size()) {
      throw std::invalid_argument("matroids have different ground sets");
    }
  }
}

std::size_t MatroidIntersection::ground_size() const {
  return ms_.front()->ground_size();
}

bool MatroidIntersection::is_independent(const ElementSet& s) const {
  for (const auto& m : ms_) {
    if (!m->is_independent(s)) return false;
  }
  return true;
}

bool common_independent(const std::vector<MatroidPtr>& ms,
                        const ElementSet& s) {
  return MatroidIntersection(ms).is_independent(s);
}

namespace {

std::vector<std::uint32_t> hidden_chain_blocks(
    std::uint32_t k, std::uint32_t m, const std::vector<ElementId>& hidden,
    std::uint32_t i) {
  // Block 0 is the capped part, block 1 is free.
  std::vector<std::uint32_t> block_of(std::size_t{k} * m, 1);
  for (std::size_t u = 0; u < std::size_t{i} * m; ++u) block_of[u] = 0;
  for (std::uint32_t h = 0; h + 1 < i; ++h) block_of[hidden[h]] = 1;
  return block_of;
}

void check_hidden(std::uint32_t k, std::uint32_t m,
                  const std::vector<ElementId>& hidden, std::size_t count) {
  if (hidden.size() != count) {
    throw std::invalid_argument("expected " + std::to_string(count) +
                                " hidden elements");
  }
  for (std::size_t h = 0; h < hidden.size(); ++h) {
    if (hidden[h] / m != h) {
      throw std::invalid_argument("hidden element u_" + std::to_string(h + 1) +
                                  " is not in block " + std::to_string(h + 1));
    }
  }
  (void)k;
}

class CommonOnly : public CommonOracle {
 public:
  explicit CommonOnly(std::vector<MatroidPtr> ms) : inner_(std::move(ms)) {}
  std::size_t ground_size() const override { return inner_.ground_size(); }
  bool is_independent(const ElementSet& s) const override {
    return inner_.is_independent(s);
  }

 private:
  MatroidIntersection inner_;
};

}  // namespace

HiddenChainMatroid::HiddenChainMatroid(std::uint32_t k, std::uint32_t m,
                                       const std::vector<ElementId>& hidden,
                                       std::uint32_t i)
    : PartitionMatroid(hidden_chain_blocks(k, m, hidden, i),
                       {1, static_cast<std::uint32_t>(std::size_t{k} * m)}),
      index_(i) {}

HiddenChainSystem::HiddenChainSystem(std::uint32_t k, std::uint32_t m,
                                     std::vector<ElementId> hidden)
    : k_(k), m_(m), hidden_(std::move(hidden)) {
  if (k_ < 1 || m_ < 1) {
    throw std::invalid_argument("hidden-chain system needs k >= 1, m >= 1");
  }
  check_hidden(k_, m_, hidden_, k_ - 1);
  for (std::uint32_t i = 1; i <= k_; ++i) {
    ms_.push_back(std::make_shared<HiddenChainMatroid>(k_, m_, hidden_, i));
  }
}

MatroidPtr HiddenChainSystem::matroid(std::uint32_t i) const {
  if (i < 1 || i > k_) throw std::out_of_range("matroid index out of range");
  return ms_[i - 1];
}

CommonOraclePtr HiddenChainSystem::common_oracle() const {
  return std::make_shared<CommonOnly>(ms_);
}

PrefixChainOracle::PrefixChainOracle(std::uint32_t k, std::uint32_t m,
                                     std::vector<ElementId> known_hidden,
                                     std::uint32_t level)
    : k_(k), m_(m), known_(std::move(known_hidden)), level_(level) {
  if (level_ < 1 || level_ > k_) {
    throw std::out_of_range("prefix level outside 1..k");
  }
  check_hidden(k_, m_, known_, level_ - 1);
}

bool PrefixChainOracle::is_independent(const ElementSet& s) const {
  check_within(s, ground_size());
  if (!s.empty() && s.members().back() >= std::size_t{level_} * m_) {
    throw std::out_of_range("prefix oracle of level " +
                            std::to_string(level_) +
                            " queried beyond its blocks");
  }
  // For sets inside the first `level` blocks, M_level's condition implies
  // every later one, so only levels 1..level need checking.
  for (std::uint32_t i = 1; i <= level_; ++i) {
    std::size_t capped = 0;
    for (ElementId u : s) {
      if (u >= std::size_t{i} * m_) break;
      bool hidden_below = false;
      for (std::uint32_t h = 0; h + 1 < i; ++h) {
        if (known_[h] == u) hidden_below = true;
      }
      if (!hidden_below) ++capped;
    }
    if (capped > 1) return false;
  }
  return true;
}

namespace {

void add_violation(AxiomReport& r, std::size_t max_witnesses,
                   std::string what) {
  if (r.violations.size() < max_witnesses) r.violations.push_back(std::move(what));
}

}  // namespace

AxiomReport check_matroid_axioms(const Matroid& m, std::uint64_t seed,
                                 std::size_t samples,
                                 std::size_t max_witnesses) {
  const std::size_t n = m.ground_size();
  if (n > 20) throw std::invalid_argument("axiom check needs n <= 20");
  AxiomReport report;
  if (!m.is_independent(ElementSet{})) {
    add_violation(report, max_witnesses, "empty set dependent");
  }
  if (n <= 12) {
    report.exhaustive = true;
    const std::uint64_t full = std::uint64_t{1} << n;
    std::vector<char> indep(full);
    for (std::uint64_t s = 0; s < full; ++s) {
      indep[s] = m.is_independent(ElementSet::from_mask(s)) ? 1 : 0;
    }
    // Hereditary: removing one element suffices by induction.
    for (std::uint64_t s = 1; s < full; ++s) {
      if (!indep[s]) continue;
      for (std::uint64_t rest = s; rest; rest &= rest - 1) {
        std::uint64_t bit = rest & (~rest + 1);
        ++report.checked;
        if (!indep[s ^ bit]) {
          add_violation(report, max_witnesses,
                        "hereditary: " + ElementSet::from_mask(s).to_string() +
                            " independent but " +
                            ElementSet::from_mask(s ^ bit).to_string() +
                            " dependent");
        }
      }
    }
    // Exchange for |B| = |A| + 1; larger gaps follow from heredity.
    std::vector<std::uint64_t> ext(full, 0);
    std::vector<std::vector<std::uint64_t>> by_size(n + 2);
    for (std::uint64_t s = 0; s < full; ++s) {
      if (!indep[s]) continue;
      by_size[std::popcount(s)].push_back(s);
      for (std::size_t b = 0; b < n; ++b) {
        std::uint64_t bit = std::uint64_t{1} << b;
        if (!(s & bit) && indep[s | bit]) ext[s] |= bit;
      }
    }
    for (std::size_t size = 0; size + 1 <= n; ++size) {
      for (std::uint64_t a : by_size[size]) {
        for (std::uint64_t b : by_size[size + 1]) {
          ++report.checked;
          if ((b & ~a & ext[a]) == 0) {
            add_violation(report, max_witnesses,
                          "exchange: A=" + ElementSet::from_mask(a).to_string() +
                              " B=" + ElementSet::from_mask(b).to_string());
          }
        }
      }
    }
    return report;
  }
  Rng rng(seed);
  auto random_set = [&]() {
    std::uint64_t s = 0;
    for (std::size_t b = 0; b < n; ++b) {
      if (rng.coin()) s |= std::uint64_t{1} << b;
    }
    return s;
  };
  // Shrink random sets to independent ones by dropping random members.
  auto independent_set = [&]() {
    std::uint64_t s = random_set();
    while (!m.is_independent(ElementSet::from_mask(s))) {
      std::vector<std::uint64_t> bits;
      for (std::uint64_t r = s; r; r &= r - 1) bits.push_back(r & (~r + 1));
      s ^= bits[rng.below(bits.size())];
    }
    return s;
  };
  for (std::size_t t = 0; t < samples; ++t) {
    std::uint64_t s = independent_set();
    for (std::uint64_t rest = s; rest; rest &= rest - 1) {
      std::uint64_t bit = rest & (~rest + 1);
      ++report.checked;
      if (!m.is_independent(ElementSet::from_mask(s ^ bit))) {
        add_violation(report, max_witnesses,
                      "hereditary: " + ElementSet::from_mask(s).to_string());
      }
    }
    std::uint64_t a = independent_set();
    std::uint64_t b = independent_set();
    if (std::popcount(a) > std::popcount(b)) std::swap(a, b);
    if (std::popcount(a) == std::popcount(b)) continue;
    ++report.checked;
    bool found = false;
    for (std::uint64_t rest = b & ~a; rest && !found; rest &= rest - 1) {
      std::uint64_t bit = rest & (~rest + 1);
      found = m.is_independent(ElementSet::from_mask(a | bit));
    }
    if (!found) {
      add_violation(report, max_witnesses,
                    "exchange: A=" + ElementSet::from_mask(a).to_string() +
                        " B=" + ElementSet::from_mask(b).to_string());
    }
  }
  return report;
}

AxiomReport check_block_equivalence(const HiddenChainSystem& sys) {
  const std::size_t n = sys.ground_size();
  if (n > 20) throw std::invalid_argument("equivalence check needs k*m <= 20");
  AxiomReport report;
  report.exhaustive = true;
  MatroidIntersection common(sys.matroids());
  const std::uint32_t m = sys.m();
  for (std::uint32_t i = 1; i <= sys.k(); ++i) {
    const std::uint64_t prefix = (std::uint64_t{1} << (std::size_t{i} * m)) - 1;
    const std::uint64_t block = prefix & ~((std::uint64_t{1} << (std::size_t{i - 1} * m)) - 1);
    for (std::uint64_t s = 0; s <= prefix; ++s) {
      if (!common.is_independent(ElementSet::from_mask(s))) continue;
      for (std::uint64_t xs = s & block; xs; xs &= xs - 1) {
        std::uint64_t x = xs & (~xs + 1);
        for (std::uint64_t ys = block & ~s; ys; ys &= ys - 1) {
          std::uint64_t y = ys & (~ys + 1);
          ++report.checked;
          std::uint64_t swapped = (s ^ x) | y;
          if (!common.is_independent(ElementSet::from_mask(swapped))) {
            if (report.violations.size() < 8) {
              report.violations.push_back(
                  "swap in block " + std::to_string(i) + ": " +
                  ElementSet::from_mask(s).to_string() + " -> " +
                  ElementSet::from_mask(swapped).to_string());
            }
          }
        }
      }
    }
  }
  return report;
}

}  // namespace smkm
