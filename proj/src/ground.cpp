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

#include "smkm/ground.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <sstream>

namespace smkm {

OutOfGroundSet::OutOfGroundSet(ElementId id, std::size_t ground_size)
    : std::out_of_range("element " + std::to_string(id) +
                        " outside ground set of size " +
                        std::to_string(ground_size)) {}

ElementSet::ElementSet(std::initializer_list<ElementId> ids)
    : ElementSet(std::vector<ElementId>(ids)) {}

ElementSet::ElementSet(std::vector<ElementId> ids) : members_(std::move(ids)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
}

ElementSet ElementSet::from_mask(std::uint64_t mask) {
  ElementSet s;
  s.members_.reserve(std::popcount(mask));
  while (mask != 0) {
    s.members_.push_back(static_cast<ElementId>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return s;
}

bool ElementSet::contains(ElementId id) const {
  return std::binary_search(members_.begin(), members_.end(), id);
}

std::size_t ElementSet::bound() const {
  return members_.empty() ? 0 : static_cast<std::size_t>(members_.back()) + 1;
}

ElementSet ElementSet::with(ElementId id) const {
  ElementSet out;
  auto it = std::lower_bound(members_.begin(), members_.end(), id);
  if (it != members_.end() && *it == id) return *this;
  out.members_.reserve(members_.size() + 1);
  out.members_.insert(out.members_.end(), members_.begin(), it);
  out.members_.push_back(id);
  out.members_.insert(out.members_.end(), it, members_.end());
  return out;
}

ElementSet ElementSet::without(ElementId id) const {
  ElementSet out;
  out.members_.reserve(members_.size());
  for (ElementId x : members_) {
    if (x != id) out.members_.push_back(x);
  }
  return out;
}

ElementSet ElementSet::united(const ElementSet& other) const {
  ElementSet out;
  out.members_.reserve(members_.size() + other.members_.size());
  std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                 other.members_.end(), std::back_inserter(out.members_));
  return out;
}

ElementSet ElementSet::minus(const ElementSet& other) const {
  ElementSet out;
  std::set_difference(members_.begin(), members_.end(),
                      other.members_.begin(), other.members_.end(),
                      std::back_inserter(out.members_));
  return out;
}

bool ElementSet::is_subset_of(const ElementSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

bool ElementSet::intersects(const ElementSet& other) const {
  auto a = members_.begin();
  auto b = other.members_.begin();
  while (a != members_.end() && b != other.members_.end()) {
    if (*a == *b) return true;
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return false;
}

std::uint64_t ElementSet::mask() const {
  std::uint64_t m = 0;
  for (ElementId x : members_) {
    if (x >= 64) throw std::logic_error("ElementSet::mask needs ids below 64");
    m |= std::uint64_t{1} << x;
  }
  return m;
}

std::string ElementSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) os << ',';
    os << members_[i];
  }
  os << '}';
  return os.str();
}

std::size_t ElementSetHash::operator()(const ElementSet& s) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ s.size();
  for (ElementId x : s) h = mix64(h ^ x);
  return static_cast<std::size_t>(h);
}

void check_within(const ElementSet& s, std::size_t ground_size) {
  if (!s.empty() && s.members().back() >= ground_size) {
    throw OutOfGroundSet(s.members().back(), ground_size);
  }
}

ElementSet set_insert(const ElementSet& s, ElementId u,
                      std::size_t ground_size) {
  if (u >= ground_size) throw OutOfGroundSet(u, ground_size);
  return s.with(u);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below needs bound > 0");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Stream::Stream(std::vector<ElementId> order, std::size_t ground_size)
    : order_(std::move(order)), ground_size_(ground_size) {
  std::vector<bool> seen(ground_size, false);
  for (ElementId id : order_) {
    if (id >= ground_size) throw OutOfGroundSet(id, ground_size);
    if (seen[id]) {
      throw std::invalid_argument("element " + std::to_string(id) +
                                  " appears twice in stream");
    }
    seen[id] = true;
  }
}

std::vector<std::size_t> Stream::positions() const {
  std::vector<std::size_t> pos(ground_size_, npos);
  for (std::size_t i = 0; i < order_.size(); ++i) pos[order_[i]] = i;
  return pos;
}

Stream random_permutation(std::size_t n, Rng& rng) {
  std::vector<ElementId> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<ElementId>(i);
  rng.shuffle(order);
  return Stream(std::move(order), n);
}

std::optional<ElementId> StreamCursor::next() {
  if (done()) return std::nullopt;
  return (*stream_)[next_++];
}

ElementId StreamCursor::current(std::size_t pos) const {
  if (next_ == 0 || pos + 1 != next_) {
    throw std::logic_error("single-pass violation: stream position " +
                           std::to_string(pos) + " is no longer readable");
  }
  return (*stream_)[pos];
}

}  // namespace smkm
