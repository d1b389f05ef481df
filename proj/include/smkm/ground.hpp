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

// Ground-set primitives shared by every other module: element identifiers,
// canonical element sets, arrival streams and the reproducible generator.

#ifndef SMKM_GROUND_HPP_
#define SMKM_GROUND_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace smkm {

using ElementId = std::uint32_t;

// Thrown whenever an element id falls outside the ground set of the object
// being queried.
class OutOfGroundSet : public std::out_of_range {
 public:
  OutOfGroundSet(ElementId id, std::size_t ground_size);
};

// Set of element ids kept sorted and duplicate free, so equal sets have
// identical representations regardless of insertion order.
class ElementSet {
 public:
  using const_iterator = std::vector<ElementId>::const_iterator;

  ElementSet() = default;
  ElementSet(std::initializer_list<ElementId> ids);
  explicit ElementSet(std::vector<ElementId> ids);

  static ElementSet from_mask(std::uint64_t mask);

  bool contains(ElementId id) const;
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  const_iterator begin() const { return members_.begin(); }
  const_iterator end() const { return members_.end(); }
  const std::vector<ElementId>& members() const { return members_; }
  std::span<const ElementId> view() const { return members_; }

  // Largest id plus one, or zero for the empty set.
  std::size_t bound() const;

  ElementSet with(ElementId id) const;
  ElementSet without(ElementId id) const;
  ElementSet united(const ElementSet& other) const;
  ElementSet minus(const ElementSet& other) const;
  bool is_subset_of(const ElementSet& other) const;
  bool intersects(const ElementSet& other) const;

  // Bitmask form; only valid when every id is below 64.
  std::uint64_t mask() const;

  std::string to_string() const;

  friend bool operator==(const ElementSet&, const ElementSet&) = default;
  friend auto operator<=>(const ElementSet& a, const ElementSet& b) {
    return a.members_ <=> b.members_;
  }

 private:
  std::vector<ElementId> members_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const noexcept;
};

// Insert with a bounds check against a ground set of size `ground_size`.
ElementSet set_insert(const ElementSet& s, ElementId u, std::size_t ground_size);

void check_within(const ElementSet& s, std::size_t ground_size);

// Deterministic generator. The bit source is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; bounded draws use rejection
// sampling implemented here rather than std::uniform_int_distribution,
// whose algorithm differs between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }
  // Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  bool coin() { return (engine_() >> 63) != 0; }
  // True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Independent generator for an experiment cell: seed XOR cell index.
  Rng split(std::uint64_t cell) const { return Rng(seed_ ^ cell); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to derive per-node seeds from a shared seed.
std::uint64_t mix64(std::uint64_t x);

// Arrival order over a ground set of size `ground_size`.
class Stream {
 public:
  Stream() = default;
  Stream(std::vector<ElementId> order, std::size_t ground_size);

  const std::vector<ElementId>& order() const { return order_; }
  std::size_t ground_size() const { return ground_size_; }
  std::size_t size() const { return order_.size(); }
  ElementId operator[](std::size_t pos) const { return order_[pos]; }

  // Position of each element in the stream; npos for absent ones.
  std::vector<std::size_t> positions() const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  friend bool operator==(const Stream&, const Stream&) = default;

 private:
  std::vector<ElementId> order_;
  std::size_t ground_size_ = 0;
};

Stream random_permutation(std::size_t n, Rng& rng);

// Forward-only view of a stream. Reading an element twice is a contract
// violation and throws.
class StreamCursor {
 public:
  explicit StreamCursor(const Stream& stream) : stream_(&stream) {}

  std::optional<ElementId> next();
  std::size_t position() const { return next_; }
  bool done() const { return next_ >= stream_->size(); }
  // Re-reading guard: fails unless `pos` is the element just returned.
  ElementId current(std::size_t pos) const;

 private:
  const Stream* stream_;
  std::size_t next_ = 0;
};

}  // namespace smkm

#endif  // SMKM_GROUND_HPP_
