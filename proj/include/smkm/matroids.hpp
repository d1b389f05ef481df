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

// Independence oracles over a finite ground set {0, ..., n-1}.

#ifndef SMKM_MATROIDS_HPP_
#define SMKM_MATROIDS_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "smkm/ground.hpp"

namespace smkm {

class Matroid {
 public:
  virtual ~Matroid() = default;

  std::size_t ground_size() const { return ground_size_; }

  // Throws OutOfGroundSet when `s` leaves the ground set.
  bool is_independent(const ElementSet& s) const {
    check_within(s, ground_size_);
    return independent(s);
  }

  virtual std::string kind() const = 0;

 protected:
  explicit Matroid(std::size_t ground_size) : ground_size_(ground_size) {}
  // `s` is already bounds checked.
  virtual bool independent(const ElementSet& s) const = 0;

 private:
  std::size_t ground_size_;
};

using MatroidPtr = std::shared_ptr<const Matroid>;

class FreeMatroid : public Matroid {
 public:
  explicit FreeMatroid(std::size_t n) : Matroid(n) {}
  std::string kind() const override { return "free"; }

 protected:
  bool independent(const ElementSet&) const override { return true; }
};

class PartitionMatroid : public Matroid {
 public:
  // block_of[u] is the block of element u; capacity[b] caps block b.
  PartitionMatroid(std::vector<std::uint32_t> block_of,
                   std::vector<std::uint32_t> capacity);

  const std::vector<std::uint32_t>& block_of() const { return block_of_; }
  const std::vector<std::uint32_t>& capacity() const { return capacity_; }
  std::string kind() const override { return "partition"; }

 protected:
  bool independent(const ElementSet& s) const override;

 private:
  std::vector<std::uint32_t> block_of_;
  std::vector<std::uint32_t> capacity_;
};

// Vectors in [p]^k, one per element. Equal vectors are allowed and stand for
// distinct, mutually dependent elements.
struct CoordinateSystem {
  std::uint32_t p = 0;
  std::uint32_t k = 0;
  std::vector<std::vector<std::uint32_t>> coords;

  std::size_t ground_size() const { return coords.size(); }
  // Throws unless every vector has k entries in 1..p.
  void validate() const;
};

class CoordinateMatroid : public Matroid {
 public:
  // `index` is 1-based.
  CoordinateMatroid(std::shared_ptr<const CoordinateSystem> sys,
                    std::uint32_t index);

  std::uint32_t index() const { return index_; }
  const CoordinateSystem& system() const { return *sys_; }
  std::string kind() const override { return "coordinate"; }

 protected:
  bool independent(const ElementSet& s) const override;

 private:
  std::shared_ptr<const CoordinateSystem> sys_;
  std::uint32_t index_;
};

MatroidPtr coordinate_matroid(std::shared_ptr<const CoordinateSystem> sys,
                              std::uint32_t index);

class TruncatedMatroid : public Matroid {
 public:
  TruncatedMatroid(MatroidPtr base, std::size_t rank_bound);
  const Matroid& base() const { return *base_; }
  std::size_t rank_bound() const { return bound_; }
  std::string kind() const override { return "truncated"; }

 protected:
  bool independent(const ElementSet& s) const override;

 private:
  MatroidPtr base_;
  std::size_t bound_;
};

MatroidPtr truncate(MatroidPtr m, std::size_t rank_bound);

// M / S. Element ids are kept; queries touching S are rejected because S is
// outside the contracted ground set.
class ContractedMatroid : public Matroid {
 public:
  ContractedMatroid(MatroidPtr base, ElementSet contracted);
  const Matroid& base() const { return *base_; }
  const ElementSet& contracted() const { return contracted_; }
  std::string kind() const override { return "contracted"; }

 protected:
  bool independent(const ElementSet& s) const override;

 private:
  MatroidPtr base_;
  ElementSet contracted_;
};

// Throws std::invalid_argument when `s` is dependent in `m`.
MatroidPtr contract(MatroidPtr m, const ElementSet& s);

// Greedy rank of `s` in `m`.
std::size_t rank(const Matroid& m, const ElementSet& s);
std::size_t full_rank(const Matroid& m);

// True iff {u} is dependent.
bool is_loop(const Matroid& m, ElementId u);

// Independence in an intersection of matroids, possibly with no per-matroid
// access at all.
class CommonOracle {
 public:
  virtual ~CommonOracle() = default;
  virtual std::size_t ground_size() const = 0;
  virtual bool is_independent(const ElementSet& s) const = 0;
};

using CommonOraclePtr = std::shared_ptr<const CommonOracle>;

class MatroidIntersection : public CommonOracle {
 public:
  // Throws std::invalid_argument on an empty list or mismatched ground sets.
  explicit MatroidIntersection(std::vector<MatroidPtr> ms);

  std::size_t ground_size() const override;
  bool is_independent(const ElementSet& s) const override;
  const std::vector<MatroidPtr>& matroids() const { return ms_; }

 private:
  std::vector<MatroidPtr> ms_;
};

bool common_independent(const std::vector<MatroidPtr>& ms, const ElementSet& s);

// Block i (1-based) holds ids (i-1)m .. im-1. M_i caps the elements of the
// first i blocks other than u_1..u_{i-1} at one, leaving the rest free.
class HiddenChainSystem {
 public:
  HiddenChainSystem(std::uint32_t k, std::uint32_t m,
                    std::vector<ElementId> hidden);

  std::uint32_t k() const { return k_; }
  std::uint32_t m() const { return m_; }
  std::size_t ground_size() const { return std::size_t{k_} * m_; }
  const std::vector<ElementId>& hidden() const { return hidden_; }
  // 1-based block index of an element.
  std::uint32_t block(ElementId u) const { return u / m_ + 1; }

  // 1-based.
  MatroidPtr matroid(std::uint32_t i) const;
  const std::vector<MatroidPtr>& matroids() const { return ms_; }

  // Intersection oracle that exposes no individual matroid.
  CommonOraclePtr common_oracle() const;

 private:
  std::uint32_t k_;
  std::uint32_t m_;
  std::vector<ElementId> hidden_;
  std::vector<MatroidPtr> ms_;
};

// The partition matroid M_i of a hidden-chain system; keeps the parameters
// so that instance files can describe it compactly.
class HiddenChainMatroid : public PartitionMatroid {
 public:
  HiddenChainMatroid(std::uint32_t k, std::uint32_t m,
                     const std::vector<ElementId>& hidden, std::uint32_t i);
  std::uint32_t index() const { return index_; }
  std::string kind() const override { return "hidden_chain"; }

 private:
  std::uint32_t index_;
};

// Common oracle for a hidden-chain system restricted to the first `level`
// blocks, built from u_1..u_{level-1} only. Any query outside those blocks
// throws, which is what lets a player answer queries before the later
// hidden elements are chosen.
class PrefixChainOracle : public CommonOracle {
 public:
  PrefixChainOracle(std::uint32_t k, std::uint32_t m,
                    std::vector<ElementId> known_hidden, std::uint32_t level);

  std::size_t ground_size() const override { return std::size_t{k_} * m_; }
  bool is_independent(const ElementSet& s) const override;

 private:
  std::uint32_t k_;
  std::uint32_t m_;
  std::vector<ElementId> known_;
  std::uint32_t level_;
};

struct AxiomReport {
  bool exhaustive = false;
  std::size_t checked = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Exhaustive for n <= 12; `samples` random probes for 12 < n <= 20.
// Reports at most `max_witnesses` violations.
AxiomReport check_matroid_axioms(const Matroid& m, std::uint64_t seed = 1,
                                 std::size_t samples = 20000,
                                 std::size_t max_witnesses = 8);

// For every i and every common independent S inside the first i blocks,
// swapping an element of S in block i for any other element of block i keeps
// S common independent. Needs k*m <= 20.
AxiomReport check_block_equivalence(const HiddenChainSystem& sys);

}  // namespace smkm

#endif  // SMKM_MATROIDS_HPP_
