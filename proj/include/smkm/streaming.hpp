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

// Threshold streaming algorithms for submodular maximization over k
// matroids, with every guess realized by forking the execution.

#ifndef SMKM_STREAMING_HPP_
#define SMKM_STREAMING_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "smkm/fealg.hpp"
#include "smkm/ground.hpp"
#include "smkm/matroids.hpp"
#include "smkm/rational.hpp"
#include "smkm/submodular.hpp"

namespace smkm {

enum class Variant { kMonotone, kNonMonotone };

struct StreamingConfig {
  // Fail loudly once this many logical branches are alive at once.
  std::size_t branch_cap = 5'000'000;
  // Non-monotone variant only: at stream end, drop partially filled
  // candidate groups instead of picking among the filled ones.
  bool prune_unfilled = false;
};

class BranchBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunMetrics {
  std::size_t peak_live_branches = 0;
  std::size_t peak_frames = 0;
  std::size_t peak_fe_states = 0;
  std::size_t max_fe_states = 0;     // largest single FEAlg instance
  std::size_t max_fe_marks = 0;      // most marks by one FEAlg instance
  std::uint64_t total_marks = 0;
  std::uint64_t completions = 0;
  std::uint64_t end_picks = 0;
  std::size_t max_iteration = 0;     // deepest iteration that started
  // [j-1]: most children one iteration-j thread produced, counting the
  // skip child.
  std::vector<std::uint64_t> spawned_per_iteration;
  // Live threshold instances after each stream element (full pipeline).
  std::vector<std::size_t> grid_history;
  std::size_t peak_grid = 0;
  std::size_t instances_created = 0;
};

struct RunResult {
  ElementSet output;
  Rational value;
  // Guess outcomes leading to the output; ties between equal values go to
  // the lexicographically smallest path.
  std::vector<std::int64_t> path;
  RunMetrics metrics;
};

// Largest t with tau / (1+eps)^t still a finite guess for iteration j:
// the smallest integer t >= 0 with (1+eps)^t >= j^2 / eps.
unsigned max_bucket(std::size_t j, const Rational& eps);

// Powers of two between m and 2m(k|G|)^2/eps, as exponents; empty if m = 0.
struct TauGrid {
  static std::vector<int> live_exponents(const Rational& m, std::size_t k,
                                         std::size_t greedy_size,
                                         const Rational& eps);
  // Exact check of count <= 1 + log2(2 k^2 |G|^2 / eps).
  static bool within_bound(std::size_t count, std::size_t k,
                           std::size_t greedy_size, const Rational& eps);
};

// Greedy rank of the arrived elements in each matroid.
class RankTracker {
 public:
  explicit RankTracker(std::vector<MatroidPtr> ms);
  void add(ElementId u);
  std::size_t rank(std::size_t i) const { return bases_[i].size(); }
  std::size_t min_rank() const;

 private:
  std::vector<MatroidPtr> ms_;
  std::vector<ElementSet> bases_;
};

// One run of the threshold algorithm for a fixed tau. Each thread of the
// guessed execution is a frame (S, j, start): partial solution S, current
// iteration j, first stream position it may read. A frame waits until the
// gate reaches j, then routes every element to the FEAlg group of its
// marginal's bucket. A mark completes the iteration with S + u in some
// thread, which becomes a new frame starting after the mark. Guessing "no
// bucket" moves to iteration j + 1 at once with S unchanged.
class ThresholdRun {
 public:
  ThresholdRun(CachedValue& f, const std::vector<MatroidPtr>& ms,
               std::size_t rank_bound, Variant variant, Rational eps,
               Rational tau, std::optional<std::size_t> max_iterations,
               RunMetrics& metrics, const StreamingConfig& config,
               std::vector<std::int64_t> path_prefix);
  ~ThresholdRun();
  ThresholdRun(const ThresholdRun&) = delete;
  ThresholdRun& operator=(const ThresholdRun&) = delete;

  // `gate` is min_i r_i after counting u; SIZE_MAX disables gating.
  void feed(ElementId u, std::size_t position, std::size_t gate);
  void finish();

  const ElementSet& best_set() const { return best_set_; }
  const Rational& best_value() const { return best_value_; }
  const std::vector<std::int64_t>& best_path() const { return best_path_; }

  std::size_t live_branches() const;
  std::size_t frame_count() const;
  std::size_t fe_states() const;

 private:
  struct Frame;
  struct Group;

  const std::vector<Rational>& thresholds(std::size_t j);
  std::optional<unsigned> bucket(const Rational& gain, std::size_t j);
  void activate(std::unique_ptr<Frame> frame, std::size_t position,
                std::size_t gate, std::vector<std::unique_ptr<Frame>>& out);
  void process(Frame& frame, ElementId u, std::size_t position);
  void complete(Frame& frame, ElementId u, std::vector<std::int64_t> step,
                std::size_t next_start);
  void offer(const ElementSet& s, const std::vector<std::int64_t>& path);
  void add_waiting(std::unique_ptr<Frame> frame);

  CachedValue* f_;
  const std::vector<MatroidPtr>* ms_;
  std::size_t rank_bound_;
  Variant variant_;
  Rational eps_;
  Rational tau_;
  std::optional<std::size_t> max_iterations_;
  RunMetrics* metrics_;
  StreamingConfig config_;
  std::size_t copies_;

  std::map<std::size_t, std::vector<Rational>> thresholds_;
  std::vector<std::unique_ptr<Frame>> active_;
  std::map<std::pair<ElementSet, std::size_t>, std::unique_ptr<Frame>> waiting_;
  std::map<std::pair<ElementSet, std::size_t>, std::unique_ptr<Frame>> born_;

  ElementSet best_set_;
  Rational best_value_;
  std::vector<std::int64_t> best_path_;
};

// Known tau and |OPT|; eps in (0, 1/7). run_alg2 requires a monotone f.
RunResult run_alg2(const Stream& stream, const ValueOracle& f,
                   const std::vector<MatroidPtr>& ms, const Rational& eps,
                   const Rational& tau, std::size_t opt_size,
                   const StreamingConfig& config = {});
RunResult run_alg3(const Stream& stream, const ValueOracle& f,
                   const std::vector<MatroidPtr>& ms, const Rational& eps,
                   const Rational& tau, std::size_t opt_size,
                   const StreamingConfig& config = {});

// Neither tau nor |OPT| known: loops dropped, greedy G and max singleton m
// maintained, one threshold run per live power of two tau, iterations gated
// on the tracked ranks. Returns the best output of the surviving runs, or
// the empty set.
RunResult run_streaming(const Stream& stream, const ValueOracle& f,
                        const std::vector<MatroidPtr>& ms, const Rational& eps,
                        bool monotone, const StreamingConfig& config = {});

}  // namespace smkm

#endif  // SMKM_STREAMING_HPP_
