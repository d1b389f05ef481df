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

#include "smkm/streaming.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace smkm {
namespace {

constexpr std::size_t kNoGate = std::numeric_limits<std::size_t>::max();
constexpr std::int64_t kSkip = -1;
constexpr std::int64_t kStreamEnd = std::numeric_limits<std::int64_t>::max();

void check_eps(const Rational& eps) {
  if (eps <= 0 || eps >= Rational(1, 7)) {
    throw std::invalid_argument("eps must lie in (0, 1/7), got " +
                                to_string(eps));
  }
}

void check_inputs(const Stream& stream, const ValueOracle& f,
                  const std::vector<MatroidPtr>& ms) {
  if (ms.empty()) throw std::invalid_argument("need at least one matroid");
  for (const auto& m : ms) {
    if (m->ground_size() != f.ground_size()) {
      throw std::invalid_argument("matroid and objective ground sets differ");
    }
  }
  if (stream.ground_size() != f.ground_size()) {
    throw std::invalid_argument("stream and objective ground sets differ");
  }
}

std::size_t max_rank(const std::vector<MatroidPtr>& ms) {
  std::size_t r = 0;
  for (const auto& m : ms) r = std::max(r, full_rank(*m));
  return r;
}

}  // namespace

unsigned max_bucket(std::size_t j, const Rational& eps) {
  Rational jj = static_cast<unsigned long>(j);
  return ceil_log(1 + eps, jj * jj / eps);
}

std::vector<int> TauGrid::live_exponents(const Rational& m, std::size_t k,
                                         std::size_t greedy_size,
                                         const Rational& eps) {
  std::vector<int> out;
  if (m <= 0) return out;
  Rational kg = static_cast<unsigned long>(k * greedy_size);
  Rational top = 2 * m * kg * kg / eps;
  int lo = ceil_log2(m);
  int hi = floor_log2(top);
  for (int e = lo; e <= hi; ++e) out.push_back(e);
  return out;
}

bool TauGrid::within_bound(std::size_t count, std::size_t k,
                           std::size_t greedy_size, const Rational& eps) {
  if (count == 0) return true;
  if (greedy_size == 0) return false;
  Rational kg = static_cast<unsigned long>(k * greedy_size);
  return pow2(static_cast<int>(count) - 1) <= 2 * kg * kg / eps;
}

RankTracker::RankTracker(std::vector<MatroidPtr> ms)
    : ms_(std::move(ms)), bases_(ms_.size()) {}

void RankTracker::add(ElementId u) {
  for (std::size_t i = 0; i < ms_.size(); ++i) {
    ElementSet next = bases_[i].with(u);
    if (ms_[i]->is_independent(next)) bases_[i] = std::move(next);
  }
}

std::size_t RankTracker::min_rank() const {
  std::size_t r = kNoGate;
  for (const auto& b : bases_) r = std::min(r, b.size());
  return r;
}

struct ThresholdRun::Group {
  std::vector<FeState> fe;
  std::vector<bool> copy_marked;
  std::size_t marked_copies = 0;
  std::vector<std::pair<ElementId, std::size_t>> candidates;
};

struct ThresholdRun::Frame {
  ElementSet s;
  std::size_t j = 1;
  std::size_t start = 0;
  std::vector<std::int64_t> path;
  std::vector<MatroidPtr> contracted;
  std::map<unsigned, Group> groups;
  std::set<ElementSet> children;
};

ThresholdRun::ThresholdRun(CachedValue& f, const std::vector<MatroidPtr>& ms,
                           std::size_t rank_bound, Variant variant,
                           Rational eps, Rational tau,
                           std::optional<std::size_t> max_iterations,
                           RunMetrics& metrics, const StreamingConfig& config,
                           std::vector<std::int64_t> path_prefix)
    : f_(&f),
      ms_(&ms),
      rank_bound_(rank_bound),
      variant_(variant),
      eps_(std::move(eps)),
      tau_(std::move(tau)),
      max_iterations_(max_iterations),
      metrics_(&metrics),
      config_(config) {
  if (tau_ <= 0) throw std::invalid_argument("tau must be positive");
  copies_ = variant_ == Variant::kMonotone
                ? 1
                : static_cast<std::size_t>(ceil(1 / eps_).get_ui());
  best_set_ = ElementSet{};
  best_value_ = f_->value(best_set_);
  best_path_ = path_prefix;
  if (!max_iterations_ || *max_iterations_ >= 1) {
    auto root = std::make_unique<Frame>();
    root->path = std::move(path_prefix);
    add_waiting(std::move(root));
  }
}

ThresholdRun::~ThresholdRun() = default;

const std::vector<Rational>& ThresholdRun::thresholds(std::size_t j) {
  auto it = thresholds_.find(j);
  if (it != thresholds_.end()) return it->second;
  const unsigned top = max_bucket(j, eps_);
  std::vector<Rational> th;
  th.reserve(top + 2);
  Rational cur = tau_;
  for (unsigned i = 0; i <= top + 1; ++i) {
    th.push_back(cur);
    cur /= 1 + eps_;
  }
  return thresholds_.emplace(j, std::move(th)).first->second;
}

std::optional<unsigned> ThresholdRun::bucket(const Rational& gain,
                                             std::size_t j) {
  const std::vector<Rational>& th = thresholds(j);
  // Bucket i is (th[i+1], th[i]]; th is strictly decreasing.
  if (gain > th.front() || gain <= th.back()) return std::nullopt;
  unsigned lo = 0;
  unsigned hi = static_cast<unsigned>(th.size()) - 2;
  while (lo < hi) {
    unsigned mid = (lo + hi) / 2;
    if (th[mid + 1] < gain) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

void ThresholdRun::add_waiting(std::unique_ptr<Frame> frame) {
  auto key = std::make_pair(frame->s, frame->j);
  auto it = waiting_.find(key);
  if (it == waiting_.end()) {
    waiting_.emplace(std::move(key), std::move(frame));
  } else if (frame->path < it->second->path) {
    // Both start once the gate reaches j, so they are the same thread.
    it->second = std::move(frame);
  }
}

void ThresholdRun::activate(std::unique_ptr<Frame> frame, std::size_t position,
                            std::size_t gate,
                            std::vector<std::unique_ptr<Frame>>& out) {
  metrics_->max_iteration = std::max(metrics_->max_iteration, frame->j);
  if (metrics_->spawned_per_iteration.size() < frame->j) {
    metrics_->spawned_per_iteration.resize(frame->j, 0);
  }
  auto& spawned = metrics_->spawned_per_iteration[frame->j - 1];
  spawned = std::max<std::uint64_t>(spawned, 1);
  for (const auto& m : *ms_) {
    frame->contracted.push_back(frame->s.empty() ? m : contract(m, frame->s));
  }
  if (!max_iterations_ || frame->j + 1 <= *max_iterations_) {
    auto skip = std::make_unique<Frame>();
    skip->s = frame->s;
    skip->j = frame->j + 1;
    skip->start = position;
    skip->path = frame->path;
    skip->path.push_back(kSkip);
    if (gate >= skip->j) {
      activate(std::move(skip), position, gate, out);
    } else {
      add_waiting(std::move(skip));
    }
  }
  out.push_back(std::move(frame));
}

void ThresholdRun::offer(const ElementSet& s,
                         const std::vector<std::int64_t>& path) {
  const Rational& v = f_->value(s);
  if (v > best_value_ || (v == best_value_ && path < best_path_)) {
    best_value_ = v;
    best_set_ = s;
    best_path_ = path;
  }
}

void ThresholdRun::complete(Frame& frame, ElementId u,
                            std::vector<std::int64_t> step,
                            std::size_t next_start) {
  ElementSet next = frame.s.with(u);
  if (!common_independent(*ms_, next)) {
    throw std::logic_error("marked element breaks feasibility: " +
                           next.to_string());
  }
  ++metrics_->completions;
  std::vector<std::int64_t> path = frame.path;
  path.insert(path.end(), step.begin(), step.end());
  offer(next, path);
  frame.children.insert(next);
  auto& spawned = metrics_->spawned_per_iteration[frame.j - 1];
  spawned = std::max<std::uint64_t>(spawned, 1 + frame.children.size());
  if (max_iterations_ && frame.j + 1 > *max_iterations_) return;
  auto child = std::make_unique<Frame>();
  child->s = std::move(next);
  child->j = frame.j + 1;
  child->start = next_start;
  child->path = std::move(path);
  auto key = std::make_pair(child->s, child->j);
  auto it = born_.find(key);
  if (it == born_.end()) {
    born_.emplace(std::move(key), std::move(child));
  } else if (child->path < it->second->path) {
    it->second = std::move(child);
  }
}

void ThresholdRun::process(Frame& frame, ElementId u, std::size_t position) {
  Rational gain = f_->marginal(u, frame.s);
  std::optional<unsigned> b = bucket(gain, frame.j);
  if (!b) return;
  auto [it, fresh] = frame.groups.try_emplace(*b);
  Group& group = it->second;
  if (fresh) {
    const std::size_t rho = rank_bound_ - frame.s.size();
    for (std::size_t l = 0; l < copies_; ++l) {
      group.fe.emplace_back(frame.contracted, rho, /*dedup=*/true);
    }
    group.copy_marked.assign(copies_, false);
  }
  const auto t = static_cast<std::int64_t>(position);
  const auto bi = static_cast<std::int64_t>(*b);
  std::optional<std::size_t> marker;
  for (std::size_t l = 0; l < copies_; ++l) {
    if (group.fe[l].process(u)) {
      marker = l;
      break;
    }
  }
  for (const FeState& fe : group.fe) {
    metrics_->max_fe_states = std::max(metrics_->max_fe_states, fe.state_count());
    metrics_->max_fe_marks = std::max(metrics_->max_fe_marks, fe.marked_count());
  }
  if (!marker) return;
  ++metrics_->total_marks;
  // Guess: u is the element this iteration settles on.
  complete(frame, u, {bi, t, t}, position + 1);
  if (variant_ == Variant::kMonotone) return;
  group.candidates.emplace_back(u, position);
  if (!group.copy_marked[*marker]) {
    group.copy_marked[*marker] = true;
    ++group.marked_copies;
  }
  if (group.marked_copies < copies_) return;
  // Every copy has marked something, so in some thread all slots are now
  // filled and any earlier candidate may be the uniform pick.
  for (const auto& [c, tc] : group.candidates) {
    if (c == u) continue;
    complete(frame, c, {bi, static_cast<std::int64_t>(tc), t}, position + 1);
  }
}

void ThresholdRun::feed(ElementId u, std::size_t position, std::size_t gate) {
  std::vector<std::unique_ptr<Frame>> ready;
  for (auto it = waiting_.begin(); it != waiting_.end();) {
    if (it->first.second <= gate && it->second->start <= position) {
      ready.push_back(std::move(it->second));
      it = waiting_.erase(it);
    } else {
      ++it;
    }
  }
  std::vector<std::unique_ptr<Frame>> started;
  for (auto& frame : ready) activate(std::move(frame), position, gate, started);
  for (auto& frame : started) active_.push_back(std::move(frame));
  for (auto& frame : active_) process(*frame, u, position);
  for (auto& [key, frame] : born_) add_waiting(std::move(frame));
  born_.clear();
}

void ThresholdRun::finish() {
  if (variant_ != Variant::kNonMonotone || config_.prune_unfilled) return;
  for (auto& frame : active_) {
    for (auto& [b, group] : frame->groups) {
      for (const auto& [c, tc] : group.candidates) {
        ++metrics_->end_picks;
        std::vector<std::int64_t> path = frame->path;
        path.insert(path.end(), {static_cast<std::int64_t>(b),
                                 static_cast<std::int64_t>(tc), kStreamEnd});
        offer(frame->s.with(c), path);
      }
    }
  }
}

std::size_t ThresholdRun::live_branches() const {
  std::size_t total = waiting_.size() + born_.size();
  for (const auto& frame : active_) {
    total += 1 + frame->groups.size();
    for (const auto& [b, group] : frame->groups) total += group.candidates.size();
  }
  return total;
}

std::size_t ThresholdRun::frame_count() const {
  return active_.size() + waiting_.size() + born_.size();
}

std::size_t ThresholdRun::fe_states() const {
  std::size_t total = 0;
  for (const auto& frame : active_) {
    for (const auto& [b, group] : frame->groups) {
      for (const FeState& fe : group.fe) total += fe.state_count();
    }
  }
  return total;
}

namespace {

void update_peaks(RunMetrics& metrics, std::size_t branches,
                  std::size_t frames, std::size_t states,
                  const StreamingConfig& config) {
  metrics.peak_live_branches =
      std::max(metrics.peak_live_branches, std::max<std::size_t>(branches, 1));
  metrics.peak_frames = std::max(metrics.peak_frames, frames);
  metrics.peak_fe_states = std::max(metrics.peak_fe_states, states);
  if (branches > config.branch_cap) {
    throw BranchBudgetExceeded("live branches " + std::to_string(branches) +
                               " exceed the cap " +
                               std::to_string(config.branch_cap));
  }
}

RunResult run_known(const Stream& stream, const ValueOracle& f,
                    const std::vector<MatroidPtr>& ms, const Rational& eps,
                    const Rational& tau, std::size_t opt_size,
                    Variant variant, const StreamingConfig& config) {
  check_eps(eps);
  check_inputs(stream, f, ms);
  CachedValue cache(f);
  RunResult result;
  ThresholdRun run(cache, ms, max_rank(ms), variant, eps, tau, opt_size,
                   result.metrics, config, {});
  update_peaks(result.metrics, run.live_branches(), run.frame_count(), 0,
               config);
  StreamCursor cursor(stream);
  while (auto u = cursor.next()) {
    run.feed(*u, cursor.position() - 1, kNoGate);
    update_peaks(result.metrics, run.live_branches(), run.frame_count(),
                 run.fe_states(), config);
  }
  run.finish();
  result.output = run.best_set();
  result.value = run.best_value();
  result.path = run.best_path();
  return result;
}

}  // namespace

RunResult run_alg2(const Stream& stream, const ValueOracle& f,
                   const std::vector<MatroidPtr>& ms, const Rational& eps,
                   const Rational& tau, std::size_t opt_size,
                   const StreamingConfig& config) {
  if (!f.monotone()) {
    throw std::invalid_argument("run_alg2 needs a monotone objective");
  }
  return run_known(stream, f, ms, eps, tau, opt_size, Variant::kMonotone,
                   config);
}

RunResult run_alg3(const Stream& stream, const ValueOracle& f,
                   const std::vector<MatroidPtr>& ms, const Rational& eps,
                   const Rational& tau, std::size_t opt_size,
                   const StreamingConfig& config) {
  return run_known(stream, f, ms, eps, tau, opt_size, Variant::kNonMonotone,
                   config);
}

RunResult run_streaming(const Stream& stream, const ValueOracle& f,
                        const std::vector<MatroidPtr>& ms, const Rational& eps,
                        bool monotone, const StreamingConfig& config) {
  check_eps(eps);
  check_inputs(stream, f, ms);
  if (monotone && !f.monotone()) {
    throw std::invalid_argument("monotone pipeline needs a monotone objective");
  }
  const Variant variant = monotone ? Variant::kMonotone : Variant::kNonMonotone;
  const std::size_t k = ms.size();
  const std::size_t rank_bound = max_rank(ms);
  CachedValue cache(f);
  MatroidIntersection common(ms);
  RankTracker ranks(ms);
  RunResult result;
  RunMetrics& metrics = result.metrics;
  ElementSet greedy;
  Rational m = 0;
  std::map<int, std::unique_ptr<ThresholdRun>> runs;

  StreamCursor cursor(stream);
  while (auto next = cursor.next()) {
    const ElementId u = *next;
    const std::size_t position = cursor.position() - 1;
    bool loop = false;
    for (const auto& matroid : ms) loop = loop || is_loop(*matroid, u);
    if (!loop) {
      ElementSet grown = greedy.with(u);
      if (common.is_independent(grown)) greedy = std::move(grown);
      m = std::max(m, cache.value(ElementSet{u}));
      ranks.add(u);
      std::vector<int> live = TauGrid::live_exponents(m, k, greedy.size(), eps);
      for (auto it = runs.begin(); it != runs.end();) {
        if (!std::binary_search(live.begin(), live.end(), it->first)) {
          it = runs.erase(it);  // its outputs are discarded with it
        } else {
          ++it;
        }
      }
      for (int e : live) {
        if (runs.count(e)) continue;
        runs.emplace(e, std::make_unique<ThresholdRun>(
                            cache, ms, rank_bound, variant, eps, pow2(e),
                            std::nullopt, metrics, config,
                            std::vector<std::int64_t>{e}));
        ++metrics.instances_created;
      }
      if (!TauGrid::within_bound(runs.size(), k, greedy.size(), eps)) {
        throw std::logic_error("threshold grid exceeds its size bound");
      }
      const std::size_t gate = ranks.min_rank();
      for (auto& [e, run] : runs) run->feed(u, position, gate);
    }
    std::size_t branches = 0;
    std::size_t frames = 0;
    std::size_t states = 0;
    for (const auto& [e, run] : runs) {
      branches += run->live_branches();
      frames += run->frame_count();
      states += run->fe_states();
    }
    metrics.grid_history.push_back(runs.size());
    metrics.peak_grid = std::max(metrics.peak_grid, runs.size());
    update_peaks(metrics, branches, frames, states, config);
  }

  result.output = ElementSet{};
  result.value = cache.value(result.output);
  for (auto& [e, run] : runs) {
    run->finish();
    if (run->best_value() > result.value ||
        (run->best_value() == result.value &&
         run->best_path() < result.path)) {
      result.output = run->best_set();
      result.value = run->best_value();
      result.path = run->best_path();
    }
  }
  return result;
}

}  // namespace smkm
