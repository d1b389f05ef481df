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

#include "smkm/verify.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "smkm/fealg.hpp"
#include "smkm/reference.hpp"

namespace smkm {
namespace {

std::string fmt_id(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%03zu", prefix, i);
  return buf;
}

void record(PropertyReport& r, std::string witness) {
  ++r.violations;
  if (r.witnesses.size() < 8) r.witnesses.push_back(std::move(witness));
}

Check from_report(std::string name, const PropertyReport& r) {
  Check c{std::move(name), r.ok(),
          std::to_string(r.trials) + " trials, " +
              std::to_string(r.violations) + " violations"};
  if (!r.witnesses.empty()) c.detail += "; first: " + r.witnesses.front();
  return c;
}

Check from_axioms(std::string name, const AxiomReport& r) {
  Check c{std::move(name), r.ok(),
          std::string(r.exhaustive ? "exhaustive, " : "sampled, ") +
              std::to_string(r.checked) + " checks"};
  if (!r.violations.empty()) c.detail += "; first: " + r.violations.front();
  return c;
}

// Partition matroid with `blocks` random blocks and capacities in 1..2.
MatroidPtr random_partition_matroid(std::size_t n, Rng& rng) {
  const auto blocks = static_cast<std::uint32_t>(2 + rng.below(3));
  std::vector<std::uint32_t> block_of(n);
  for (auto& b : block_of) b = static_cast<std::uint32_t>(rng.below(blocks));
  std::vector<std::uint32_t> capacity(blocks);
  for (auto& c : capacity) c = static_cast<std::uint32_t>(1 + rng.below(2));
  return std::make_shared<PartitionMatroid>(std::move(block_of),
                                            std::move(capacity));
}

// A random independent set of m below full rank, built greedily over a
// shuffled ground set; contracting it leaves a matroid of positive rank
// whenever m has one.
ElementSet random_independent(const Matroid& m, Rng& rng) {
  Stream order = random_permutation(m.ground_size(), rng);
  const std::size_t cap = full_rank(m) > 0 ? full_rank(m) - 1 : 0;
  ElementSet s;
  for (ElementId u : order.order()) {
    if (s.size() >= cap) break;
    if (!rng.coin()) continue;
    ElementSet next = s.with(u);
    if (m.is_independent(next)) s = std::move(next);
  }
  return s;
}

// The contraction M/C on its own ground set N - C, relabeled to 0..n-|C|-1.
class ContractionView : public Matroid {
 public:
  ContractionView(MatroidPtr base, const ElementSet& c)
      : Matroid(base->ground_size() - c.size()), contracted_(contract(base, c)) {
    for (std::size_t u = 0; u < base->ground_size(); ++u) {
      if (!c.contains(static_cast<ElementId>(u))) {
        keep_.push_back(static_cast<ElementId>(u));
      }
    }
  }
  std::string kind() const override { return "contracted"; }

 protected:
  bool independent(const ElementSet& s) const override {
    std::vector<ElementId> ids;
    for (ElementId u : s) ids.push_back(keep_[u]);
    return contracted_->is_independent(ElementSet(std::move(ids)));
  }

 private:
  MatroidPtr contracted_;
  std::vector<ElementId> keep_;
};

// Every hidden tuple of a k x m hidden-chain system, in lexicographic order.
std::vector<std::vector<ElementId>> all_hidden(std::uint32_t k,
                                               std::uint32_t m) {
  std::vector<std::vector<ElementId>> out{{}};
  for (std::uint32_t i = 1; i < k; ++i) {
    std::vector<std::vector<ElementId>> next;
    for (const auto& h : out) {
      for (std::uint32_t j = 0; j < m; ++j) {
        auto g = h;
        g.push_back((i - 1) * m + j);
        next.push_back(std::move(g));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<LayerGraph> family_graphs() {
  LayerGraph complete{4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}};
  LayerGraph path{4, {{0, 1}, {1, 2}, {2, 3}}};
  LayerGraph star{4, {{0, 1}, {0, 2}, {0, 3}}};
  return {complete, path, star};
}

std::vector<BipartiteLayer> family_layers() {
  std::vector<BipartiteLayer> layers;
  for (const auto& g : family_graphs()) layers.push_back(to_bipartite(g));
  return layers;
}

}  // namespace

bool SuiteReport::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.pass; });
}

std::vector<CorpusEntry> build_corpus(std::uint64_t seed, std::size_t count) {
  std::vector<CorpusEntry> corpus;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t s = mix64(seed * 1000003 + i);
    Rng rng(s);
    CorpusEntry entry;
    entry.id = fmt_id("c", i);
    entry.monotone = i % 2 == 0;
    if (i % 4 < 2) {
      const std::size_t n = 6 + rng.below(7);
      const auto k = static_cast<std::uint32_t>(1 + rng.below(3));
      entry.inst = gen_random_partition(
          n, k, entry.monotone ? ObjectiveKind::kCoverage : ObjectiveKind::kCut,
          rng);
    } else {
      const auto k = static_cast<std::uint32_t>(2 + rng.below(2));
      const auto m = static_cast<std::uint32_t>(1 + rng.below(12 / k));
      HiddenChainInstance hc = gen_hidden_chain(k, m, rng);
      entry.inst = hc.to_instance(s);
      const std::size_t n = entry.inst.ground_size;
      entry.inst.objective =
          entry.monotone ? random_coverage(n, rng) : random_cut(n, rng);
    }
    entry.inst.seed = s;
    corpus.push_back(std::move(entry));
  }
  return corpus;
}

Rational guarantee_factor(const Rational& eps) {
  return (1 - eps - 6 * eps * (1 + eps)) / ((2 + eps) * (1 + 3 * eps));
}

PropertyReport check_fealg_contract(const Instance& inst) {
  PropertyReport r;
  std::size_t rho = 0;
  for (const auto& m : inst.matroids) rho = std::max(rho, full_rank(*m));
  FeState fe(inst.matroids, rho);
  const std::uint64_t mark_bound = fe_mark_bound(inst.matroids.size(), rho);
  const std::uint64_t state_bound = 1 + inst.matroids.size() * mark_bound;
  for (ElementId u : inst.stream.order()) {
    try {
      fe.process(u);
    } catch (const std::logic_error& e) {
      record(r, e.what());
      return r;
    }
    if (fe.marked_count() > mark_bound || fe.state_count() > state_bound) {
      record(r, "budget exceeded after element " + std::to_string(u));
    }
  }
  const std::vector<std::size_t> pos = inst.stream.positions();
  std::vector<ElementId> marked = fe.marked();
  std::vector<ElementId> all(inst.ground_size);
  for (std::size_t u = 0; u < all.size(); ++u) all[u] = static_cast<ElementId>(u);
  MatroidIntersection common(inst.matroids);
  for_each_common_independent(common, all, [&](const ElementSet& o) {
    if (o.empty()) return;
    ++r.trials;
    ElementId first = *std::min_element(
        o.begin(), o.end(), [&](ElementId a, ElementId b) { return pos[a] < pos[b]; });
    const ElementSet rest = o.without(first);
    for (ElementId u : marked) {
      if (pos[u] > pos[first]) continue;
      if (common.is_independent(rest.with(u)) && !rest.contains(u)) return;
    }
    record(r, "O=" + o.to_string() + " has no marked replacement for " +
                  std::to_string(first));
  });
  return r;
}

PropertyReport check_guarantee(const CorpusEntry& entry, const Rational& eps,
                               RunResult* result) {
  PropertyReport r;
  r.trials = 1;
  const Instance& inst = entry.inst;
  RunResult run = run_streaming(inst.stream, *inst.objective, inst.matroids,
                                eps, entry.monotone);
  OptResult opt = brute_force_opt(*inst.objective, inst.matroids);
  if (!common_independent(inst.matroids, run.output)) {
    record(r, entry.id + ": output " + run.output.to_string() + " infeasible");
  } else if (run.value < guarantee_factor(eps) * opt.value) {
    record(r, entry.id + ": f(out)=" + to_string(run.value) +
                  " below factor * " + to_string(opt.value));
  }
  if (result) *result = std::move(run);
  return r;
}

PropertyReport check_grid_bound(const Instance& inst, const RunResult& run,
                                const Rational& eps) {
  PropertyReport r;
  MatroidIntersection common(inst.matroids);
  ElementSet greedy;
  const auto& history = run.metrics.grid_history;
  if (history.size() != inst.stream.size()) {
    record(r, "grid history does not cover the stream");
    return r;
  }
  for (std::size_t t = 0; t < history.size(); ++t) {
    ElementSet next = greedy.with(inst.stream[t]);
    if (common.is_independent(next)) greedy = std::move(next);
    ++r.trials;
    if (!TauGrid::within_bound(history[t], inst.matroids.size(), greedy.size(),
                               eps)) {
      record(r, "position " + std::to_string(t) + ": " +
                    std::to_string(history[t]) + " live instances with |G|=" +
                    std::to_string(greedy.size()));
    }
  }
  return r;
}

double coordinate_success_rate(std::uint32_t p, std::uint32_t m,
                               std::uint32_t k, std::size_t seeds,
                               std::uint64_t base) {
  std::size_t ok = 0;
  for (std::size_t s = 0; s < seeds; ++s) {
    Rng rng(base + s);
    ok += is_successful(gen_coordinate(p, m, k, rng)) ? 1 : 0;
  }
  return static_cast<double>(ok) / static_cast<double>(seeds);
}

double hidden_chain_greedy_mean(std::uint32_t k, std::uint32_t m,
                                std::size_t seeds, std::uint64_t base) {
  std::size_t total = 0;
  for (std::size_t s = 0; s < seeds; ++s) {
    Rng rng(base + s);
    HiddenChainInstance inst = gen_hidden_chain(k, m, rng);
    total += streaming_greedy(inst.stream, *inst.system->common_oracle()).size();
  }
  return static_cast<double>(total) / static_cast<double>(seeds);
}

SuiteReport verify_matroid_axioms() {
  SuiteReport rep{"matroid-axioms", {}};
  auto add = [&](std::string name, const Matroid& m) {
    rep.checks.push_back(from_axioms(std::move(name), check_matroid_axioms(m)));
  };
  add("free n=12", FreeMatroid(12));
  for (std::uint64_t s = 0; s < 8; ++s) {
    Rng rng(s);
    const std::size_t n = 6 + rng.below(7);
    MatroidPtr pm = random_partition_matroid(n, rng);
    add("partition seed=" + std::to_string(s), *pm);
    add("partition seed=" + std::to_string(s) + " truncated to 2",
        *truncate(pm, 2));
    ElementSet c = random_independent(*pm, rng);
    add("partition seed=" + std::to_string(s) + " contracted by " +
            c.to_string(),
        ContractionView(pm, c));
  }
  for (std::uint64_t s = 0; s < 4; ++s) {
    Rng rng(100 + s);
    CoordinateInstance ci = gen_coordinate(3, 6, 3, rng);
    for (const auto& m : ci.matroids()) {
      const std::string name = "coordinate seed=" + std::to_string(s) +
                               " index=" +
                               std::to_string(static_cast<const CoordinateMatroid&>(*m).index());
      add(name, *m);
      ElementSet c = random_independent(*m, rng);
      add(name + " contracted by " + c.to_string(), ContractionView(m, c));
      add(name + " truncated to 1", *truncate(m, 1));
    }
  }
  std::size_t equivalence_checks = 0;
  std::size_t systems = 0;
  std::vector<std::string> failures;
  for (std::uint32_t k = 1; k <= 12; ++k) {
    for (std::uint32_t m = 1; k * m <= 12; ++m) {
      Rng rng(k * 100 + m);
      const auto tuples = all_hidden(k, m);
      const auto& probe = tuples[rng.below(tuples.size())];
      HiddenChainSystem sys(k, m, probe);
      for (std::uint32_t i = 1; i <= k; ++i) {
        const std::string name = "hidden_chain k=" + std::to_string(k) +
                                 " m=" + std::to_string(m) + " M_" +
                                 std::to_string(i);
        add(name, *sys.matroid(i));
        add(name + " truncated to 1", *truncate(sys.matroid(i), 1));
        ElementSet c = random_independent(*sys.matroid(i), rng);
        add(name + " contracted by " + c.to_string(),
            ContractionView(sys.matroid(i), c));
      }
      for (const auto& h : tuples) {
        AxiomReport eq = check_block_equivalence(HiddenChainSystem(k, m, h));
        ++systems;
        equivalence_checks += eq.checked;
        for (const auto& v : eq.violations) failures.push_back(v);
      }
    }
  }
  Check eq{"block equivalence, every hidden tuple with k*m <= 12",
           failures.empty(),
           std::to_string(systems) + " systems, " +
               std::to_string(equivalence_checks) + " swaps"};
  if (!failures.empty()) eq.detail += "; first: " + failures.front();
  rep.checks.push_back(std::move(eq));
  return rep;
}

SuiteReport verify_fealg(const std::vector<CorpusEntry>& corpus) {
  SuiteReport rep{"fealg", {}};
  PropertyReport total;
  for (const auto& entry : corpus) {
    if (entry.inst.ground_size > 12) continue;
    PropertyReport r = check_fealg_contract(entry.inst);
    total.trials += r.trials;
    total.violations += r.violations;
    for (auto& w : r.witnesses) {
      if (total.witnesses.size() < 8) total.witnesses.push_back(entry.id + ": " + w);
    }
  }
  rep.checks.push_back(
      from_report("first-element contract and budgets over the corpus", total));
  return rep;
}

SuiteReport verify_family() {
  SuiteReport rep{"family", {}};
  const std::vector<BipartiteLayer> layers = family_layers();
  const std::uint32_t copies = 4;
  const Rational eps(1, 4);
  const auto p = static_cast<std::uint32_t>(layers.size());
  Rng rng(2024);

  PropertyReport a;
  for (std::size_t trial = 0; trial < 40; ++trial) {
    const auto i = static_cast<std::uint32_t>(1 + rng.below(p));
    std::vector<std::optional<std::uint32_t>> o1(p);
    std::vector<std::optional<std::uint32_t>> o2(p);
    for (std::uint32_t q = 0; q < p; ++q) {
      o1[q] = static_cast<std::uint32_t>(rng.below(copies));
      o2[q] = q + 1 < i ? o1[q]
                        : std::optional<std::uint32_t>(
                              static_cast<std::uint32_t>(rng.below(copies)));
    }
    ChainFamilyFn f1(layers, copies, eps, o1);
    ChainFamilyFn f2(layers, copies, eps, o2);
    PropertyReport r = family_property_a(f1, f2, i, 250, rng);
    a.trials += r.trials;
    a.violations += r.violations;
    for (auto& w : r.witnesses) a.witnesses.push_back(w);
  }
  rep.checks.push_back(from_report("property (a): prefix indistinguishable", a));

  PropertyReport c;
  for (std::uint32_t code = 0; code < copies * copies * copies; ++code) {
    std::vector<std::optional<std::uint32_t>> o{code % copies,
                                                (code / copies) % copies,
                                                code / (copies * copies)};
    PropertyReport r = family_property_c(ChainFamilyFn(layers, copies, eps, o));
    c.trials += r.trials;
    c.violations += r.violations;
    for (auto& w : r.witnesses) c.witnesses.push_back(w);
  }
  rep.checks.push_back(from_report("property (c): o-indexed matchings", c));

  PropertyReport d;
  for (std::uint32_t alpha_int : {1u, 2u, 3u}) {
    const Rational alpha = static_cast<unsigned long>(alpha_int);
    for (std::size_t trial = 0; trial < 400; ++trial) {
      std::vector<std::optional<std::uint32_t>> o(p);
      for (auto& oi : o) oi = static_cast<std::uint32_t>(rng.below(copies));
      ChainFamilyFn f(layers, copies, eps, o);
      std::vector<ElementId> ids;
      for (std::uint32_t i = 1; i <= p; ++i) {
        const Rational cap = f.m(i) / alpha;
        std::vector<ElementId> pool;
        for (std::uint32_t e = 0; e < layers[i - 1].edges.size(); ++e) {
          for (std::uint32_t j = 0; j < copies; ++j) {
            if (j != *o[i - 1]) pool.push_back(f.id(i, e, j));
          }
        }
        rng.shuffle(pool);
        std::size_t take = 0;
        while (take < pool.size() &&
               Rational(static_cast<unsigned long>(take + 1)) <= cap) {
          ++take;
        }
        take = static_cast<std::size_t>(rng.below(take + 1));
        ids.insert(ids.end(), pool.begin(), pool.begin() + take);
      }
      PropertyReport r = family_property_d(f, ElementSet(ids), alpha);
      d.trials += r.trials;
      d.violations += r.violations;
      for (auto& w : r.witnesses) d.witnesses.push_back(w);
    }
  }
  rep.checks.push_back(from_report("property (d): capped sets stay low", d));

  std::vector<std::optional<std::uint32_t>> o{1u, 3u, 0u};
  ChainFamilyFn f(layers, copies, eps, o);
  rep.checks.push_back(from_report("monotone on 10^4 nested pairs",
                                   check_monotone(f, 10000, rng)));
  rep.checks.push_back(from_report(
      "submodular on 10^4 matching-respecting triples",
      check_submodular(f, 10000, rng, matching_sampler(f))));
  return rep;
}

SuiteReport verify_guarantee(const std::vector<CorpusEntry>& corpus,
                             const Rational& eps) {
  SuiteReport rep{"smkm-guarantee", {}};
  PropertyReport guarantee;
  PropertyReport grid;
  for (const auto& entry : corpus) {
    RunResult run;
    PropertyReport g = check_guarantee(entry, eps, &run);
    guarantee.trials += g.trials;
    guarantee.violations += g.violations;
    for (auto& w : g.witnesses) guarantee.witnesses.push_back(w);
    PropertyReport b = check_grid_bound(entry.inst, run, eps);
    grid.trials += b.trials;
    grid.violations += b.violations;
    for (auto& w : b.witnesses) grid.witnesses.push_back(entry.id + ": " + w);
  }
  rep.checks.push_back(from_report(
      "f(out) >= factor * f(OPT) at eps=" + to_string(eps), guarantee));
  rep.checks.push_back(from_report("live tau count within its bound", grid));
  const std::size_t snapshot =
      TauGrid::live_exponents(1, 2, 1, Rational(1, 4)).size();
  rep.checks.push_back({"snapshot m=1 k=2 |G|=1 eps=1/4 has 6 instances",
                        snapshot == 6, std::to_string(snapshot) + " instances"});
  return rep;
}

SuiteReport verify_hardgen_success() {
  SuiteReport rep{"hardgen-success", {}};
  const double rate = coordinate_success_rate(3, 10, 40, 500);
  rep.checks.push_back({"coordinate p=3 m=10 k=40 success rate >= 0.99",
                        rate >= 0.99, "rate " + std::to_string(rate)});
  const double mean = hidden_chain_greedy_mean(5, 50, 300);
  rep.checks.push_back({"hidden chain k=5 m=50 greedy mean <= 1.5",
                        mean <= 1.5, "mean " + std::to_string(mean)});
  return rep;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "matroid-axioms", "fealg", "family", "smkm-guarantee", "hardgen-success"};
  return names;
}

SuiteReport run_suite(std::string_view name) {
  if (name == "matroid-axioms") return verify_matroid_axioms();
  if (name == "fealg") return verify_fealg(build_corpus());
  if (name == "family") return verify_family();
  if (name == "smkm-guarantee") return verify_guarantee(build_corpus(), Rational(1, 20));
  if (name == "hardgen-success") return verify_hardgen_success();
  throw std::invalid_argument("unknown suite: " + std::string(name));
}

}  // namespace smkm
