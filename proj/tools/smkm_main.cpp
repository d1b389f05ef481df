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

// Command-line driver: instance generation, algorithm runs, invariant suites
// and chain-protocol trials.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "smkm/chainsim.hpp"
#include "smkm/hardgen.hpp"
#include "smkm/instance_io.hpp"
#include "smkm/reference.hpp"
#include "smkm/streaming.hpp"
#include "smkm/verify.hpp"

namespace {

using namespace smkm;

constexpr int kCsvVersion = 1;

// Parameter errors found after CLI parsing; exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string timestamp() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

// Writes to a file, or to stdout when the path is empty.
class Output {
 public:
  Output(const std::string& path, bool append) {
    if (path.empty()) return;
    existed_ = append && std::filesystem::exists(path) &&
               std::filesystem::file_size(path) > 0;
    file_.open(path, append ? std::ios::app : std::ios::trunc);
    if (!file_) throw std::runtime_error("cannot write " + path);
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }
  // Appending to a non-empty CSV skips its header.
  bool needs_header() const { return !existed_; }

 private:
  std::ofstream file_;
  bool existed_ = false;
};

// RFC 4180 quoting for fields that hold commas, quotes or newlines.
std::string csv_field(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string out = "\"";
  for (char ch : v) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void csv_header(Output& o, const std::string& command, bool stamp,
                const std::string& columns) {
  if (!o.needs_header()) return;
  o.out() << "# smkm csv v" << kCsvVersion << " command=" << command;
  if (stamp) o.out() << " generated=" << timestamp();
  o.out() << "\n" << columns << "\n";
}

Rational fraction(const std::string& text, const char* flag) {
  try {
    return parse_fraction(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

std::vector<LayerGraph> builtin_graphs(std::uint32_t p) {
  const std::vector<LayerGraph> base{
      {4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}},
      {4, {{0, 1}, {1, 2}, {2, 3}}},
      {2, {{0, 1}}}};
  std::vector<LayerGraph> out;
  for (std::uint32_t i = 0; i < p; ++i) out.push_back(base[i % base.size()]);
  return out;
}

// ---- gen -----------------------------------------------------------------

struct GenArgs {
  std::string family;
  std::uint32_t k = 3;
  std::uint32_t m = 4;
  std::uint32_t p = 3;
  std::size_t n = 10;
  std::uint32_t copies = 4;
  std::string eps = "1/4";
  std::string objective = "coverage";
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  Rng rng(a.seed);
  Instance inst;
  if (a.family == "hidden_chain") {
    if (a.k < 2 || a.m < 1) throw UsageError("hidden_chain needs --k >= 2, --m >= 1");
    inst = gen_hidden_chain(a.k, a.m, rng).to_instance(a.seed);
  } else if (a.family == "coordinate") {
    if (a.p < 2 || a.m < 1 || a.k < 1) {
      throw UsageError("coordinate needs --p >= 2, --m >= 1, --k >= 1");
    }
    inst = gen_coordinate(a.p, a.m, a.k, rng).to_instance(a.seed);
  } else if (a.family == "chain_family") {
    if (a.p < 1 || a.copies < 1) throw UsageError("chain_family needs --p, --copies >= 1");
    inst = gen_chain_family_instance(builtin_graphs(a.p), a.copies,
                                     fraction(a.eps, "--eps"), {}, rng)
               .to_instance(a.seed);
  } else if (a.family == "random_partition") {
    if (a.n < 1 || a.k < 1) throw UsageError("random_partition needs --n, --k >= 1");
    ObjectiveKind kind;
    if (a.objective == "coverage") {
      kind = ObjectiveKind::kCoverage;
    } else if (a.objective == "cut") {
      kind = ObjectiveKind::kCut;
    } else {
      throw UsageError("--objective must be coverage or cut");
    }
    inst = gen_random_partition(a.n, a.k, kind, rng);
    inst.seed = a.seed;
  } else {
    throw UsageError("unknown family '" + a.family + "'");
  }
  Output o(a.out, false);
  o.out() << dump_instance(inst);
  return 0;
}

// ---- run -----------------------------------------------------------------

struct RunArgs {
  std::string alg;
  std::string eps = "1/20";
  std::string instance;
  std::string csv;
  std::optional<std::string> tau;
  bool no_timestamp = false;
};

int cmd_run(const RunArgs& a) {
  static const std::vector<std::string> algs{"stream", "alg2", "alg3", "greedy",
                                             "exact"};
  if (std::find(algs.begin(), algs.end(), a.alg) == algs.end()) {
    throw UsageError("unknown algorithm '" + a.alg + "'");
  }
  const Rational eps = fraction(a.eps, "--eps");
  Instance inst = load_instance(a.instance);
  const ValueOracle& f = *inst.objective;
  MatroidIntersection common(inst.matroids);
  std::optional<OptResult> opt;
  if (inst.ground_size <= 20) opt = brute_force_opt(f, common);
  if (a.alg == "exact" && !opt) throw UsageError("instance too large for exact");

  const auto start = std::chrono::steady_clock::now();
  ElementSet out;
  std::optional<RunMetrics> metrics;
  if (a.alg == "exact") {
    out = opt->set;
  } else if (a.alg == "greedy") {
    out = streaming_greedy(inst.stream, common, &f, !f.monotone());
  } else if (a.alg == "stream") {
    RunResult r = run_streaming(inst.stream, f, inst.matroids, eps, f.monotone());
    out = r.output;
    metrics = r.metrics;
  } else {
    if (!opt && !a.tau) throw UsageError("--tau is required when n > 20");
    const Rational tau = a.tau ? fraction(*a.tau, "--tau") : opt->value;
    const std::size_t size = opt ? opt->set.size() : full_rank(*inst.matroids[0]);
    RunResult r = a.alg == "alg2"
                      ? run_alg2(inst.stream, f, inst.matroids, eps, tau, size)
                      : run_alg3(inst.stream, f, inst.matroids, eps, tau, size);
    out = r.output;
    metrics = r.metrics;
  }
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  const Rational value = f.value(out);
  std::string f_opt = "NA";
  std::string ratio = "NA";
  if (opt) {
    f_opt = to_string(opt->value);
    ratio = opt->value == 0 ? (value == 0 ? "1" : "NA")
                            : to_string(Rational(value / opt->value));
  }
  Output o(a.csv, true);
  csv_header(o, "run", !a.no_timestamp,
             "instance,alg,eps,f_out,f_opt,ratio,feasible,peak_branches,marks,"
             "wall_ms");
  std::ostringstream wall;
  wall.precision(3);
  wall << std::fixed << ms;
  o.out() << csv_field(std::filesystem::path(a.instance).stem().string())
          << ',' << a.alg
          << ',' << to_string(eps) << ',' << to_string(value) << ',' << f_opt
          << ',' << ratio << ',' << (common.is_independent(out) ? "true" : "false")
          << ',' << (metrics ? std::to_string(metrics->peak_live_branches) : "NA")
          << ',' << (metrics ? std::to_string(metrics->total_marks) : "NA") << ','
          << (a.no_timestamp ? "NA" : wall.str()) << '\n';
  return 0;
}

// ---- verify --------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  std::string csv;
  bool no_timestamp = false;
};

int cmd_verify(const VerifyArgs& a) {
  std::vector<std::string> suites;
  if (a.suite == "all") {
    suites = suite_names();
  } else if (std::find(suite_names().begin(), suite_names().end(), a.suite) !=
             suite_names().end()) {
    suites = {a.suite};
  } else {
    throw UsageError("unknown suite '" + a.suite + "'");
  }
  Output o(a.csv, false);
  csv_header(o, "verify", !a.no_timestamp, "suite,check,pass,detail");
  bool ok = true;
  for (const auto& s : suites) {
    SuiteReport r = run_suite(s);
    for (const auto& c : r.checks) {
      o.out() << s << ',' << csv_field(c.name) << ','
              << (c.pass ? "pass" : "FAIL") << ',' << csv_field(c.detail)
              << '\n';
    }
    ok = ok && r.ok();
    if (!a.csv.empty()) {
      std::cerr << s << ": " << (r.ok() ? "pass" : "FAIL") << '\n';
    }
  }
  return ok ? 0 : 1;
}

// ---- chain ---------------------------------------------------------------

struct ChainArgs {
  int protocol = 1;
  std::uint32_t k = 0;
  std::uint32_t m = 0;
  std::uint32_t p = 0;
  std::uint32_t copies = 1;
  std::string inner = "exact";
  std::string chain_case = "random";
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::string eps = "1/4";
  std::string alpha = "3";
  std::string csv;
  bool no_timestamp = false;
};

int cmd_chain(ChainArgs a) {
  if (a.protocol < 1 || a.protocol > 3) throw UsageError("--protocol is 1, 2 or 3");
  InnerFactory inner;
  try {
    inner = make_inner(a.inner);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::optional<int> forced;
  if (a.chain_case == "0" || a.chain_case == "1") {
    forced = a.chain_case == "1" ? 1 : 0;
  } else if (a.chain_case != "random") {
    throw UsageError("--case is 0, 1 or random");
  }
  if (a.trials < 1) throw UsageError("--trials must be positive");
  // Protocol defaults: k=4 m=16; p=3 m=4 k=24; p=2 layers with 4 copies.
  if (a.protocol == 1) {
    if (!a.k) a.k = 4;
    if (!a.m) a.m = 16;
    if (a.k < 2) throw UsageError("protocol 1 needs --k >= 2");
  } else if (a.protocol == 2) {
    if (!a.p) a.p = 3;
    if (!a.m) a.m = 4;
    if (!a.k) a.k = 24;
    if (a.p < 2) throw UsageError("protocol 2 needs --p >= 2");
  } else {
    if (!a.p) a.p = 2;
    if (!a.m) a.m = 4;
  }
  if (a.m < 1) throw UsageError("--m must be positive");
  const Rational eps = fraction(a.eps, "--eps");
  const Rational alpha = fraction(a.alpha, "--alpha");
  if (alpha <= 0) throw UsageError("--alpha must be positive");
  if (eps <= 0) throw UsageError("--eps must be positive");

  std::vector<BipartiteLayer> layers;
  if (a.protocol == 3) {
    for (const auto& g : builtin_graphs(a.p)) layers.push_back(to_bipartite(g));
  }
  Output o(a.csv, false);
  csv_header(o, "chain", !a.no_timestamp,
             "trial,protocol,players,n,k,inner,case,verdict,correct,max_bits");
  std::size_t correct = 0;
  std::uint64_t max_bits = 0;
  const std::uint32_t players =
      a.protocol == 1 ? a.k : (a.protocol == 2 ? a.p : a.p + 1);
  for (std::size_t t = 0; t < a.trials; ++t) {
    const std::uint64_t trial_seed = mix64(a.seed + t);
    Rng rng(trial_seed);
    ChainInstance inst = sample_chain(players, a.m, rng, forced);
    ProtocolResult r;
    if (a.protocol == 1) {
      r = run_protocol1(inst, inner, a.copies, trial_seed);
    } else if (a.protocol == 2) {
      r = run_protocol2(inst, a.k, inner, trial_seed);
    } else {
      r = run_protocol3(inst, layers, eps, alpha, inner, trial_seed);
    }
    const bool ok = r.verdict == inst.chain_case();
    correct += ok ? 1 : 0;
    const std::uint64_t bits = meter(r.transcript);
    max_bits = std::max(max_bits, bits);
    o.out() << t << ',' << a.protocol << ',' << players << ',' << a.m << ','
            << (a.protocol == 3 ? 0 : a.k) << ',' << a.inner << ','
            << inst.chain_case() << ',' << r.verdict << ','
            << (ok ? "true" : "false") << ',' << bits << '\n';
  }
  o.out() << "summary," << a.protocol << ',' << players << ',' << a.m << ','
          << (a.protocol == 3 ? 0 : a.k) << ',' << a.inner << ','
          << a.chain_case << ",NA,"
          << to_string(Rational(static_cast<unsigned long>(correct),
                                static_cast<unsigned long>(a.trials)))
          << ',' << max_bits << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming submodular maximization over matroid intersections"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "generate an instance file");
  g->add_option("--family", gen.family,
                "hidden_chain, coordinate, chain_family or random_partition")
      ->required();
  g->add_option("--k", gen.k, "matroids / coordinates");
  g->add_option("--m", gen.m, "block or layer size");
  g->add_option("--p", gen.p, "players or layers");
  g->add_option("--n", gen.n, "ground size (random_partition)");
  g->add_option("--copies", gen.copies, "edge copies (chain_family)");
  g->add_option("--eps", gen.eps, "fraction (chain_family)");
  g->add_option("--objective", gen.objective, "coverage or cut");
  g->add_option("--seed", gen.seed);
  g->add_option("--out", gen.out, "output path; stdout when absent");

  RunArgs run;
  auto* r = app.add_subcommand("run", "run an algorithm on an instance file");
  r->add_option("--alg", run.alg, "stream, alg2, alg3, greedy or exact")->required();
  r->add_option("--eps", run.eps, "fraction such as 1/20");
  r->add_option("--instance", run.instance)->required();
  r->add_option("--csv", run.csv, "CSV to append to; stdout when absent");
  r->add_option("--tau", run.tau, "threshold guess for alg2/alg3");
  r->add_flag("--no-timestamp", run.no_timestamp);

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "run an invariant suite");
  v->add_option("--suite", verify.suite, "suite name or all")->required();
  v->add_option("--csv", verify.csv);
  v->add_flag("--no-timestamp", verify.no_timestamp);

  ChainArgs chain;
  auto* c = app.add_subcommand("chain", "run chain-protocol trials");
  c->add_option("--protocol", chain.protocol)->required();
  c->add_option("--k", chain.k, "players (1) or coordinates (2)");
  c->add_option("--m", chain.m, "string length");
  c->add_option("--p", chain.p, "players (2) or layers (3)");
  c->add_option("--copies", chain.copies, "parallel copies (1)");
  c->add_option("--inner", chain.inner, "exact or greedy");
  c->add_option("--case", chain.chain_case, "0, 1 or random");
  c->add_option("--trials", chain.trials);
  c->add_option("--seed", chain.seed);
  c->add_option("--eps", chain.eps, "family eps (3)");
  c->add_option("--alpha", chain.alpha, "verdict threshold parameter (3)");
  c->add_option("--csv", chain.csv);
  c->add_flag("--no-timestamp", chain.no_timestamp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    if (*g) return cmd_gen(gen);
    if (*r) return cmd_run(run);
    if (*v) return cmd_verify(verify);
    return cmd_chain(chain);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
