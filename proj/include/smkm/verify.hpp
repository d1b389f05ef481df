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

// Invariant batteries shared by the CLI's verify command and the acceptance
// binary.

#ifndef SMKM_VERIFY_HPP_
#define SMKM_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "smkm/hardgen.hpp"
#include "smkm/rational.hpp"
#include "smkm/streaming.hpp"
#include "smkm/submodular.hpp"

namespace smkm {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  bool ok() const;
};

struct CorpusEntry {
  std::string id;
  Instance inst;
  bool monotone = true;
};

// 200 instances with n <= 12 and k <= 3, cycling through partition and
// hidden-chain constraints with coverage (monotone) and cut objectives.
std::vector<CorpusEntry> build_corpus(std::uint64_t seed = 1,
                                      std::size_t count = 200);

// (1 - eps - 6 eps (1 + eps)) / ((2 + eps)(1 + 3 eps)).
Rational guarantee_factor(const Rational& eps);

// Marks and first-element coverage of FEAlg on the instance's stream, over
// every non-empty common independent set. One trial per set.
PropertyReport check_fealg_contract(const Instance& inst);

// Runs the full pipeline and checks feasibility and f(out) against the
// guarantee factor times the brute-force optimum.
PropertyReport check_guarantee(const CorpusEntry& entry, const Rational& eps,
                               RunResult* result = nullptr);

// Live tau count after every element against 1 + log2(2 k^2 |G|^2 / eps),
// with G the greedy common independent set of the prefix.
PropertyReport check_grid_bound(const Instance& inst, const RunResult& run,
                                const Rational& eps);

// Fraction of seeds base..base+seeds-1 whose coordinate instance is
// successful.
double coordinate_success_rate(std::uint32_t p, std::uint32_t m,
                               std::uint32_t k, std::size_t seeds,
                               std::uint64_t base = 0);

// Mean greedy output size on hidden-chain instances under the common oracle.
double hidden_chain_greedy_mean(std::uint32_t k, std::uint32_t m,
                                std::size_t seeds, std::uint64_t base = 0);

SuiteReport verify_matroid_axioms();
SuiteReport verify_fealg(const std::vector<CorpusEntry>& corpus);
SuiteReport verify_family();
SuiteReport verify_guarantee(const std::vector<CorpusEntry>& corpus,
                             const Rational& eps);
SuiteReport verify_hardgen_success();

const std::vector<std::string>& suite_names();
// Throws std::invalid_argument for an unknown suite.
SuiteReport run_suite(std::string_view name);

}  // namespace smkm

#endif  // SMKM_VERIFY_HPP_
