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

#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "smkm/hardgen.hpp"
#include "smkm/instance_io.hpp"

namespace smkm {
namespace {

std::vector<Instance> samples() {
  std::vector<Instance> out;
  Rng rng(31);
  out.push_back(gen_hidden_chain(3, 4, rng).to_instance(31));
  out.push_back(gen_coordinate(3, 5, 6, rng).to_instance(32));
  out.push_back(gen_random_partition(9, 2, ObjectiveKind::kCoverage, rng));
  out.push_back(gen_random_partition(9, 3, ObjectiveKind::kCut, rng));
  std::vector<LayerGraph> graphs{{4, {{0, 1}, {1, 2}, {2, 3}}},
                                 {3, {{0, 1}, {0, 2}}}};
  out.push_back(gen_chain_family_instance(graphs, 3, Rational(1, 4), {}, rng)
                    .to_instance(33));
  return out;
}

TEST_CASE("dump, parse, dump is byte identical") {
  for (const Instance& inst : samples()) {
    const std::string first = dump_instance(inst);
    CHECK(first.back() == '\n');
    Instance back = parse_instance(first);
    CHECK(dump_instance(back) == first);
    CHECK(back.family == inst.family);
    CHECK(back.stream.order() == inst.stream.order());
    CHECK(back.hidden == inst.hidden);
    CHECK(back.matroids.size() == inst.matroids.size());
    // Same objective and constraints on every prefix of the stream.
    ElementSet prefix;
    for (ElementId u : inst.stream.order()) {
      prefix = prefix.with(u);
      CHECK(back.objective->value(prefix) == inst.objective->value(prefix));
      CHECK(common_independent(back.matroids, prefix) ==
            common_independent(inst.matroids, prefix));
    }
  }
}

TEST_CASE("files round trip") {
  auto dir = std::filesystem::temp_directory_path() / "smkm_io_test";
  std::filesystem::create_directories(dir);
  Instance inst = samples().front();
  save_instance(inst, dir / "a.json");
  CHECK(dump_instance(load_instance(dir / "a.json")) == dump_instance(inst));
  CHECK_THROWS_AS(load_instance(dir / "missing.json"), std::runtime_error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("malformed input is rejected") {
  nlohmann::json j = instance_to_json(samples()[2]);
  CHECK(j["schema_version"] == kInstanceSchemaVersion);
  CHECK_THROWS_AS(parse_instance("{"), MalformedInstance);
  CHECK_THROWS_AS(parse_instance("[]"), MalformedInstance);

  auto bad_version = j;
  bad_version["schema_version"] = 99;
  CHECK_THROWS_AS(instance_from_json(bad_version), MalformedInstance);

  auto no_stream = j;
  no_stream.erase("stream_order");
  CHECK_THROWS_AS(instance_from_json(no_stream), MalformedInstance);

  auto bad_element = j;
  bad_element["stream_order"].push_back(1000);
  CHECK_THROWS_AS(instance_from_json(bad_element), MalformedInstance);
}

}  // namespace
}  // namespace smkm
