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

#include "smkm/instance_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace smkm {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw MalformedInstance("malformed instance: " + what);
}

json matroid_to_json(const Matroid& m) {
  if (dynamic_cast<const HiddenChainMatroid*>(&m)) {
    fail("hidden-chain matroids are written through their system");
  }
  if (auto* pm = dynamic_cast<const PartitionMatroid*>(&m)) {
    return {{"type", "partition"},
            {"block_of", pm->block_of()},
            {"capacity", pm->capacity()}};
  }
  if (auto* cm = dynamic_cast<const CoordinateMatroid*>(&m)) {
    return {{"type", "coordinate"}, {"index", cm->index()}};
  }
  if (dynamic_cast<const FreeMatroid*>(&m)) {
    return {{"type", "free"}};
  }
  fail("matroid kind '" + m.kind() + "' has no file format");
}

json objective_to_json(const ValueOracle& f) {
  if (dynamic_cast<const CardinalityFn*>(&f)) return {{"type", "cardinality"}};
  if (auto* c = dynamic_cast<const CoverageFn*>(&f)) {
    std::vector<std::string> w;
    for (const auto& x : c->weights()) w.push_back(to_string(x));
    return {{"type", "coverage"}, {"covers", c->covers()}, {"weights", w}};
  }
  if (auto* c = dynamic_cast<const CutFn*>(&f)) {
    json edges = json::array();
    for (const auto& e : c->edges()) {
      edges.push_back(json::array({e.a, e.b, to_string(e.w)}));
    }
    return {{"type", "cut"}, {"vertices", c->ground_size()}, {"edges", edges}};
  }
  if (auto* c = dynamic_cast<const ChainFamilyFn*>(&f)) {
    json layers = json::array();
    for (const auto& l : c->layers()) {
      json edges = json::array();
      for (auto [a, b] : l.edges) edges.push_back(json::array({a, b}));
      layers.push_back({{"left", l.left}, {"right", l.right}, {"edges", edges}});
    }
    json o = json::array();
    for (const auto& oi : c->o()) o.push_back(oi ? json(*oi) : json(nullptr));
    return {{"type", "chain_family"},
            {"layers", layers},
            {"copies", c->copies()},
            {"eps", to_string(c->eps())},
            {"o", o}};
  }
  fail("objective kind '" + f.kind() + "' has no file format");
}

Rational rational_field(const json& j) {
  if (!j.is_string()) fail("rational fields are strings like \"1/20\"");
  return parse_fraction(j.get<std::string>());
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key).get<T>();
}

ValuePtr objective_from_json(const json& j, std::size_t n) {
  const auto type = field<std::string>(j, "type");
  ValuePtr f;
  if (type == "cardinality") {
    f = std::make_shared<CardinalityFn>(n);
  } else if (type == "coverage") {
    std::vector<Rational> w;
    for (const auto& x : j.at("weights")) w.push_back(rational_field(x));
    f = std::make_shared<CoverageFn>(
        field<std::vector<std::vector<std::uint32_t>>>(j, "covers"), w);
  } else if (type == "cut") {
    std::vector<WeightedEdge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) fail("cut edges are [a, b, \"w\"]");
      edges.push_back({e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>(),
                       rational_field(e[2])});
    }
    f = std::make_shared<CutFn>(field<std::size_t>(j, "vertices"), edges);
  } else if (type == "chain_family") {
    std::vector<BipartiteLayer> layers;
    for (const auto& l : j.at("layers")) {
      BipartiteLayer b;
      b.left = field<std::uint32_t>(l, "left");
      b.right = field<std::uint32_t>(l, "right");
      for (const auto& e : l.at("edges")) {
        if (!e.is_array() || e.size() != 2) fail("layer edges are [l, r]");
        b.edges.emplace_back(e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>());
      }
      layers.push_back(std::move(b));
    }
    std::vector<std::optional<std::uint32_t>> o;
    for (const auto& x : j.at("o")) {
      o.push_back(x.is_null() ? std::nullopt
                              : std::optional<std::uint32_t>(x.get<std::uint32_t>()));
    }
    f = std::make_shared<ChainFamilyFn>(std::move(layers),
                                        field<std::uint32_t>(j, "copies"),
                                        rational_field(j.at("eps")), o);
  } else {
    fail("unknown objective type '" + type + "'");
  }
  if (f->ground_size() != n) fail("objective ground size differs");
  return f;
}

}  // namespace

json instance_to_json(const Instance& inst) {
  json j;
  j["schema_version"] = kInstanceSchemaVersion;
  j["family"] = inst.family;
  j["seed"] = inst.seed;
  j["ground_size"] = inst.ground_size;
  if (inst.coordinates) {
    j["elements"] = {{"p", inst.coordinates->p},
                     {"k", inst.coordinates->k},
                     {"coords", inst.coordinates->coords}};
  }
  // A hidden-chain system is stored once as (k, m); its hidden elements are
  // the instance's "hidden" list.
  json ms = json::array();
  for (const auto& m : inst.matroids) {
    if (dynamic_cast<const HiddenChainMatroid*>(m.get())) continue;
    ms.push_back(matroid_to_json(*m));
  }
  const bool hidden_chain =
      !inst.matroids.empty() &&
      dynamic_cast<const HiddenChainMatroid*>(inst.matroids.front().get());
  if (hidden_chain) {
    if (!ms.empty()) fail("hidden-chain matroids cannot be mixed with others");
    auto* last = dynamic_cast<const HiddenChainMatroid*>(inst.matroids.back().get());
    const auto k = static_cast<std::uint32_t>(inst.matroids.size());
    if (!last || last->index() != k) fail("hidden-chain system is incomplete");
    ms.push_back({{"type", "hidden_chain"},
                  {"k", k},
                  {"m", static_cast<std::uint32_t>(inst.ground_size / k)}});
  }
  j["matroids"] = ms;
  j["objective"] = objective_to_json(*inst.objective);
  j["stream_order"] = inst.stream.order();
  j["hidden"] = inst.hidden;
  return j;
}

Instance instance_from_json(const json& j) {
  try {
    if (!j.is_object()) fail("top level is not an object");
    if (field<int>(j, "schema_version") != kInstanceSchemaVersion) {
      fail("unsupported schema_version");
    }
    Instance inst;
    inst.family = field<std::string>(j, "family");
    inst.seed = field<std::uint64_t>(j, "seed");
    inst.ground_size = field<std::size_t>(j, "ground_size");
    inst.hidden = field<std::vector<ElementId>>(j, "hidden");
    if (j.contains("elements")) {
      const json& e = j.at("elements");
      auto sys = std::make_shared<CoordinateSystem>();
      sys->p = field<std::uint32_t>(e, "p");
      sys->k = field<std::uint32_t>(e, "k");
      sys->coords = field<std::vector<std::vector<std::uint32_t>>>(e, "coords");
      sys->validate();
      if (sys->ground_size() != inst.ground_size) fail("coordinate count != n");
      inst.coordinates = sys;
    }
    for (const auto& m : j.at("matroids")) {
      const auto type = field<std::string>(m, "type");
      if (type == "partition") {
        inst.matroids.push_back(std::make_shared<PartitionMatroid>(
            field<std::vector<std::uint32_t>>(m, "block_of"),
            field<std::vector<std::uint32_t>>(m, "capacity")));
      } else if (type == "coordinate") {
        if (!inst.coordinates) fail("coordinate matroid without elements");
        inst.matroids.push_back(
            coordinate_matroid(inst.coordinates, field<std::uint32_t>(m, "index")));
      } else if (type == "free") {
        inst.matroids.push_back(std::make_shared<FreeMatroid>(inst.ground_size));
      } else if (type == "hidden_chain") {
        auto sys = std::make_shared<HiddenChainSystem>(
            field<std::uint32_t>(m, "k"), field<std::uint32_t>(m, "m"),
            inst.hidden);
        for (const auto& hm : sys->matroids()) inst.matroids.push_back(hm);
      } else {
        fail("unknown matroid type '" + type + "'");
      }
    }
    for (const auto& m : inst.matroids) {
      if (m->ground_size() != inst.ground_size) fail("matroid ground size != n");
    }
    inst.objective = objective_from_json(field<json>(j, "objective"),
                                         inst.ground_size);
    inst.stream = Stream(field<std::vector<ElementId>>(j, "stream_order"),
                         inst.ground_size);
    return inst;
  } catch (const MalformedInstance&) {
    throw;
  } catch (const std::exception& e) {
    throw MalformedInstance(std::string("malformed instance: ") + e.what());
  }
}

std::string dump_instance(const Instance& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

Instance parse_instance(std::string_view text) {
  json j = json::parse(text.begin(), text.end(), nullptr, false);
  if (j.is_discarded()) fail("not valid JSON");
  return instance_from_json(j);
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << dump_instance(inst);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

}  // namespace smkm
