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

// JSON instance files. Keys are sorted and rationals are "a/b" strings, so
// save(load(save(x))) is byte-identical to save(x).

#ifndef SMKM_INSTANCE_IO_HPP_
#define SMKM_INSTANCE_IO_HPP_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "smkm/hardgen.hpp"

namespace smkm {

inline constexpr int kInstanceSchemaVersion = 1;

class MalformedInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json instance_to_json(const Instance& inst);
// Throws MalformedInstance.
Instance instance_from_json(const nlohmann::json& j);

// Two-space indented JSON with a trailing newline.
std::string dump_instance(const Instance& inst);
Instance parse_instance(std::string_view text);

void save_instance(const Instance& inst, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

}  // namespace smkm

#endif  // SMKM_INSTANCE_IO_HPP_
