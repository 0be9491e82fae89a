// Copyright 2026 The bhcycle Authors
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

// JSON and DOT interchange formats.

#ifndef BHCYCLE_IO_HPP_
#define BHCYCLE_IO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bhcycle/faults.hpp"
#include "bhcycle/paths.hpp"
#include "bhcycle/topology.hpp"

namespace bhc {

using nlohmann::json;

json vertex_to_json(Vertex v, int n);
// Throws std::invalid_argument on a malformed digit array.
Vertex vertex_from_json(const json& j, int n);

// { "n", "vertices": [[digits]], "edges": [{"u", "v", "dim"}] }
json topology_to_json(const Topology& t);
// Node attribute `color`, edge attribute `dim`.
std::string topology_to_dot(const Topology& t);

// { "n", "faults": [{"u", "v"}], "seed": int|null }
json faults_to_json(const FaultSet& f, std::optional<std::uint64_t> seed = std::nullopt);

struct LoadedFaults {
  FaultSet faults;
  std::optional<std::uint64_t> seed;
};
LoadedFaults faults_from_json(const Topology& t, const json& j);

// { "n", "cycle": [[digits]], "through": {"u", "v"}, "trace": [labels] }
json cycle_to_json(int n, const HamCycle& c, const Edge& through,
                   const std::vector<std::string>& trace);

}  // namespace bhc

#endif  // BHCYCLE_IO_HPP_
