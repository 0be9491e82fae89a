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

#ifndef BHCYCLE_PATHS_HPP_
#define BHCYCLE_PATHS_HPP_

#include <vector>

#include "bhcycle/topology.hpp"

namespace bhc {

// Open vertex sequence. A single vertex is a valid path of length 0.
struct Path {
  std::vector<Vertex> vertices;

  bool empty() const { return vertices.empty(); }
  std::size_t size() const { return vertices.size(); }
  Vertex front() const { return vertices.front(); }
  Vertex back() const { return vertices.back(); }
};

// Closed vertex sequence; the closing edge back()->front() is implicit.
struct HamCycle {
  std::vector<Vertex> vertices;

  std::size_t size() const { return vertices.size(); }
};

}  // namespace bhc

#endif  // BHCYCLE_PATHS_HPP_
