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

// Pruned backtracking search for Hamiltonian paths and cycles in faulty
// balanced hypercubes of small order (up to 256 vertices).

#ifndef BHCYCLE_PATHFINDER_HPP_
#define BHCYCLE_PATHFINDER_HPP_

#include <chrono>
#include <cstdint>
#include <optional>
#include <utility>

#include "bhcycle/faults.hpp"
#include "bhcycle/paths.hpp"
#include "bhcycle/topology.hpp"

namespace bhc {

struct SearchBudget {
  std::uint64_t node_limit = 100'000'000;
  std::chrono::milliseconds time_limit{60'000};

  // Defaults, overridden by BHCYCLE_NODE_LIMIT and BHCYCLE_TIME_LIMIT_MS.
  static SearchBudget from_env();
};

struct SearchOptions {
  bool parity_pruning = true;
  bool degree_pruning = true;
  bool connectivity_pruning = true;
  bool restarts = true;    // shuffled restarts with growing node caps
  bool self_check = true;  // verify every result before returning it
};

enum class SearchStatus {
  kFound,
  kNotFound,        // exhaustive: no solution exists
  kBudgetExceeded,  // gave up; nothing is known
};

const char* to_string(SearchStatus s);

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t parity_prunes = 0;
  std::uint64_t degree_prunes = 0;
  std::uint64_t connectivity_prunes = 0;
  std::uint64_t forced_moves = 0;

  SearchStats& operator+=(const SearchStats& o);
};

struct PathResult {
  SearchStatus status = SearchStatus::kNotFound;
  Path path;
  SearchStats stats;
};

struct PathPairResult {
  SearchStatus status = SearchStatus::kNotFound;
  Path first;   // u1 -> v1
  Path second;  // u2 -> v2
  SearchStats stats;
};

struct CycleResult {
  SearchStatus status = SearchStatus::kNotFound;
  HamCycle cycle;
  SearchStats stats;
};

// Hamiltonian path of t - f from s to dest. Throws std::invalid_argument for
// out-of-range or equal endpoints.
PathResult ham_path(const Topology& t, const FaultSet& f, Vertex s, Vertex dest,
                    const SearchBudget& budget = {}, const SearchOptions& opt = {});

// Two disjoint paths u1->v1 and u2->v2 covering every vertex. Requires four
// distinct endpoints.
PathPairResult two_spanning_paths(const Topology& t, const FaultSet& f, Vertex u1, Vertex v1,
                                  Vertex u2, Vertex v2, const SearchBudget& budget = {},
                                  const SearchOptions& opt = {});

// Hamiltonian path of t - f - removed from s to dest.
PathResult hyper_ham_path(const Topology& t, const FaultSet& f, Vertex removed, Vertex s,
                          Vertex dest, const SearchBudget& budget = {},
                          const SearchOptions& opt = {});

// Hamiltonian cycle of t - f, through `through` if given. A faulty `through`
// edge is rejected with std::invalid_argument.
CycleResult ham_cycle_search(const Topology& t, const FaultSet& f,
                             std::optional<Edge> through = std::nullopt,
                             const SearchBudget& budget = {}, const SearchOptions& opt = {});

}  // namespace bhc

#endif  // BHCYCLE_PATHFINDER_HPP_
