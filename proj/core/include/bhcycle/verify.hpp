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

// Checkers for paths, cycles, partitions and definitions. Nothing here calls
// into the searchers or the constructor: adjacency is re-derived from the
// digit rule, components from a fresh BFS, and isomorphism from a separate
// backtracking matcher.

#ifndef BHCYCLE_VERIFY_HPP_
#define BHCYCLE_VERIFY_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bhcycle/faults.hpp"
#include "bhcycle/paths.hpp"
#include "bhcycle/topology.hpp"

namespace bhc {

struct Verdict {
  bool ok = true;
  std::string reason;

  static Verdict pass() { return {}; }
  static Verdict fail(std::string why) { return {false, std::move(why)}; }
  explicit operator bool() const { return ok; }
};

Verdict verify_ham_cycle(const Topology& t, const FaultSet& f, std::span<const Vertex> cycle,
                         std::optional<Edge> through = std::nullopt);
inline Verdict verify_ham_cycle(const Topology& t, const FaultSet& f, const HamCycle& c,
                                std::optional<Edge> through = std::nullopt) {
  return verify_ham_cycle(t, f, c.vertices, through);
}

// Path from s to dest visiting every vertex except `excluded` exactly once.
Verdict verify_ham_path(const Topology& t, const FaultSet& f, std::span<const Vertex> path,
                        Vertex s, Vertex dest, std::span<const Vertex> excluded = {});

// Disjoint paths u1->v1 and u2->v2 that together cover every vertex.
Verdict verify_path_pair(const Topology& t, const FaultSet& f, std::span<const Vertex> first,
                         std::span<const Vertex> second, Vertex u1, Vertex v1, Vertex u2,
                         Vertex v2);

// Both constructions of BH_n produce the same edge set.
Verdict verify_defs_equivalent(int n);

// Four components, each isomorphic to BH_{n-1}, joined only by j-edges
// between consecutive labels; also checks the partition's vertex maps.
Verdict verify_partition(const Topology& t, const Partition& p);

// Backtracking isomorphism test on adjacency lists.
bool graphs_isomorphic(const std::vector<std::vector<int>>& a,
                       const std::vector<std::vector<int>>& b);

enum class Absence { kPresent, kConclusiveAbsent, kStructuralAbsent, kInconclusive };

const char* to_string(Absence a);

struct AbsenceReport {
  Absence verdict = Absence::kInconclusive;
  // A Hamiltonian cycle for kPresent; (u, v, x, y) for kStructuralAbsent.
  std::vector<Vertex> witness;
  std::uint64_t nodes = 0;
};

// Exhaustive for n <= 2. For larger n, looks for two same-colored vertices
// whose only fault-free neighbors are the same pair {x, y}; otherwise runs a
// bounded plain search and reports kPresent or kInconclusive.
AbsenceReport certify_no_ham_cycle(const Topology& t, const FaultSet& f,
                                   std::uint64_t node_limit = 20'000'000);

}  // namespace bhc

#endif  // BHCYCLE_VERIFY_HPP_
