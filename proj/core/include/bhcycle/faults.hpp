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

#ifndef BHCYCLE_FAULTS_HPP_
#define BHCYCLE_FAULTS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bhcycle/topology.hpp"

namespace bhc {

// A set of faulty edges of one BH_n with per-vertex fault degrees kept in
// step with the edge list.
class FaultSet {
 public:
  FaultSet() = default;
  explicit FaultSet(int n);
  // Throws std::invalid_argument if an edge is not in `t` or is repeated.
  FaultSet(const Topology& t, std::span<const Edge> edges);

  int dimension() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  std::span<const Edge> edges() const { return edges_; }

  bool contains(const Edge& e) const;
  bool contains(Vertex a, Vertex b) const { return contains(Edge::make(a, b)); }
  int fault_degree(Vertex v) const { return degree_[v.code()]; }
  int count_in_dimension(int d) const;

  // Returns false if already present / absent.
  bool insert(const Edge& e);
  bool erase(const Edge& e);

  // Recomputes degrees from the edge list and compares.
  bool consistent() const;

  friend bool operator==(const FaultSet& a, const FaultSet& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;  // sorted
  std::vector<std::uint8_t> degree_;
};

// |F| <= 4n-5 is not checked here; only the minimum-degree condition.
bool is_conditional(const Topology& t, const FaultSet& f);
int min_fault_free_degree(const Topology& t, const FaultSet& f);

// Number of fault-free edges at u, optionally ignoring one dimension.
int rescuability(const Topology& t, const FaultSet& f, Vertex u,
                 std::optional<int> excluded_dimension = std::nullopt);

struct DimensionProfile {
  int dim = 0;
  int faults = 0;         // faulty edges of this dimension
  int isolated = 0;       // vertices with no fault-free edge off this dimension
  int one_rescuable = 0;  // vertices with exactly one
};

DimensionProfile profile_dimension(const Topology& t, const FaultSet& f, int m);

struct SplitChoice {
  enum class Kind { kCase1, kCase2 };
  Kind kind = Kind::kCase1;
  int m = 0;
  std::optional<int> m_prime;
};

// Picks the split dimension for the inductive step. For |F| = 4n-5 the
// choice follows the counting guarantee (preferring the single-dimension
// form); for smaller F any dimension with no isolated vertex and at most one
// 1-rescuable vertex is accepted. Throws std::logic_error if none exists.
SplitChoice select_split_dimension(const Topology& t, const FaultSet& f);

// A cross edge (v, w) at a vertex next to u inside u's component: v is a
// neighbor of u off the split dimension and (v, w) is a fault-free edge of
// the split dimension.
struct RescueEdge {
  Vertex v;
  Vertex w;
  bool link_faulty = false;  // whether (u, v) itself is faulty
};

std::vector<RescueEdge> rescue_candidates(const Topology& t, const FaultSet& f,
                                          const Partition& p, Vertex u);
// First candidate; throws std::logic_error if there is none.
RescueEdge find_rescue_cross_edge(const Topology& t, const FaultSet& f,
                                  const Partition& p, Vertex u);

// Uniform over conditional fault sets of the given size (rejection).
// Throws std::runtime_error if no sample is accepted within the budget.
FaultSet random_conditional_faults(const Topology& t, std::size_t size, std::uint64_t seed);

// Faults concentrated around a few hub vertices and one dimension; reaches
// the rarer branches of the construction far more often than uniform draws.
FaultSet clustered_conditional_faults(const Topology& t, std::size_t size, std::uint64_t seed);

// 4n-5 conditional faults with 4n-9..4n-7 of them inside one component of
// the dimension-j partition and the rest on j-edges at that component.
FaultSet component_loaded_faults(const Topology& t, int j, std::uint64_t seed);

struct Counterexample {
  FaultSet faults;
  Vertex u, v;  // same color, identical fault-free neighborhoods
  Vertex x, y;  // that neighborhood
};

// 4n-4 faults leaving u and v both attached only to x and y.
Counterexample build_optimality_counterexample(const Topology& t);

// splitmix64 step, used to derive per-trial seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace bhc

#endif  // BHCYCLE_FAULTS_HPP_
