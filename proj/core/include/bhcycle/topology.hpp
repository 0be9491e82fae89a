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

// Balanced hypercube topology: vertices, edges, the two equivalent
// constructions, and the four-way split along one dimension.

#ifndef BHCYCLE_TOPOLOGY_HPP_
#define BHCYCLE_TOPOLOGY_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bhc {

// Largest supported dimension. 4^10 vertices still fit comfortably in a
// packed code, but the searchers are only meant for n <= 4.
inline constexpr int kMaxDimension = 10;

enum class Color : std::uint8_t { kWhite = 0, kBlack = 1 };

inline constexpr Color opposite(Color c) {
  return c == Color::kWhite ? Color::kBlack : Color::kWhite;
}

// A vertex is n radix-4 digits packed two bits each, digit 0 (the inner
// index) in the lowest bits. The packed code doubles as the vertex index.
class Vertex {
 public:
  constexpr Vertex() = default;
  constexpr explicit Vertex(std::uint32_t code) : code_(code) {}

  static Vertex from_digits(std::span<const int> digits);

  constexpr std::uint32_t code() const { return code_; }
  constexpr int digit(int i) const { return static_cast<int>((code_ >> (2 * i)) & 3u); }
  constexpr Vertex with_digit(int i, int value) const {
    const std::uint32_t mask = 3u << (2 * i);
    return Vertex((code_ & ~mask) | (static_cast<std::uint32_t>(value & 3) << (2 * i)));
  }
  constexpr Color color() const { return (code_ & 1u) ? Color::kBlack : Color::kWhite; }

  std::vector<int> digits(int n) const;
  std::string to_string(int n) const;

  constexpr auto operator<=>(const Vertex&) const = default;

 private:
  std::uint32_t code_ = 0;
};

// Undirected edge stored with u < v. `dim` is filled in by the topology that
// produced it; equality and ordering ignore it.
struct Edge {
  Vertex u;
  Vertex v;
  int dim = -1;

  static Edge make(Vertex a, Vertex b, int dim = -1) {
    return a < b ? Edge{a, b, dim} : Edge{b, a, dim};
  }
  bool touches(Vertex x) const { return u == x || v == x; }
  Vertex other(Vertex x) const { return x == u ? v : u; }
  std::uint64_t key() const {
    return (static_cast<std::uint64_t>(u.code()) << 32) | v.code();
  }

  friend bool operator==(const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }
  friend auto operator<=>(const Edge& a, const Edge& b) {
    if (auto c = a.u <=> b.u; c != 0) return c;
    return a.v <=> b.v;
  }
};

class Topology {
 public:
  // Digit-rule definition.
  static Topology build_def1(int n);
  // Recursive four-copy definition.
  static Topology build_def2(int n);
  // Process-wide cache of build_def1 results, used by recursive callers.
  static std::shared_ptr<const Topology> shared(int n);

  int dimension() const { return n_; }
  std::size_t vertex_count() const { return std::size_t{1} << (2 * n_); }
  int degree() const { return 2 * n_; }
  bool contains(Vertex v) const { return v.code() < vertex_count(); }

  // Neighbors sorted by (dimension, code); two per dimension.
  std::span<const Vertex> neighbors(Vertex v) const {
    return {adj_.data() + v.code() * degree(), static_cast<std::size_t>(degree())};
  }
  // Dimension of the edge to neighbors(v)[slot].
  int neighbor_dimension(Vertex v, int slot) const {
    return adj_dim_[v.code() * degree() + slot];
  }
  // The two neighbors of v across dimension d.
  std::array<Vertex, 2> neighbors_in_dimension(Vertex v, int d) const {
    const Vertex* p = adj_.data() + v.code() * degree() + 2 * d;
    return {p[0], p[1]};
  }

  bool adjacent(Vertex a, Vertex b) const;
  // Throws std::invalid_argument for a non-adjacent pair.
  int edge_dimension(Vertex a, Vertex b) const;
  std::optional<Edge> find_edge(Vertex a, Vertex b) const;

  // All edges in canonical order.
  std::span<const Edge> edges() const { return edges_; }
  std::vector<Edge> edges_of_dimension(int d) const;

  bool operator==(const Topology& other) const {
    return n_ == other.n_ && edges_ == other.edges_ && dims_equal(other);
  }

 private:
  Topology(int n, std::vector<Edge> edges);
  bool dims_equal(const Topology& other) const;

  int n_ = 0;
  std::vector<Vertex> adj_;
  std::vector<std::uint8_t> adj_dim_;
  std::vector<Edge> edges_;
};

// Dimension of an adjacent pair computed from the digit rule alone.
// Returns nullopt if the digits are not adjacent in BH_n.
std::optional<int> classify_pair(int n, Vertex a, Vertex b);

// Split of BH_n along dimension j into four copies of BH_{n-1}. Labels are
// oriented so that a white vertex's j-edges lead to label+1 and a black
// vertex's to label-1 (mod 4).
class Partition {
 public:
  struct CrossEdge {
    Edge edge;
    int from_label;  // label of the white endpoint
    int to_label;    // from_label + 1 mod 4
  };

  static Partition by_dimension(const Topology& t, int j);

  int dimension() const { return n_; }
  int split_dimension() const { return j_; }
  int label(Vertex v) const;
  std::span<const Vertex> component(int label) const { return components_[label & 3]; }
  const Topology& component_topology() const { return *local_; }
  std::shared_ptr<const Topology> component_topology_ptr() const { return local_; }

  // Isomorphism between component `label(v)` and BH_{n-1}.
  Vertex to_local(Vertex v) const;
  Vertex to_global(int label, Vertex local) const;

  std::span<const CrossEdge> cross_edges() const { return cross_; }

 private:
  int n_ = 0;
  int j_ = 0;
  std::array<std::vector<Vertex>, 4> components_;
  std::vector<CrossEdge> cross_;
  std::shared_ptr<const Topology> local_;
};

// Cached partition of the shared BH_n along j.
std::shared_ptr<const Partition> shared_partition(int n, int j);

}  // namespace bhc

template <>
struct std::hash<bhc::Vertex> {
  std::size_t operator()(const bhc::Vertex& v) const noexcept { return v.code(); }
};

template <>
struct std::hash<bhc::Edge> {
  std::size_t operator()(const bhc::Edge& e) const noexcept {
    return std::hash<std::uint64_t>{}(e.key());
  }
};

#endif  // BHCYCLE_TOPOLOGY_HPP_
