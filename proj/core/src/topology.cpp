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

#include "bhcycle/topology.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace bhc {

namespace {

void check_dimension(int n, int lo) {
  if (n < lo || n > kMaxDimension) {
    throw std::invalid_argument("dimension out of range: " + std::to_string(n));
  }
}

// +1 for even inner index, -1 for odd.
constexpr int drift(Vertex v) { return (v.digit(0) & 1) ? -1 : 1; }

}  // namespace

Vertex Vertex::from_digits(std::span<const int> digits) {
  if (digits.size() > static_cast<std::size_t>(kMaxDimension)) {
    throw std::invalid_argument("too many digits");
  }
  std::uint32_t code = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] < 0 || digits[i] > 3) throw std::invalid_argument("digit out of range");
    code |= static_cast<std::uint32_t>(digits[i]) << (2 * i);
  }
  return Vertex(code);
}

std::vector<int> Vertex::digits(int n) const {
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) out[i] = digit(i);
  return out;
}

std::string Vertex::to_string(int n) const {
  std::string s = "(";
  for (int i = 0; i < n; ++i) {
    if (i) s += ',';
    s += static_cast<char>('0' + digit(i));
  }
  return s + ")";
}

Topology::Topology(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  const std::size_t nv = vertex_count();
  const int deg = degree();
  std::vector<std::vector<std::pair<int, Vertex>>> lists(nv);
  for (const Edge& e : edges_) {
    lists[e.u.code()].push_back({e.dim, e.v});
    lists[e.v.code()].push_back({e.dim, e.u});
  }
  adj_.resize(nv * deg);
  adj_dim_.resize(nv * deg);
  for (std::size_t x = 0; x < nv; ++x) {
    auto& l = lists[x];
    std::sort(l.begin(), l.end());
    if (static_cast<int>(l.size()) != deg) {
      throw std::logic_error("vertex " + Vertex(x).to_string(n) + " has degree " +
                             std::to_string(l.size()));
    }
    for (int s = 0; s < deg; ++s) {
      if (l[s].first != s / 2) throw std::logic_error("unbalanced dimensions at a vertex");
      adj_[x * deg + s] = l[s].second;
      adj_dim_[x * deg + s] = static_cast<std::uint8_t>(l[s].first);
    }
  }
}

Topology Topology::build_def1(int n) {
  check_dimension(n, 1);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) << (2 * n));
  const std::uint32_t nv = 1u << (2 * n);
  for (std::uint32_t c = 0; c < nv; ++c) {
    const Vertex v(c);
    const int a0 = v.digit(0);
    for (int sign : {1, -1}) {
      const Vertex w0 = v.with_digit(0, a0 + sign);
      if (v < w0) edges.push_back({v, w0, 0});
      for (int i = 1; i < n; ++i) {
        const Vertex w = w0.with_digit(i, v.digit(i) + drift(v));
        if (v < w) edges.push_back({v, w, i});
      }
    }
  }
  return Topology(n, std::move(edges));
}

Topology Topology::build_def2(int n) {
  check_dimension(n, 1);
  std::vector<Edge> edges;
  for (std::uint32_t c = 0; c < 4; ++c) {
    edges.push_back(Edge::make(Vertex(c), Vertex((c + 1) & 3), 0));
  }
  for (int k = 2; k <= n; ++k) {
    const int top = k - 1;
    std::vector<Edge> next;
    next.reserve(edges.size() * 4 + (std::size_t{1} << (2 * k)));
    for (int i = 0; i < 4; ++i) {
      for (const Edge& e : edges) {
        next.push_back(Edge::make(e.u.with_digit(top, i), e.v.with_digit(top, i), e.dim));
      }
    }
    const std::uint32_t sub = 1u << (2 * top);
    for (std::uint32_t c = 0; c < sub; ++c) {
      for (int i = 0; i < 4; ++i) {
        const Vertex x = Vertex(c).with_digit(top, i);
        const int a0 = x.digit(0);
        const int target = (a0 & 1) ? i - 1 : i + 1;
        for (int sign : {1, -1}) {
          const Vertex y = x.with_digit(0, a0 + sign).with_digit(top, target);
          next.push_back(Edge::make(x, y, top));
        }
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    edges = std::move(next);
  }
  return Topology(n, std::move(edges));
}

std::shared_ptr<const Topology> Topology::shared(int n) {
  check_dimension(n, 1);
  static std::mutex mu;
  static std::array<std::shared_ptr<const Topology>, kMaxDimension + 1> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (!cache[n]) cache[n] = std::make_shared<const Topology>(build_def1(n));
  return cache[n];
}

bool Topology::adjacent(Vertex a, Vertex b) const {
  if (!contains(a) || !contains(b)) return false;
  for (Vertex x : neighbors(a)) {
    if (x == b) return true;
  }
  return false;
}

int Topology::edge_dimension(Vertex a, Vertex b) const {
  if (contains(a) && contains(b)) {
    auto nb = neighbors(a);
    for (int s = 0; s < degree(); ++s) {
      if (nb[s] == b) return neighbor_dimension(a, s);
    }
  }
  throw std::invalid_argument("not adjacent: " + a.to_string(n_) + " " + b.to_string(n_));
}

std::optional<Edge> Topology::find_edge(Vertex a, Vertex b) const {
  if (!contains(a) || !contains(b)) return std::nullopt;
  auto nb = neighbors(a);
  for (int s = 0; s < degree(); ++s) {
    if (nb[s] == b) return Edge::make(a, b, neighbor_dimension(a, s));
  }
  return std::nullopt;
}

std::vector<Edge> Topology::edges_of_dimension(int d) const {
  std::vector<Edge> out;
  for (const Edge& e : edges_) {
    if (e.dim == d) out.push_back(e);
  }
  return out;
}

bool Topology::dims_equal(const Topology& other) const {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].dim != other.edges_[i].dim) return false;
  }
  return true;
}

std::optional<int> classify_pair(int n, Vertex a, Vertex b) {
  const int d0 = (b.digit(0) - a.digit(0)) & 3;
  if (d0 != 1 && d0 != 3) return std::nullopt;
  int dim = 0;
  for (int i = 1; i < n; ++i) {
    const int di = (b.digit(i) - a.digit(i)) & 3;
    if (di == 0) continue;
    if (dim != 0 || di != (drift(a) & 3)) return std::nullopt;
    dim = i;
  }
  return dim;
}

Partition Partition::by_dimension(const Topology& t, int j) {
  const int n = t.dimension();
  if (n < 2) throw std::invalid_argument("partition needs n >= 2");
  if (j < 0 || j >= n) throw std::invalid_argument("split dimension out of range");
  Partition p;
  p.n_ = n;
  p.j_ = j;
  p.local_ = Topology::shared(n - 1);
  const std::uint32_t nv = static_cast<std::uint32_t>(t.vertex_count());
  for (std::uint32_t c = 0; c < nv; ++c) p.components_[p.label(Vertex(c))].push_back(Vertex(c));
  for (const Edge& e : t.edges()) {
    if (e.dim != j) continue;
    const Vertex white = e.u.color() == Color::kWhite ? e.u : e.v;
    const int from = p.label(white);
    p.cross_.push_back({e, from, (from + 1) & 3});
  }
  return p;
}

int Partition::label(Vertex v) const {
  if (j_ > 0) return v.digit(j_);
  int s = v.digit(0) & 1;
  for (int i = 1; i < n_; ++i) s -= v.digit(i);
  return s & 3;
}

Vertex Partition::to_local(Vertex v) const {
  const std::uint32_t c = v.code();
  if (j_ == 0) return Vertex(c & ((1u << (2 * (n_ - 1))) - 1));
  const std::uint32_t low = c & ((1u << (2 * j_)) - 1);
  const std::uint32_t high = c >> (2 * (j_ + 1));
  return Vertex(low | (high << (2 * j_)));
}

Vertex Partition::to_global(int lab, Vertex local) const {
  const std::uint32_t c = local.code();
  if (j_ == 0) {
    int top = (local.digit(0) & 1) - lab;
    for (int i = 1; i < n_ - 1; ++i) top -= local.digit(i);
    return Vertex(c).with_digit(n_ - 1, top & 3);
  }
  const std::uint32_t low = c & ((1u << (2 * j_)) - 1);
  const std::uint32_t high = c >> (2 * j_);
  return Vertex(low | (static_cast<std::uint32_t>(lab & 3) << (2 * j_)) |
                (high << (2 * (j_ + 1))));
}

std::shared_ptr<const Partition> shared_partition(int n, int j) {
  static std::mutex mu;
  static std::array<std::array<std::shared_ptr<const Partition>, kMaxDimension>,
                    kMaxDimension + 1>
      cache;
  auto t = Topology::shared(n);
  std::lock_guard<std::mutex> lock(mu);
  if (j < 0 || j >= n) throw std::invalid_argument("split dimension out of range");
  if (!cache[n][j]) cache[n][j] = std::make_shared<const Partition>(Partition::by_dimension(*t, j));
  return cache[n][j];
}

}  // namespace bhc
