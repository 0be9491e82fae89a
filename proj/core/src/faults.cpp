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

#include "bhcycle/faults.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace bhc {

FaultSet::FaultSet(int n) : n_(n), degree_(std::size_t{1} << (2 * n), 0) {}

FaultSet::FaultSet(const Topology& t, std::span<const Edge> edges) : FaultSet(t.dimension()) {
  for (const Edge& e : edges) {
    auto found = t.find_edge(e.u, e.v);
    if (!found) throw std::invalid_argument("fault is not an edge of BH_" + std::to_string(n_));
    if (!insert(*found)) throw std::invalid_argument("duplicate fault");
  }
}

bool FaultSet::contains(const Edge& e) const {
  if (degree_.empty() || degree_[e.u.code()] == 0 || degree_[e.v.code()] == 0) return false;
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

int FaultSet::count_in_dimension(int d) const {
  return static_cast<int>(
      std::count_if(edges_.begin(), edges_.end(), [d](const Edge& e) { return e.dim == d; }));
}

bool FaultSet::insert(const Edge& e) {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it != edges_.end() && *it == e) return false;
  Edge g = Edge::make(e.u, e.v, e.dim);
  if (g.dim < 0) {
    auto d = classify_pair(n_, g.u, g.v);
    if (!d) throw std::invalid_argument("not an edge of BH_" + std::to_string(n_));
    g.dim = *d;
  }
  edges_.insert(it, g);
  ++degree_[e.u.code()];
  ++degree_[e.v.code()];
  return true;
}

bool FaultSet::erase(const Edge& e) {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || !(*it == e)) return false;
  edges_.erase(it);
  --degree_[e.u.code()];
  --degree_[e.v.code()];
  return true;
}

bool FaultSet::consistent() const {
  std::vector<std::uint8_t> deg(degree_.size(), 0);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (i > 0 && !(edges_[i - 1] < edges_[i])) return false;
    ++deg[edges_[i].u.code()];
    ++deg[edges_[i].v.code()];
  }
  return deg == degree_;
}

int min_fault_free_degree(const Topology& t, const FaultSet& f) {
  int best = t.degree();
  for (std::uint32_t c = 0; c < t.vertex_count(); ++c) {
    best = std::min(best, t.degree() - f.fault_degree(Vertex(c)));
  }
  return best;
}

bool is_conditional(const Topology& t, const FaultSet& f) {
  return f.dimension() == t.dimension() && min_fault_free_degree(t, f) >= 2;
}

int rescuability(const Topology& t, const FaultSet& f, Vertex u,
                 std::optional<int> excluded_dimension) {
  int count = 0;
  auto nb = t.neighbors(u);
  for (int s = 0; s < t.degree(); ++s) {
    if (excluded_dimension && t.neighbor_dimension(u, s) == *excluded_dimension) continue;
    if (!f.contains(u, nb[s])) ++count;
  }
  return count;
}

DimensionProfile profile_dimension(const Topology& t, const FaultSet& f, int m) {
  DimensionProfile p;
  p.dim = m;
  p.faults = f.count_in_dimension(m);
  for (std::uint32_t c = 0; c < t.vertex_count(); ++c) {
    const int r = rescuability(t, f, Vertex(c), m);
    if (r == 0) ++p.isolated;
    if (r == 1) ++p.one_rescuable;
  }
  return p;
}

namespace {

bool case1_ok(const DimensionProfile& p) {
  return p.faults >= 3 && p.isolated == 0 && p.one_rescuable == 0;
}
bool case2_ok(const DimensionProfile& p) { return p.isolated == 0 && p.one_rescuable <= 1; }

}  // namespace

SplitChoice select_split_dimension(const Topology& t, const FaultSet& f) {
  const int n = t.dimension();
  if (n < 3) throw std::invalid_argument("split selection needs n >= 3");
  if (!is_conditional(t, f)) throw std::invalid_argument("fault set is not conditional");
  std::vector<DimensionProfile> prof;
  for (int m = 0; m < n; ++m) prof.push_back(profile_dimension(t, f, m));

  for (const auto& p : prof) {
    if (case1_ok(p)) return {SplitChoice::Kind::kCase1, p.dim, std::nullopt};
  }
  for (int m = 0; m < n; ++m) {
    if (prof[m].faults < 2 || !case2_ok(prof[m])) continue;
    for (int k = m + 1; k < n; ++k) {
      if (prof[k].faults >= 2 && case2_ok(prof[k])) return {SplitChoice::Kind::kCase2, m, k};
    }
  }
  if (f.size() < static_cast<std::size_t>(4 * n - 5)) {
    // Relaxed form for small fault sets: only the isolation conditions.
    std::vector<int> ok;
    for (const auto& p : prof) {
      if (case2_ok(p)) ok.push_back(p.dim);
    }
    if (!ok.empty()) {
      std::optional<int> second;
      if (ok.size() > 1) second = ok[1];
      return {SplitChoice::Kind::kCase2, ok[0], second};
    }
  }
  throw std::logic_error("no split dimension satisfies the selection conditions");
}

std::vector<RescueEdge> rescue_candidates(const Topology& t, const FaultSet& f,
                                          const Partition& p, Vertex u) {
  const int j = p.split_dimension();
  std::vector<RescueEdge> out;
  auto nb = t.neighbors(u);
  for (int s = 0; s < t.degree(); ++s) {
    if (t.neighbor_dimension(u, s) == j) continue;
    const Vertex v = nb[s];
    for (Vertex w : t.neighbors_in_dimension(v, j)) {
      if (!f.contains(v, w)) out.push_back({v, w, f.contains(u, v)});
    }
  }
  return out;
}

RescueEdge find_rescue_cross_edge(const Topology& t, const FaultSet& f, const Partition& p,
                                  Vertex u) {
  auto c = rescue_candidates(t, f, p, u);
  if (c.empty()) {
    throw std::logic_error("no fault-free cross edge next to " + u.to_string(t.dimension()));
  }
  return c.front();
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

namespace {

constexpr int kRejectionBudget = 1'000'000;

FaultSet sample_subset(const Topology& t, std::size_t size, std::mt19937_64& rng) {
  auto all = t.edges();
  std::vector<std::uint32_t> idx(all.size());
  for (std::uint32_t i = 0; i < idx.size(); ++i) idx[i] = i;
  FaultSet f(t.dimension());
  for (std::size_t k = 0; k < size; ++k) {
    std::uniform_int_distribution<std::size_t> pick(k, idx.size() - 1);
    std::swap(idx[k], idx[pick(rng)]);
    f.insert(all[idx[k]]);
  }
  return f;
}

}  // namespace

FaultSet random_conditional_faults(const Topology& t, std::size_t size, std::uint64_t seed) {
  if (size > t.edges().size()) throw std::invalid_argument("more faults than edges");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
    FaultSet f = sample_subset(t, size, rng);
    if (is_conditional(t, f)) return f;
  }
  throw std::runtime_error("rejection budget exhausted");
}

FaultSet clustered_conditional_faults(const Topology& t, std::size_t size, std::uint64_t seed) {
  if (size > t.edges().size()) throw std::invalid_argument("more faults than edges");
  const int n = t.dimension();
  const std::uint32_t nv = static_cast<std::uint32_t>(t.vertex_count());
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
    FaultSet f(n);
    const int hubs = uniform(1, 3);
    std::vector<Vertex> hub;
    hub.push_back(Vertex(static_cast<std::uint32_t>(uniform(0, nv - 1))));
    for (int h = 1; h < hubs; ++h) {
      // Second hubs sit near the first: a neighbor, or a twin with the
      // same neighborhood (inner index shifted by 2).
      const Vertex base = hub[uniform(0, static_cast<int>(hub.size()) - 1)];
      if (uniform(0, 1)) {
        hub.push_back(t.neighbors(base)[uniform(0, t.degree() - 1)]);
      } else {
        hub.push_back(base.with_digit(0, base.digit(0) + 2));
      }
    }
    const int focus = uniform(0, n - 1);
    for (Vertex h : hub) {
      if (f.size() >= size) break;
      const int k = uniform(1, t.degree() - 2);
      std::vector<Vertex> nb(t.neighbors(h).begin(), t.neighbors(h).end());
      std::shuffle(nb.begin(), nb.end(), rng);
      // Prefer leaving the focus dimension intact at hubs half the time.
      if (uniform(0, 1)) {
        std::stable_partition(nb.begin(), nb.end(),
                              [&](Vertex x) { return t.edge_dimension(h, x) != focus; });
      }
      for (int i = 0; i < k && f.size() < size; ++i) f.insert(*t.find_edge(h, nb[i]));
    }
    const int mode = uniform(0, 2);
    int guard = 0;
    while (f.size() < size && guard++ < 100000) {
      Edge e;
      if (mode == 0) {
        e = t.edges()[uniform(0, static_cast<int>(t.edges().size()) - 1)];
      } else if (mode == 1) {
        auto d = t.edges_of_dimension(focus);
        e = d[uniform(0, static_cast<int>(d.size()) - 1)];
      } else {
        const Vertex h = hub[uniform(0, static_cast<int>(hub.size()) - 1)];
        const Vertex x = t.neighbors(h)[uniform(0, t.degree() - 1)];
        const Vertex y = t.neighbors(x)[uniform(0, t.degree() - 1)];
        e = *t.find_edge(x, y);
      }
      f.insert(e);
    }
    if (f.size() == size && is_conditional(t, f)) return f;
  }
  throw std::runtime_error("rejection budget exhausted");
}

FaultSet component_loaded_faults(const Topology& t, int j, std::uint64_t seed) {
  const int n = t.dimension();
  if (n < 3 || j < 0 || j >= n) {
    throw std::invalid_argument("component loading needs n >= 3 and a valid j");
  }
  const auto part = shared_partition(n, j);
  const std::size_t size = static_cast<std::size_t>(4 * n - 5);
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
    FaultSet f(n);
    const int h = uniform(0, 3);
    const auto comp = part->component(h);
    auto pick = [&] { return comp[uniform(0, static_cast<int>(comp.size()) - 1)]; };
    const int inner = 4 * n - 9 + uniform(0, 2);
    const int cross = static_cast<int>(size) - inner;
    std::vector<Vertex> hot;
    // Cross faults: sometimes both j-edges of one vertex, the rest near it.
    if (cross >= 2 && uniform(0, 1)) {
      const Vertex z = pick();
      for (Vertex y : t.neighbors_in_dimension(z, j)) f.insert(*t.find_edge(z, y));
      hot.push_back(z);
    }
    while (static_cast<int>(f.size()) < cross) {
      Vertex z = pick();
      if (!hot.empty() && uniform(0, 1)) {
        // a vertex two steps from a hot one
        const Vertex m = t.neighbors(hot[0])[uniform(0, t.degree() - 1)];
        z = t.neighbors(m)[uniform(0, t.degree() - 1)];
        if (part->label(z) != h) continue;
      }
      const auto ys = t.neighbors_in_dimension(z, j);
      f.insert(*t.find_edge(z, ys[uniform(0, 1)]));
      hot.push_back(z);
    }
    // Component faults: sometimes 2n-3 at one vertex, the rest biased
    // toward vertices that lost a cross edge.
    std::vector<Edge> local;
    for (Vertex x : comp) {
      for (Vertex y : t.neighbors(x)) {
        if (x < y && part->label(y) == h) local.push_back(*t.find_edge(x, y));
      }
    }
    if (uniform(0, 1)) {
      const Vertex w = pick();
      std::vector<Vertex> nb;
      for (Vertex y : t.neighbors(w)) {
        if (t.edge_dimension(w, y) != j) nb.push_back(y);
      }
      std::shuffle(nb.begin(), nb.end(), rng);
      for (int i = 0; i < 2 * n - 3 && static_cast<int>(f.size()) < static_cast<int>(size); ++i) {
        f.insert(*t.find_edge(w, nb[i]));
      }
    }
    int guard = 0;
    while (f.size() < size && guard++ < 10000) {
      const Edge& g = local[uniform(0, static_cast<int>(local.size()) - 1)];
      if (!hot.empty() && uniform(0, 2) == 0) {
        bool near = false;
        for (Vertex z : hot) near = near || g.touches(z);
        if (!near) continue;
      }
      f.insert(g);
    }
    if (f.size() == size && is_conditional(t, f)) return f;
  }
  throw std::runtime_error("rejection budget exhausted");
}

Counterexample build_optimality_counterexample(const Topology& t) {
  const int n = t.dimension();
  if (n < 2) throw std::invalid_argument("counterexample needs n >= 2");
  Counterexample c{FaultSet(n), Vertex(0), Vertex(0).with_digit(0, 2), Vertex(0).with_digit(0, 1),
                   Vertex(0).with_digit(0, 3)};
  for (Vertex hub : {c.u, c.v}) {
    for (Vertex a : t.neighbors(hub)) {
      if (a != c.x && a != c.y) c.faults.insert(*t.find_edge(hub, a));
    }
  }
  return c;
}

}  // namespace bhc
