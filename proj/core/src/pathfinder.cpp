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

#include "bhcycle/pathfinder.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "bhcycle/verify.hpp"

namespace bhc {

SearchBudget SearchBudget::from_env() {
  SearchBudget b;
  if (const char* s = std::getenv("BHCYCLE_NODE_LIMIT")) {
    b.node_limit = std::strtoull(s, nullptr, 10);
  }
  if (const char* s = std::getenv("BHCYCLE_TIME_LIMIT_MS")) {
    b.time_limit = std::chrono::milliseconds(std::strtoll(s, nullptr, 10));
  }
  return b;
}

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::kFound: return "FOUND";
    case SearchStatus::kNotFound: return "NOT_FOUND";
    case SearchStatus::kBudgetExceeded: return "BUDGET_EXCEEDED";
  }
  return "?";
}

SearchStats& SearchStats::operator+=(const SearchStats& o) {
  nodes += o.nodes;
  parity_prunes += o.parity_prunes;
  degree_prunes += o.degree_prunes;
  connectivity_prunes += o.connectivity_prunes;
  forced_moves += o.forced_moves;
  return *this;
}

namespace {

// Covers the live vertices with a sequence of paths s_0->t_0, s_1->t_1, ...
// visited in order: reaching t_k jumps to s_{k+1}.
class Engine {
 public:
  Engine(const Topology& t, const FaultSet& f, std::span<const Vertex> excluded,
         const SearchBudget& budget, const SearchOptions& opt)
      : nv_(static_cast<int>(t.vertex_count())), deg_(t.degree()), budget_(budget), opt_(opt) {
    adj_.assign(static_cast<std::size_t>(nv_) * deg_, -1);
    count_.assign(nv_, 0);
    visited_.assign(nv_, 0);
    free_.assign(nv_, 0);
    role_.assign(nv_, 0);
    for (Vertex x : excluded) visited_[x.code()] = 1;
    for (int x = 0; x < nv_; ++x) {
      for (Vertex y : t.neighbors(Vertex(x))) {
        if (f.contains(Vertex(x), y)) continue;
        adj_[x * deg_ + count_[x]++] = static_cast<int>(y.code());
      }
    }
    for (int x = 0; x < nv_; ++x) {
      if (visited_[x]) continue;
      ++remaining_;
      for (int i = 0; i < count_[x]; ++i) free_[x] += !visited_[adj_[x * deg_ + i]];
    }
  }

  SearchStatus run(std::vector<std::pair<int, int>> segments, std::vector<int>& out) {
    segs_ = std::move(segments);
    for (auto [s, d] : segs_) {
      if (visited_[s] || visited_[d]) return SearchStatus::kNotFound;
      role_[s] = role_[d] = 1;
    }
    if (opt_.parity_pruning && !parity_ok()) {
      ++stats_.parity_prunes;
      return SearchStatus::kNotFound;
    }
    start_ = std::chrono::steady_clock::now();
    // Restarts with a shuffled tie-break and a growing node cap. A run that
    // ends without hitting its cap is exhaustive whatever the order.
    std::uint64_t cap = opt_.restarts ? 4096 : budget_.node_limit;
    for (salt_ = 0;; ++salt_) {
      attempt_limit_ = std::min(budget_.node_limit, stats_.nodes + cap);
      aborted_ = false;
      k_ = 0;
      const int s0 = segs_[0].first;
      visit(s0);
      const bool found = feasible(-1, s0) && dfs(s0);
      if (found) {
        out = path_;
        return SearchStatus::kFound;
      }
      unvisit(s0);
      if (!aborted_) return SearchStatus::kNotFound;
      if (stats_.nodes >= budget_.node_limit || timed_out_) return SearchStatus::kBudgetExceeded;
      cap *= 2;
    }
  }

  const SearchStats& stats() const { return stats_; }

 private:
  std::span<const int> nbrs(int x) const {
    return {adj_.data() + x * deg_, static_cast<std::size_t>(count_[x])};
  }

  void visit(int x) {
    visited_[x] = 1;
    --remaining_;
    path_.push_back(x);
    for (int y : nbrs(x)) --free_[y];
  }
  void unvisit(int x) {
    visited_[x] = 0;
    ++remaining_;
    path_.pop_back();
    for (int y : nbrs(x)) ++free_[y];
  }

  bool is_future_endpoint(int x) const {
    for (std::size_t k = k_ + 1; k < segs_.size(); ++k) {
      if (segs_[k].first == x || segs_[k].second == x) return true;
    }
    return false;
  }

  bool parity_ok() const {
    int balance = 0;  // whites minus blacks over live vertices
    for (int x = 0; x < nv_; ++x) {
      if (!visited_[x]) balance += (x & 1) ? -1 : 1;
    }
    int expect = 0;
    for (auto [s, d] : segs_) {
      const int ws = (s & 1) ? 0 : 1;
      const int wd = (d & 1) ? 0 : 1;
      if (s == d) {
        expect += ws ? 1 : -1;
      } else {
        expect += ws + wd - 1;
      }
    }
    return balance == expect;
  }

  bool adjacent(int a, int b) const {
    for (int y : nbrs(a)) {
      if (y == b) return true;
    }
    return false;
  }

  // Degree and connectivity checks after the head moved from prev to head.
  bool feasible(int prev, int head) {
    if (opt_.degree_pruning) {
      auto check = [&](int x) {
        if (visited_[x]) return true;
        int conn = free_[x];
        const bool future = role_[x] && is_future_endpoint(x);
        if (!future && adjacent(x, head)) ++conn;
        return conn >= (role_[x] ? 1 : 2);
      };
      for (int x : nbrs(head)) {
        if (!check(x)) return ++stats_.degree_prunes, false;
      }
      if (prev >= 0) {
        for (int x : nbrs(prev)) {
          if (!check(x)) return ++stats_.degree_prunes, false;
        }
      }
    }
    if (opt_.connectivity_pruning && remaining_ > 0) {
      mark_.assign(nv_, 0);
      queue_.clear();
      queue_.push_back(head);
      mark_[head] = 1;
      for (std::size_t k = k_ + 1; k < segs_.size(); ++k) {
        const int s = segs_[k].first;
        if (!visited_[s] && !mark_[s]) mark_[s] = 1, queue_.push_back(s);
      }
      int reached = 0;
      for (std::size_t q = 0; q < queue_.size(); ++q) {
        const int x = queue_[q];
        if (!visited_[x]) ++reached;
        for (int y : nbrs(x)) {
          if (!visited_[y] && !mark_[y]) mark_[y] = 1, queue_.push_back(y);
        }
      }
      if (reached != remaining_) return ++stats_.connectivity_prunes, false;
    }
    return true;
  }

  bool out_of_budget() {
    if (stats_.nodes >= attempt_limit_) return true;
    if ((stats_.nodes & 1023) == 0 &&
        std::chrono::steady_clock::now() - start_ > budget_.time_limit) {
      timed_out_ = true;
      return true;
    }
    return false;
  }

  std::uint64_t tie(int a) const {
    std::uint64_t z = static_cast<std::uint64_t>(a) + 0x9e3779b97f4a7c15ull * salt_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    return z ^ (z >> 31);
  }

  bool dfs(int head) {
    if (head == segs_[k_].second) {
      if (k_ + 1 == segs_.size()) return remaining_ == 0;
      ++k_;
      const int s = segs_[k_].first;
      visit(s);
      if (feasible(head, s) && dfs(s)) return true;
      unvisit(s);
      --k_;
      return false;
    }
    ++stats_.nodes;
    if (out_of_budget()) {
      aborted_ = true;
      return false;
    }
    const int target = segs_[k_].second;
    const bool last = k_ + 1 == segs_.size();
    int cand[64];
    int nc = 0;
    int forced = -1;
    for (int x : nbrs(head)) {
      if (visited_[x]) continue;
      if (role_[x] && x != target) continue;  // a future endpoint
      if (x == target && last && remaining_ != 1) continue;
      if (opt_.degree_pruning && x != target && !role_[x] && free_[x] == 1) {
        if (forced >= 0) return ++stats_.degree_prunes, false;
        forced = x;
      }
      cand[nc++] = x;
    }
    if (forced >= 0) {
      ++stats_.forced_moves;
      cand[0] = forced;
      nc = 1;
    } else {
      std::sort(cand, cand + nc, [&](int a, int b) {
        if ((a == target) != (b == target)) return b == target;
        if (free_[a] != free_[b]) return free_[a] < free_[b];
        return salt_ == 0 ? a < b : tie(a) < tie(b);
      });
    }
    for (int i = 0; i < nc; ++i) {
      const int x = cand[i];
      visit(x);
      if (feasible(head, x) && dfs(x)) return true;
      unvisit(x);
      if (aborted_) return false;
    }
    return false;
  }

  int nv_;
  int deg_;
  SearchBudget budget_;
  SearchOptions opt_;
  std::vector<int> adj_;
  std::vector<int> count_;
  std::vector<std::uint8_t> visited_;
  std::vector<int> free_;
  std::vector<std::uint8_t> role_;
  std::vector<std::uint8_t> mark_;
  std::vector<int> queue_;
  std::vector<std::pair<int, int>> segs_;
  std::vector<int> path_;
  std::size_t k_ = 0;
  int remaining_ = 0;
  bool aborted_ = false;
  bool timed_out_ = false;
  std::uint64_t salt_ = 0;
  std::uint64_t attempt_limit_ = 0;
  std::chrono::steady_clock::time_point start_;
  SearchStats stats_;
};

void check_vertex(const Topology& t, Vertex v) {
  if (!t.contains(v)) {
    throw std::invalid_argument("vertex outside BH_" + std::to_string(t.dimension()));
  }
}

std::vector<Vertex> to_vertices(std::span<const int> ids) {
  std::vector<Vertex> out;
  out.reserve(ids.size());
  for (int x : ids) out.push_back(Vertex(static_cast<std::uint32_t>(x)));
  return out;
}

void self_check(const Verdict& v) {
  if (!v) throw std::logic_error("search produced an invalid result: " + v.reason);
}

PathResult path_search(const Topology& t, const FaultSet& f, std::span<const Vertex> excluded,
                       Vertex s, Vertex dest, const SearchBudget& budget,
                       const SearchOptions& opt) {
  check_vertex(t, s);
  check_vertex(t, dest);
  if (s == dest) throw std::invalid_argument("path endpoints must differ");
  if (t.degree() > 64) throw std::invalid_argument("dimension too large for the searcher");
  Engine eng(t, f, excluded, budget, opt);
  std::vector<int> ids;
  PathResult r;
  r.status = eng.run({{static_cast<int>(s.code()), static_cast<int>(dest.code())}}, ids);
  r.stats = eng.stats();
  if (r.status == SearchStatus::kFound) {
    r.path.vertices = to_vertices(ids);
    if (opt.self_check) self_check(verify_ham_path(t, f, r.path.vertices, s, dest, excluded));
  }
  return r;
}

}  // namespace

PathResult ham_path(const Topology& t, const FaultSet& f, Vertex s, Vertex dest,
                    const SearchBudget& budget, const SearchOptions& opt) {
  return path_search(t, f, {}, s, dest, budget, opt);
}

PathResult hyper_ham_path(const Topology& t, const FaultSet& f, Vertex removed, Vertex s,
                          Vertex dest, const SearchBudget& budget, const SearchOptions& opt) {
  check_vertex(t, removed);
  if (removed == s || removed == dest) throw std::invalid_argument("removed vertex is an endpoint");
  const Vertex ex[] = {removed};
  return path_search(t, f, ex, s, dest, budget, opt);
}

PathPairResult two_spanning_paths(const Topology& t, const FaultSet& f, Vertex u1, Vertex v1,
                                  Vertex u2, Vertex v2, const SearchBudget& budget,
                                  const SearchOptions& opt) {
  for (Vertex x : {u1, v1, u2, v2}) check_vertex(t, x);
  const std::uint32_t c[] = {u1.code(), v1.code(), u2.code(), v2.code()};
  for (int i = 0; i < 4; ++i) {
    for (int k = i + 1; k < 4; ++k) {
      if (c[i] == c[k]) throw std::invalid_argument("path endpoints must be distinct");
    }
  }
  Engine eng(t, f, {}, budget, opt);
  std::vector<int> ids;
  PathPairResult r;
  r.status = eng.run({{static_cast<int>(c[0]), static_cast<int>(c[1])},
                      {static_cast<int>(c[2]), static_cast<int>(c[3])}},
                     ids);
  r.stats = eng.stats();
  if (r.status == SearchStatus::kFound) {
    auto all = to_vertices(ids);
    auto split = std::find(all.begin(), all.end(), v1) + 1;
    r.first.vertices.assign(all.begin(), split);
    r.second.vertices.assign(split, all.end());
    if (opt.self_check) {
      self_check(verify_path_pair(t, f, r.first.vertices, r.second.vertices, u1, v1, u2, v2));
    }
  }
  return r;
}

CycleResult ham_cycle_search(const Topology& t, const FaultSet& f, std::optional<Edge> through,
                             const SearchBudget& budget, const SearchOptions& opt) {
  CycleResult r;
  if (through) {
    if (!t.adjacent(through->u, through->v)) {
      throw std::invalid_argument("through edge is not an edge");
    }
    if (f.contains(*through)) throw std::invalid_argument("through edge is faulty");
    SearchOptions inner = opt;
    inner.self_check = false;
    PathResult p = ham_path(t, f, through->v, through->u, budget, inner);
    r.status = p.status;
    r.stats = p.stats;
    if (p.status == SearchStatus::kFound) r.cycle.vertices = std::move(p.path.vertices);
  } else {
    const Vertex root(0);
    SearchBudget left = budget;
    const auto begin = std::chrono::steady_clock::now();
    r.status = SearchStatus::kNotFound;
    for (Vertex x : t.neighbors(root)) {
      if (f.contains(root, x)) continue;
      SearchOptions inner = opt;
      inner.self_check = false;
      PathResult p = ham_path(t, f, x, root, left, inner);
      r.stats += p.stats;
      if (p.status == SearchStatus::kFound) {
        r.status = SearchStatus::kFound;
        r.cycle.vertices = std::move(p.path.vertices);
        break;
      }
      if (p.status == SearchStatus::kBudgetExceeded || p.stats.nodes >= left.node_limit) {
        r.status = SearchStatus::kBudgetExceeded;
        break;
      }
      left.node_limit -= p.stats.nodes;
      left.time_limit = budget.time_limit - std::chrono::duration_cast<std::chrono::milliseconds>(
                                                std::chrono::steady_clock::now() - begin);
    }
  }
  if (r.status == SearchStatus::kFound && opt.self_check) {
    self_check(verify_ham_cycle(t, f, r.cycle, through));
  }
  return r;
}

}  // namespace bhc
