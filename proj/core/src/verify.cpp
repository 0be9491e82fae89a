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

#include "bhcycle/verify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace bhc {

namespace {

std::string vstr(const Topology& t, Vertex v) { return v.to_string(t.dimension()); }

// Adjacency from the digit rule, not from the topology's tables.
const char* step_problem(const Topology& t, const FaultSet& f, Vertex a, Vertex b) {
  if (!t.contains(a) || !t.contains(b) || !classify_pair(t.dimension(), a, b)) return "not an edge";
  return f.contains(a, b) ? "faulty edge used" : nullptr;
}

bool usable(const Topology& t, const FaultSet& f, Vertex a, Vertex b) {
  return step_problem(t, f, a, b) == nullptr;
}

Verdict check_walk(const Topology& t, const FaultSet& f, std::span<const Vertex> seq,
                   std::vector<std::uint8_t>& seen, const char* what) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const Vertex v = seq[i];
    if (!t.contains(v)) return Verdict::fail(std::string(what) + ": vertex out of range");
    if (seen[v.code()]) return Verdict::fail(std::string(what) + ": repeated vertex " + vstr(t, v));
    seen[v.code()] = 1;
    if (i == 0) continue;
    if (const char* why = step_problem(t, f, seq[i - 1], v)) {
      return Verdict::fail(std::string(what) + ": step " + vstr(t, seq[i - 1]) + "-" + vstr(t, v) +
                           ": " + why);
    }
  }
  return Verdict::pass();
}

}  // namespace

Verdict verify_ham_cycle(const Topology& t, const FaultSet& f, std::span<const Vertex> cycle,
                         std::optional<Edge> through) {
  if (cycle.size() != t.vertex_count()) {
    return Verdict::fail("cycle has " + std::to_string(cycle.size()) + " vertices, expected " +
                         std::to_string(t.vertex_count()));
  }
  std::vector<std::uint8_t> seen(t.vertex_count(), 0);
  if (auto v = check_walk(t, f, cycle, seen, "cycle"); !v) return v;
  if (const char* why = step_problem(t, f, cycle.back(), cycle.front())) {
    return Verdict::fail(std::string("closing edge: ") + why);
  }
  if (through) {
    bool hit = false;
    for (std::size_t i = 0; i < cycle.size() && !hit; ++i) {
      const Edge e = Edge::make(cycle[i], cycle[(i + 1) % cycle.size()]);
      hit = e == Edge::make(through->u, through->v);
    }
    if (!hit) return Verdict::fail("cycle misses the prescribed edge");
  }
  return Verdict::pass();
}

Verdict verify_ham_path(const Topology& t, const FaultSet& f, std::span<const Vertex> path,
                        Vertex s, Vertex dest, std::span<const Vertex> excluded) {
  std::vector<std::uint8_t> seen(t.vertex_count(), 0);
  std::size_t live = t.vertex_count();
  for (Vertex x : excluded) {
    if (t.contains(x) && !seen[x.code()]) seen[x.code()] = 1, --live;
  }
  if (path.size() != live) {
    return Verdict::fail("path has " + std::to_string(path.size()) + " vertices, expected " +
                         std::to_string(live));
  }
  if (path.front() != s || path.back() != dest) return Verdict::fail("path endpoints differ");
  return check_walk(t, f, path, seen, "path");
}

Verdict verify_path_pair(const Topology& t, const FaultSet& f, std::span<const Vertex> first,
                         std::span<const Vertex> second, Vertex u1, Vertex v1, Vertex u2,
                         Vertex v2) {
  if (first.empty() || second.empty()) return Verdict::fail("empty path");
  if (first.front() != u1 || first.back() != v1) {
    return Verdict::fail("first path endpoints differ");
  }
  if (second.front() != u2 || second.back() != v2) {
    return Verdict::fail("second path endpoints differ");
  }
  if (first.size() + second.size() != t.vertex_count()) return Verdict::fail("paths do not cover");
  std::vector<std::uint8_t> seen(t.vertex_count(), 0);
  if (auto v = check_walk(t, f, first, seen, "first path"); !v) return v;
  return check_walk(t, f, second, seen, "second path");
}

Verdict verify_defs_equivalent(int n) {
  const Topology a = Topology::build_def1(n);
  const Topology b = Topology::build_def2(n);
  auto ea = a.edges();
  auto eb = b.edges();
  if (ea.size() != eb.size()) return Verdict::fail("edge counts differ");
  const std::size_t expect = static_cast<std::size_t>(n) << (2 * n);
  if (ea.size() != expect) return Verdict::fail("edge count is not n*4^n");
  std::set<std::pair<std::uint32_t, std::uint32_t>> sa;
  for (const Edge& e : ea) {
    auto d = classify_pair(n, e.u, e.v);
    if (!d || *d != e.dim) return Verdict::fail("edge violates the digit rule");
    sa.insert({e.u.code(), e.v.code()});
  }
  for (const Edge& e : eb) {
    if (!sa.count({e.u.code(), e.v.code()})) return Verdict::fail("edge sets differ");
  }
  return Verdict::pass();
}

namespace {

using Adj = std::vector<std::vector<int>>;

// Colour refinement on the disjoint union so colours are comparable.
std::vector<int> refine(const Adj& a, const Adj& b) {
  const int na = static_cast<int>(a.size());
  const int total = na + static_cast<int>(b.size());
  auto nbr = [&](int x) -> const std::vector<int>& { return x < na ? a[x] : b[x - na]; };
  auto off = [&](int x) { return x < na ? 0 : na; };
  std::vector<int> col(total);
  for (int x = 0; x < total; ++x) col[x] = static_cast<int>(nbr(x).size());
  for (int round = 0; round < total; ++round) {
    std::map<std::pair<int, std::vector<int>>, int> ids;
    std::vector<int> next(total);
    for (int x = 0; x < total; ++x) {
      std::vector<int> sig;
      for (int y : nbr(x)) sig.push_back(col[y + off(x)]);
      std::sort(sig.begin(), sig.end());
      auto [it, fresh] = ids.try_emplace({col[x], std::move(sig)}, static_cast<int>(ids.size()));
      next[x] = it->second;
    }
    const bool stable = std::set<int>(col.begin(), col.end()).size() ==
                        std::set<int>(next.begin(), next.end()).size();
    col = std::move(next);
    if (stable) break;
  }
  return col;
}

class Matcher {
 public:
  Matcher(const Adj& a, const Adj& b) : a_(a), b_(b), n_(static_cast<int>(a.size())) {
    auto col = refine(a, b);
    ca_.assign(col.begin(), col.begin() + n_);
    cb_.assign(col.begin() + n_, col.end());
    ma_.assign(n_, std::vector<char>(n_, 0));
    mb_.assign(n_, std::vector<char>(n_, 0));
    for (int x = 0; x < n_; ++x) {
      for (int y : a[x]) ma_[x][y] = 1;
      for (int y : b[x]) mb_[x][y] = 1;
    }
    std::vector<char> seen(n_, 0);
    for (int r = 0; r < n_; ++r) {
      if (seen[r]) continue;
      seen[r] = 1;
      const std::size_t begin = order_.size();
      order_.push_back(r);
      for (std::size_t q = begin; q < order_.size(); ++q) {
        for (int y : a[order_[q]]) {
          if (!seen[y]) seen[y] = 1, order_.push_back(y);
        }
      }
    }
  }

  bool run() {
    auto sa = ca_, sb = cb_;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
    img_.assign(n_, -1);
    used_.assign(n_, 0);
    return extend(0);
  }

 private:
  bool extend(int k) {
    if (k == n_) return true;
    if (++steps_ > 50'000'000) return false;
    const int x = order_[k];
    for (int c = 0; c < n_; ++c) {
      if (used_[c] || cb_[c] != ca_[x]) continue;
      bool ok = true;
      for (int i = 0; i < k && ok; ++i) {
        const int y = order_[i];
        ok = ma_[x][y] == mb_[c][img_[y]];
      }
      if (!ok) continue;
      img_[x] = c;
      used_[c] = 1;
      if (extend(k + 1)) return true;
      used_[c] = 0;
      img_[x] = -1;
    }
    return false;
  }

  const Adj& a_;
  const Adj& b_;
  int n_;
  std::vector<int> ca_, cb_, order_, img_;
  std::vector<char> used_;
  std::vector<std::vector<char>> ma_, mb_;
  std::uint64_t steps_ = 0;
};

}  // namespace

bool graphs_isomorphic(const Adj& a, const Adj& b) {
  if (a.size() != b.size()) return false;
  std::size_t ea = 0, eb = 0;
  for (const auto& l : a) ea += l.size();
  for (const auto& l : b) eb += l.size();
  if (ea != eb) return false;
  return Matcher(a, b).run();
}

Verdict verify_partition(const Topology& t, const Partition& p) {
  const int n = t.dimension();
  const int j = p.split_dimension();
  const std::uint32_t nv = static_cast<std::uint32_t>(t.vertex_count());
  const std::size_t part = nv / 4;

  // Components of t minus the j-edges, found by BFS.
  std::vector<int> comp(nv, -1);
  std::vector<std::vector<Vertex>> comps;
  for (std::uint32_t r = 0; r < nv; ++r) {
    if (comp[r] >= 0) continue;
    std::vector<Vertex> members{Vertex(r)};
    comp[r] = static_cast<int>(comps.size());
    for (std::size_t q = 0; q < members.size(); ++q) {
      for (Vertex y : t.neighbors(members[q])) {
        if (classify_pair(n, members[q], y) == j || comp[y.code()] >= 0) continue;
        comp[y.code()] = comp[r];
        members.push_back(y);
      }
    }
    comps.push_back(std::move(members));
  }
  if (comps.size() != 4) {
    return Verdict::fail("expected 4 components, found " + std::to_string(comps.size()));
  }

  const Topology ref = Topology::build_def1(n - 1);
  Adj ref_adj(ref.vertex_count());
  for (const Edge& e : ref.edges()) {
    ref_adj[e.u.code()].push_back(static_cast<int>(e.v.code()));
    ref_adj[e.v.code()].push_back(static_cast<int>(e.u.code()));
  }

  std::set<int> labels;
  for (const auto& members : comps) {
    if (members.size() != part) return Verdict::fail("component has wrong size");
    const int lab = p.label(members.front());
    labels.insert(lab);
    std::vector<Vertex> sorted = members;
    std::sort(sorted.begin(), sorted.end());
    auto claimed = p.component(lab);
    if (!std::equal(sorted.begin(), sorted.end(), claimed.begin(), claimed.end())) {
      return Verdict::fail("component listing disagrees with BFS");
    }
    std::map<std::uint32_t, int> index;
    for (std::size_t i = 0; i < sorted.size(); ++i) index[sorted[i].code()] = static_cast<int>(i);
    Adj adj(part);
    std::vector<std::uint8_t> hit(part, 0);
    for (Vertex x : sorted) {
      if (p.label(x) != lab) return Verdict::fail("label not constant on a component");
      const Vertex lx = p.to_local(x);
      if (!ref.contains(lx) || hit[lx.code()]) {
        return Verdict::fail("vertex map is not a bijection");
      }
      hit[lx.code()] = 1;
      if (p.to_global(lab, lx) != x) return Verdict::fail("vertex maps are not inverse");
      for (Vertex y : t.neighbors(x)) {
        if (classify_pair(n, x, y) == j) continue;
        adj[index[x.code()]].push_back(index[y.code()]);
        if (!classify_pair(n - 1, lx, p.to_local(y))) {
          return Verdict::fail("vertex map breaks an edge");
        }
      }
    }
    if (!graphs_isomorphic(adj, ref_adj)) {
      return Verdict::fail("component is not isomorphic to BH_{n-1}");
    }
  }
  if (labels.size() != 4) return Verdict::fail("labels are not distinct");

  std::size_t crossing = 0;
  for (const Edge& e : t.edges()) {
    if (classify_pair(n, e.u, e.v) != j) continue;
    ++crossing;
    const Vertex w = e.u.color() == Color::kWhite ? e.u : e.v;
    const Vertex b = e.other(w);
    if (((p.label(w) + 1) & 3) != p.label(b)) {
      return Verdict::fail("cross edge does not join consecutive labels");
    }
  }
  if (crossing != nv || p.cross_edges().size() != crossing) {
    return Verdict::fail("cross edge count mismatch");
  }
  for (const auto& c : p.cross_edges()) {
    if (classify_pair(n, c.edge.u, c.edge.v) != j) {
      return Verdict::fail("listed cross edge has wrong dimension");
    }
  }
  return Verdict::pass();
}

const char* to_string(Absence a) {
  switch (a) {
    case Absence::kPresent: return "PRESENT";
    case Absence::kConclusiveAbsent: return "CONCLUSIVE_ABSENT";
    case Absence::kStructuralAbsent: return "STRUCTURAL_ABSENT";
    case Absence::kInconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

namespace {

// Plain DFS over cycles starting at vertex 0; no pruning beyond visited marks.
struct Enumerator {
  const Topology& t;
  const FaultSet& f;
  std::uint64_t limit;
  std::uint64_t nodes = 0;
  bool aborted = false;
  std::vector<std::uint8_t> seen;
  std::vector<Vertex> walk;

  bool dfs(Vertex x) {
    if (walk.size() == t.vertex_count()) return usable(t, f, x, walk.front());
    if (++nodes > limit) return aborted = true, false;
    for (Vertex y : t.neighbors(x)) {
      if (seen[y.code()] || f.contains(x, y)) continue;
      seen[y.code()] = 1;
      walk.push_back(y);
      if (dfs(y)) return true;
      walk.pop_back();
      seen[y.code()] = 0;
      if (aborted) return false;
    }
    return false;
  }
};

}  // namespace

AbsenceReport certify_no_ham_cycle(const Topology& t, const FaultSet& f, std::uint64_t node_limit) {
  AbsenceReport r;
  const std::uint32_t nv = static_cast<std::uint32_t>(t.vertex_count());
  auto run_enumerator = [&](std::uint64_t limit) {
    Enumerator e{t, f, limit, 0, false, std::vector<std::uint8_t>(nv, 0), {Vertex(0)}};
    e.seen[0] = 1;
    const bool found = e.dfs(Vertex(0));
    r.nodes += e.nodes;
    if (found) {
      r.verdict = Absence::kPresent;
      r.witness = e.walk;
    }
    return found ? 1 : (e.aborted ? -1 : 0);
  };
  for (std::uint32_t c = 0; c < nv; ++c) {
    int live = 0;
    for (Vertex y : t.neighbors(Vertex(c))) live += !f.contains(Vertex(c), y);
    if (live < 2) {
      r.verdict = Absence::kConclusiveAbsent;
      return r;
    }
  }
  if (t.dimension() <= 2) {
    const int outcome = run_enumerator(node_limit);
    if (outcome == 0) r.verdict = Absence::kConclusiveAbsent;
    return r;
  }
  // Two same-coloured vertices sharing their only two live neighbours force
  // a 4-cycle into any Hamiltonian cycle.
  std::map<std::pair<std::uint32_t, std::uint32_t>, Vertex> seen;
  for (std::uint32_t c = 0; c < nv; ++c) {
    std::vector<Vertex> live;
    for (Vertex y : t.neighbors(Vertex(c))) {
      if (!f.contains(Vertex(c), y)) live.push_back(y);
    }
    if (live.size() != 2) continue;
    std::sort(live.begin(), live.end());
    auto key = std::make_pair(live[0].code(), live[1].code());
    auto [it, fresh] = seen.try_emplace(key, Vertex(c));
    if (!fresh) {
      r.verdict = Absence::kStructuralAbsent;
      r.witness = {it->second, Vertex(c), live[0], live[1]};
      return r;
    }
  }
  run_enumerator(node_limit);
  return r;
}

}  // namespace bhc
