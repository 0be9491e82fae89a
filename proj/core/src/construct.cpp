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

#include "bhcycle/construct.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <tuple>

#include "bhcycle/verify.hpp"

namespace bhc {

namespace {

using VSeq = std::vector<Vertex>;

// A candidate at a choice point did not work out; the caller moves on.
struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr std::string_view kVocabulary[] = {
    "base",         "1.1.1.1",      "1.1.1.2.1",    "1.1.1.2.2(a)", "1.1.1.2.2(b)",
    "1.1.1.3",      "1.1.2",        "1.2.1",        "1.2.2",        "1.2.3",
    "1.3.1.1",      "1.3.1.2",      "1.3.1.3",      "1.3.2.1",      "1.3.2.1(a)",
    "1.3.2.1(b)",   "1.3.2.2",      "2.1",          "2.2.1.1",      "2.2.1.2.1(a)",
    "2.2.1.2.1(b)", "2.2.1.2.2",    "2.2.2",
};

// ---------------------------------------------------------------------------
// Branch selection.

struct Decision {
  std::string family;
  int j = 0;
  std::vector<std::pair<int, int>> rings;  // (label of component 0, direction)
  std::optional<Vertex> w;                 // 1-rescuable vertex, where relevant
  int heavy = -1;                          // label of the overloaded component
};

int excl_rescue(const Topology& t, const FaultSet& f, Vertex v, int j) {
  return rescuability(t, f, v, j);
}

std::array<int, 4> label_counts(const Partition& p, const FaultSet& f) {
  std::array<int, 4> c{};
  for (const Edge& e : f.edges()) {
    if (p.label(e.u) == p.label(e.v)) ++c[p.label(e.u)];
  }
  return c;
}

Decision decide(const Topology& t, const FaultSet& f, const Edge& e) {
  const int n = t.dimension();
  const SplitChoice sc = select_split_dimension(t, f);
  Decision d;
  bool crossing = false;
  if (sc.kind == SplitChoice::Kind::kCase1) {
    d.j = sc.m;
    crossing = t.edge_dimension(e.u, e.v) == sc.m;
  } else {
    d.j = t.edge_dimension(e.u, e.v) != sc.m ? sc.m : *sc.m_prime;
  }
  auto part = shared_partition(n, d.j);
  const auto cnt = label_counts(*part, f);
  auto find = [&](int value) {
    for (int l = 0; l < 4; ++l) {
      if (cnt[l] == value) return l;
    }
    return -1;
  };
  auto white_dir = [](Vertex v) { return v.color() == Color::kWhite ? 1 : -1; };
  auto rel = [](int label, int base, int dir) { return (dir * (label - base)) & 3; };

  if (!crossing) {
    const int L = part->label(e.u);
    const int h7 = find(4 * n - 7);
    const int h8 = find(4 * n - 8);
    if (h7 >= 0) {
      d.heavy = h7;
      int low = t.degree();
      for (Vertex v : part->component(h7)) {
        const int r = excl_rescue(t, f, v, d.j);
        if (r < low) low = r, d.w = v;
      }
      const int r = rel(h7, L, 1);
      if (low >= 2) {
        d.w.reset();
        if (r == 0) d.family = "1.3.1.1", d.rings = {{L, 1}, {L, -1}};
        if (r == 1) d.family = "1.3.1.2", d.rings = {{L, 1}};
        if (r == 3) d.family = "1.3.1.2", d.rings = {{L, -1}};
        if (r == 2) d.family = "1.3.1.3", d.rings = {{L, 1}, {L, -1}};
      } else {
        if (r == 0) d.family = "1.3.2.1", d.rings = {{L, white_dir(*d.w)}};
        if (r == 1) d.family = "1.3.2.2", d.rings = {{L, 1}};
        if (r == 3) d.family = "1.3.2.2", d.rings = {{L, -1}};
        if (r == 2) d.family = "1.3.2.2", d.rings = {{L, 1}, {L, -1}};
      }
    } else if (h8 >= 0) {
      d.heavy = h8;
      const int r = rel(h8, L, 1);
      if (r == 0) d.family = "1.2.1", d.rings = {{L, 1}, {L, -1}};
      if (r == 1) d.family = "1.2.2", d.rings = {{L, 1}};
      if (r == 3) d.family = "1.2.2", d.rings = {{L, -1}};
      if (r == 2) d.family = "1.2.3", d.rings = {{L, 1}, {L, -1}};
    } else {
      for (std::uint32_t c = 0; c < t.vertex_count() && !d.w; ++c) {
        if (excl_rescue(t, f, Vertex(c), d.j) == 1) d.w = Vertex(c);
      }
      if (d.w) {
        const int dir = white_dir(*d.w);
        const int r = rel(part->label(*d.w), L, dir);
        d.rings = {{L, dir}};
        d.family = r == 0 ? "1.1.1.1" : r == 2 ? "1.1.1.3" : "1.1.1.2";
      } else {
        d.family = "1.1.2";
        for (int dir : {1, -1}) {
          if (cnt[(L + dir) & 3] <= 2 * n - 4) d.rings.push_back({L, dir});
        }
      }
    }
  } else {
    const Vertex wv = e.u.color() == Color::kWhite ? e.u : e.v;
    const Vertex bv = e.other(wv);
    const std::pair<int, int> a{part->label(wv), 1}, b{part->label(bv), -1};
    const int h8 = find(4 * n - 8);
    d.heavy = h8;
    if (h8 < 0) {
      d.family = "2.1";
      for (auto ring : {a, b}) {
        if (cnt[ring.first] <= 2 * n - 4) d.rings.push_back(ring);
      }
    } else if (h8 == a.first || h8 == b.first) {
      const auto ring = h8 == a.first ? a : b;
      const Vertex u = h8 == a.first ? wv : bv;
      int fu = 0;
      for (Vertex x : t.neighbors(u)) {
        if (t.edge_dimension(u, x) != d.j && f.contains(u, x)) ++fu;
      }
      d.family = fu >= 2 ? "2.2.1.1" : "2.2.1.2";
      d.rings = {ring};
    } else {
      d.family = "2.2.2";
      d.rings = {((a.first + 2) & 3) == h8 ? a : b};
    }
  }
  if (d.rings.empty()) throw std::logic_error("no ring orientation satisfies " + d.family);
  return d;
}

// Deterministic padding up to 4n-5 with a matching of fault-free edges whose
// endpoints carry no faults and avoid e.
FaultSet pad_faults(const Topology& t, const FaultSet& f, const Edge& e, int& added) {
  const std::size_t target = static_cast<std::size_t>(4 * t.dimension() - 5);
  FaultSet out = f;
  added = 0;
  if (out.size() >= target) return out;
  std::vector<std::uint32_t> order(t.edges().size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(0x6a09e667f3bcc908ull + static_cast<std::uint64_t>(t.dimension()));
  std::shuffle(order.begin(), order.end(), rng);
  for (std::uint32_t i : order) {
    const Edge& g = t.edges()[i];
    if (g.touches(e.u) || g.touches(e.v)) continue;
    if (out.fault_degree(g.u) || out.fault_degree(g.v)) continue;
    out.insert(g);
    ++added;
    if (out.size() == target) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cycle helpers.

std::optional<std::size_t> index_of(const VSeq& c, Vertex x) {
  auto it = std::find(c.begin(), c.end(), x);
  if (it == c.end()) return std::nullopt;
  return static_cast<std::size_t>(it - c.begin());
}

bool on_cycle(const VSeq& c, Vertex a, Vertex b) {
  auto i = index_of(c, a);
  if (!i) return false;
  const std::size_t n = c.size();
  return c[(*i + 1) % n] == b || c[(*i + n - 1) % n] == b;
}

bool on_cycle(const VSeq& c, const Edge& e) { return on_cycle(c, e.u, e.v); }

std::array<Vertex, 2> cycle_neighbors(const VSeq& c, Vertex a) {
  const std::size_t i = *index_of(c, a);
  const std::size_t n = c.size();
  return {c[(i + n - 1) % n], c[(i + 1) % n]};
}

// Hamiltonian path from `from` to `to` along c, dropping the edge between them.
VSeq path_between(const VSeq& c, Vertex from, Vertex to) {
  auto i = index_of(c, from);
  if (!i) throw Failure("vertex not on cycle");
  const std::size_t n = c.size();
  VSeq out;
  out.reserve(n);
  if (c[(*i + 1) % n] == to) {
    for (std::size_t k = 0; k < n; ++k) out.push_back(c[(*i + n - k) % n]);
  } else if (c[(*i + n - 1) % n] == to) {
    for (std::size_t k = 0; k < n; ++k) out.push_back(c[(*i + k) % n]);
  } else {
    throw Failure("cut edge is not on the cycle");
  }
  return out;
}

// Removes the given cycle edges and returns the remaining paths.
std::vector<VSeq> cut_cycle(const VSeq& c, const std::vector<Edge>& cuts) {
  const std::size_t n = c.size();
  auto is_cut = [&](std::size_t k) {
    const Edge g = Edge::make(c[k], c[(k + 1) % n]);
    return std::find(cuts.begin(), cuts.end(), g) != cuts.end();
  };
  std::size_t start = n;
  std::size_t found = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (is_cut(k)) {
      ++found;
      if (start == n) start = (k + 1) % n;
    }
  }
  if (found != cuts.size()) throw Failure("cut edge is not on the cycle");
  std::vector<VSeq> pieces(1);
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t k = (start + s) % n;
    pieces.back().push_back(c[k]);
    if (is_cut(k) && s + 1 < n) pieces.emplace_back();
  }
  return pieces;
}

}  // namespace

// ---------------------------------------------------------------------------
// Solver.

namespace {

class Solver {
 public:
  explicit Solver(const ConstructOptions& opt) : opt(opt) {}

  VSeq solve(const Topology& t, const FaultSet& f, const Edge& e, int level);

  const ConstructOptions& opt;
  CaseTrace trace;
  ConstructStats stats;
  bool budget_hit = false;
};

enum class Fill { kNone, kLaced, kPaired, kPunctured };

// Pieces already fixed inside components, plus how the remaining
// components are filled. Components use ring numbering.
struct RingPlan {
  std::vector<VSeq> pieces;
  std::vector<Edge> links;                        // joins inside a component
  std::array<std::vector<Vertex>, 4> exits;       // open ends of pieces, toward p+1
  std::array<std::vector<Vertex>, 4> entries;     // open ends of pieces, from p-1
  std::array<Fill, 4> fill{};
  std::array<std::vector<Vertex>, 4> free_exits;  // pre-bound ends of the filled part
  std::array<std::vector<Vertex>, 4> free_entries;
  std::array<std::optional<Vertex>, 4> removed;   // for kPunctured
  std::optional<Edge> require;                    // cross edge that must be a link
};

struct Slot {
  std::optional<Vertex> v;
  bool free_part = false;
};

struct Link {
  Vertex x, y;  // x exits component p, y enters p+1
  int xs = 0, ys = 0;
};

class Frame {
 public:
  Frame(Solver& s, const Topology& t, FaultSet f, const Edge& e, int level, std::size_t entry)
      : s_(s), t_(t), f_(std::move(f)), e_(e), n_(t.dimension()), level_(level), entry_(entry) {}

  VSeq run(const Decision& d);

 private:
  // ring numbering
  int lab(Vertex v) const { return part_->label(v); }
  int pc(Vertex v) const { return (dir_ * (lab(v) - base_)) & 3; }
  int act(int p) const { return (base_ + dir_ * p) & 3; }
  bool pw(Vertex v) const { return (v.color() == Color::kWhite) == (dir_ == 1); }
  std::pair<Vertex, Vertex> orient(const Edge& g) const {
    return pw(g.u) ? std::pair{g.u, g.v} : std::pair{g.v, g.u};
  }
  void set_ring(int base, int dir);
  void label(const char* l) { s_.trace.entries[entry_].label = l; }

  std::vector<Vertex> ffx(Vertex v) const;
  std::vector<Vertex> cnb(Vertex v) const;  // component neighbors
  std::vector<Vertex> ffcnb(Vertex v) const;
  bool faulty(Vertex a, Vertex b) const { return f_.contains(a, b); }
  std::vector<Edge> comp_faults(int p) const;
  std::vector<std::pair<Vertex, Vertex>> cut_candidates(const VSeq& c) const;
  const FaultSet& local_faults(int p);

  template <class T>
  void cap(std::vector<T>& v) const {
    if (v.size() > static_cast<std::size_t>(s_.opt.max_alternatives)) {
      v.resize(static_cast<std::size_t>(s_.opt.max_alternatives));
    }
  }

  template <class Fn>
  std::optional<VSeq> attempt(Fn&& fn) {
    const std::size_t mark = s_.trace.entries.size();
    try {
      return fn();
    } catch (const Failure&) {
      s_.trace.entries.resize(mark);
      ++s_.stats.rejected_alternatives;
      return std::nullopt;
    }
  }

  VSeq induct(int p, const std::vector<Edge>& add, const std::vector<Edge>& remove,
              const Edge& must);
  VSeq laced_path(int p, Vertex a, Vertex b);
  std::pair<VSeq, VSeq> paired_paths(int p, Vertex u1, Vertex v1, Vertex u2, Vertex v2);
  VSeq punctured_path(int p, Vertex removed, Vertex a, Vertex b);
  VSeq assemble(const RingPlan& plan);
  void miss() { ++s_.stats.precondition_misses; }

  // Case 1
  VSeq s1111(Vertex w);
  VSeq s1112(Vertex w);
  VSeq s1112_mirror(Vertex w);
  VSeq s1113(Vertex w);
  VSeq s112();
  VSeq s121();
  VSeq s122();
  VSeq s123();
  VSeq s1311();
  VSeq s1312();
  VSeq s1313();
  VSeq s1321(Vertex w);
  VSeq s1322(Vertex w);
  VSeq finish122(const VSeq& p1, Vertex a1, Vertex b1);
  VSeq finish123(const VSeq& p2, Vertex a2, Vertex b2);
  VSeq single_ring_from(const VSeq& c0);
  std::vector<Edge> heavy_candidates(int p) const;
  std::vector<std::pair<Edge, Edge>> disjoint_pairs(const std::vector<Edge>& es) const;
  // Case 2
  VSeq s21();
  VSeq s221();
  VSeq s222();

  Solver& s_;
  const Topology& t_;
  FaultSet f_;
  Edge e_;
  int n_;
  int level_;
  std::size_t entry_;
  std::shared_ptr<const Partition> part_;
  int j_ = 0;
  int base_ = 0;
  int dir_ = 1;
  Vertex u_, v_;  // crossing edge: u_ in ring component 0, v_ in 1
  std::array<std::optional<FaultSet>, 4> local_;
  std::map<std::string, std::pair<std::optional<VSeq>, std::vector<TraceEntry>>> memo_;
};

void Frame::set_ring(int base, int dir) {
  base_ = base;
  dir_ = dir;
  TraceEntry& te = s_.trace.entries[entry_];
  te.orientation = dir;
  te.component_faults = {};
  te.cross_faults = 0;
  for (const Edge& g : f_.edges()) {
    if (lab(g.u) == lab(g.v)) {
      ++te.component_faults[pc(g.u)];
    } else {
      ++te.cross_faults;
    }
  }
}

std::vector<Vertex> Frame::ffx(Vertex v) const {
  std::vector<Vertex> out;
  for (Vertex x : t_.neighbors_in_dimension(v, j_)) {
    if (!faulty(v, x)) out.push_back(x);
  }
  return out;
}

std::vector<Vertex> Frame::cnb(Vertex v) const {
  std::vector<Vertex> out;
  auto nb = t_.neighbors(v);
  for (int s = 0; s < t_.degree(); ++s) {
    if (t_.neighbor_dimension(v, s) != j_) out.push_back(nb[s]);
  }
  return out;
}

std::vector<Vertex> Frame::ffcnb(Vertex v) const {
  std::vector<Vertex> out;
  for (Vertex x : cnb(v)) {
    if (!faulty(v, x)) out.push_back(x);
  }
  return out;
}

std::vector<Edge> Frame::comp_faults(int p) const {
  std::vector<Edge> out;
  const int l = act(p);
  for (const Edge& g : f_.edges()) {
    if (lab(g.u) == l && lab(g.v) == l) out.push_back(g);
  }
  return out;
}

// Cycle edges other than e whose ends both have a fault-free cross edge,
// oriented (ring-white, ring-black).
std::vector<std::pair<Vertex, Vertex>> Frame::cut_candidates(const VSeq& c) const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const Edge g = Edge::make(c[k], c[(k + 1) % c.size()]);
    if (g == e_) continue;
    auto [x, y] = orient(g);
    if (!ffx(x).empty() && !ffx(y).empty()) out.push_back({x, y});
  }
  cap(out);
  return out;
}

const FaultSet& Frame::local_faults(int p) {
  const int l = act(p);
  if (!local_[l]) {
    FaultSet lf(n_ - 1);
    for (const Edge& g : comp_faults(p)) {
      lf.insert(Edge::make(part_->to_local(g.u), part_->to_local(g.v)));
    }
    local_[l] = std::move(lf);
  }
  return *local_[l];
}

VSeq Frame::induct(int p, const std::vector<Edge>& add, const std::vector<Edge>& remove,
                   const Edge& must) {
  const int l = act(p);
  auto loc = [&](const Edge& g) {
    if (lab(g.u) != l || lab(g.v) != l) throw std::logic_error("edge outside component");
    return Edge::make(part_->to_local(g.u), part_->to_local(g.v));
  };
  FaultSet lf = local_faults(p);
  for (const Edge& g : remove) lf.erase(loc(g));
  for (const Edge& g : add) lf.insert(loc(g));
  const Edge le = loc(must);

  std::string key = std::to_string(l) + "|" + std::to_string(le.key());
  for (const Edge& g : lf.edges()) key += "," + std::to_string(g.key());
  if (auto it = memo_.find(key); it != memo_.end()) {
    auto& [res, entries] = it->second;
    if (!res) throw Failure("sub-instance failed earlier");
    s_.trace.entries.insert(s_.trace.entries.end(), entries.begin(), entries.end());
    return *res;
  }

  const Topology& lt = part_->component_topology();
  const bool ok = !lf.contains(le) && lf.size() <= static_cast<std::size_t>(4 * (n_ - 1) - 5) &&
                  is_conditional(lt, lf);
  const std::size_t mark = s_.trace.entries.size();
  if (!ok) {
    miss();
    memo_[key] = {std::nullopt, {}};
    throw Failure("sub-instance outside the inductive hypothesis");
  }
  VSeq local;
  try {
    local = s_.solve(lt, lf, le, level_ + 1);
  } catch (const Failure&) {
    memo_[key] = {std::nullopt, {}};
    throw;
  }
  VSeq out;
  out.reserve(local.size());
  for (Vertex x : local) out.push_back(part_->to_global(l, x));
  memo_[key] = {out, std::vector<TraceEntry>(s_.trace.entries.begin() + static_cast<long>(mark),
                                             s_.trace.entries.end())};
  return out;
}

VSeq Frame::laced_path(int p, Vertex a, Vertex b) {
  const FaultSet& lf = local_faults(p);
  if (lf.size() > static_cast<std::size_t>(2 * (n_ - 1) - 2)) miss();
  const int l = act(p);
  auto r = ham_path(part_->component_topology(), lf, part_->to_local(a), part_->to_local(b),
                    s_.opt.budget);
  ++s_.stats.path_searches;
  s_.stats.search_nodes += r.stats.nodes;
  if (r.status == SearchStatus::kBudgetExceeded) s_.budget_hit = true;
  if (r.status != SearchStatus::kFound) throw Failure("laceability path not found");
  VSeq out;
  for (Vertex x : r.path.vertices) out.push_back(part_->to_global(l, x));
  return out;
}

std::pair<VSeq, VSeq> Frame::paired_paths(int p, Vertex u1, Vertex v1, Vertex u2, Vertex v2) {
  const FaultSet& lf = local_faults(p);
  if (!lf.empty() || u1.color() != u2.color() || v1.color() != v2.color()) miss();
  const int l = act(p);
  auto L = [&](Vertex x) { return part_->to_local(x); };
  auto r = two_spanning_paths(part_->component_topology(), lf, L(u1), L(v1), L(u2), L(v2),
                              s_.opt.budget);
  ++s_.stats.path_searches;
  s_.stats.search_nodes += r.stats.nodes;
  if (r.status == SearchStatus::kBudgetExceeded) s_.budget_hit = true;
  if (r.status != SearchStatus::kFound) throw Failure("two spanning paths not found");
  std::pair<VSeq, VSeq> out;
  for (Vertex x : r.first.vertices) out.first.push_back(part_->to_global(l, x));
  for (Vertex x : r.second.vertices) out.second.push_back(part_->to_global(l, x));
  return out;
}

VSeq Frame::punctured_path(int p, Vertex removed, Vertex a, Vertex b) {
  const FaultSet& lf = local_faults(p);
  if (!lf.empty() || a.color() != b.color() || removed.color() == a.color()) miss();
  const int l = act(p);
  auto r = hyper_ham_path(part_->component_topology(), lf, part_->to_local(removed),
                          part_->to_local(a), part_->to_local(b), s_.opt.budget);
  ++s_.stats.path_searches;
  s_.stats.search_nodes += r.stats.nodes;
  if (r.status == SearchStatus::kBudgetExceeded) s_.budget_hit = true;
  if (r.status != SearchStatus::kFound) throw Failure("hyper path not found");
  VSeq out;
  for (Vertex x : r.path.vertices) out.push_back(part_->to_global(l, x));
  return out;
}

// ---------------------------------------------------------------------------
// Ring assembly: choose cross links between consecutive components, fill
// the free components with oracle paths and stitch.

int need_exits(Fill f) {
  return f == Fill::kLaced ? 1 : (f == Fill::kPaired || f == Fill::kPunctured) ? 2 : 0;
}
int need_entries(Fill f) { return f == Fill::kLaced ? 1 : f == Fill::kPaired ? 2 : 0; }

VSeq Frame::assemble(const RingPlan& plan) {
  const std::size_t N = t_.vertex_count();
  std::vector<char> taken(N, 0);
  for (const VSeq& pc_ : plan.pieces) {
    for (Vertex x : pc_) taken[x.code()] = 1;
  }
  for (const auto& r : plan.removed) {
    if (r) taken[r->code()] = 1;
  }
  for (int p = 0; p < 4; ++p) {
    for (const auto* l :
         {&plan.exits[p], &plan.entries[p], &plan.free_exits[p], &plan.free_entries[p]}) {
      for (Vertex x : *l) taken[x.code()] = 1;
    }
  }

  std::array<std::vector<Slot>, 4> xs, ys;
  for (int p = 0; p < 4; ++p) {
    for (Vertex v : plan.exits[p]) xs[p].push_back({v, false});
    for (Vertex v : plan.free_exits[p]) xs[p].push_back({v, true});
    while (static_cast<int>(xs[p].size()) <
           static_cast<int>(plan.exits[p].size()) + need_exits(plan.fill[p])) {
      xs[p].push_back({std::nullopt, true});
    }
    for (Vertex v : plan.entries[p]) ys[p].push_back({v, false});
    for (Vertex v : plan.free_entries[p]) ys[p].push_back({v, true});
    while (static_cast<int>(ys[p].size()) <
           static_cast<int>(plan.entries[p].size()) + need_entries(plan.fill[p])) {
      ys[p].push_back({std::nullopt, true});
    }
  }

  const std::size_t per_boundary =
      static_cast<std::size_t>(std::max(4, s_.opt.max_alternatives / 4));
  std::array<std::vector<std::vector<Link>>, 4> options;
  for (int p = 0; p < 4; ++p) {
    const int q = (p + 1) & 3;
    const auto& X = xs[p];
    const auto& Y = ys[q];
    if (X.size() != Y.size()) throw std::logic_error("unbalanced ring boundary");
    auto eligible = [&](Vertex v, int comp) { return pc(v) == comp && !taken[v.code()]; };
    std::vector<Link> cur;
    std::vector<char> yused(Y.size(), 0);
    std::vector<Vertex> used_v;
    auto is_used = [&](Vertex v) {
      return std::find(used_v.begin(), used_v.end(), v) != used_v.end();
    };
    auto& out = options[p];
    std::function<void(std::size_t, Vertex)> rec = [&](std::size_t i, Vertex min_free) {
      if (out.size() >= per_boundary) return;
      if (i == X.size()) {
        out.push_back(cur);
        return;
      }
      auto try_y = [&](Vertex x, Vertex y, Vertex next_min) {
        bool free_tried = false;
        for (std::size_t k = 0; k < Y.size(); ++k) {
          if (yused[k]) continue;
          if (Y[k].v) {
            if (*Y[k].v != y) continue;
          } else {
            if (free_tried || !eligible(y, q) || is_used(y)) continue;
            free_tried = true;
          }
          yused[k] = 1;
          cur.push_back({x, y, static_cast<int>(i), static_cast<int>(k)});
          const bool fresh_x = !X[i].v;
          const bool fresh_y = !Y[k].v;
          if (fresh_x) used_v.push_back(x);
          if (fresh_y) used_v.push_back(y);
          rec(i + 1, next_min);
          if (fresh_y) used_v.pop_back();
          if (fresh_x) used_v.pop_back();
          cur.pop_back();
          yused[k] = 0;
          if (Y[k].v) break;
        }
      };
      if (X[i].v) {
        for (Vertex y : ffx(*X[i].v)) try_y(*X[i].v, y, min_free);
      } else {
        for (Vertex x : part_->component(act(p))) {
          if (x < min_free || !pw(x) || !eligible(x, p) || is_used(x)) continue;
          for (Vertex y : ffx(x)) try_y(x, y, Vertex(x.code() + 1));
          if (out.size() >= per_boundary) return;
        }
      }
    };
    rec(0, Vertex(0));
    if (plan.require && pc(plan.require->u) != pc(plan.require->v)) {
      const Vertex rx = pc(plan.require->u) == p ? plan.require->u : plan.require->v;
      if (pc(rx) == p && pc(plan.require->other(rx)) == q) {
        std::erase_if(out, [&](const std::vector<Link>& o) {
          return std::none_of(o.begin(), o.end(), [&](const Link& k) {
            return Edge::make(k.x, k.y) == *plan.require;
          });
        });
      }
    }
    if (out.empty()) throw Failure("no cross links at a ring boundary");
  }

  std::map<std::string, std::optional<std::vector<VSeq>>> oracle;
  auto fill_comp = [&](int p, const std::vector<Vertex>& in, const std::vector<Vertex>& outv,
                       int pairing) -> std::vector<VSeq> {
    std::string key = std::to_string(p) + ":" + std::to_string(pairing);
    for (Vertex v : in) key += "," + std::to_string(v.code());
    key += "|";
    for (Vertex v : outv) key += "," + std::to_string(v.code());
    if (auto it = oracle.find(key); it != oracle.end()) {
      if (!it->second) throw Failure("filler failed earlier");
      return *it->second;
    }
    try {
      std::vector<VSeq> r;
      switch (plan.fill[p]) {
        case Fill::kLaced:
          r.push_back(laced_path(p, in[0], outv[0]));
          break;
        case Fill::kPaired: {
          auto pr = pairing == 0 ? paired_paths(p, in[0], outv[0], in[1], outv[1])
                                 : paired_paths(p, in[0], outv[1], in[1], outv[0]);
          r.push_back(std::move(pr.first));
          r.push_back(std::move(pr.second));
          break;
        }
        case Fill::kPunctured:
          r.push_back(punctured_path(p, *plan.removed[p], outv[0], outv[1]));
          break;
        case Fill::kNone:
          break;
      }
      oracle[key] = r;
      return r;
    } catch (const Failure&) {
      oracle[key] = std::nullopt;
      throw;
    }
  };

  const std::size_t combo_cap = static_cast<std::size_t>(s_.opt.max_alternatives) * 8;
  // Index tuples by increasing sum, so every boundary gets varied early.
  std::vector<std::array<std::size_t, 4>> order;
  const std::size_t max_sum = options[0].size() + options[1].size() + options[2].size() +
                              options[3].size() - 4;
  for (std::size_t sum = 0; sum <= max_sum && order.size() < combo_cap; ++sum) {
    for (std::size_t i0 = 0; i0 < options[0].size() && i0 <= sum; ++i0) {
      for (std::size_t i1 = 0; i1 < options[1].size() && i0 + i1 <= sum; ++i1) {
        for (std::size_t i2 = 0; i2 < options[2].size() && i0 + i1 + i2 <= sum; ++i2) {
          const std::size_t i3 = sum - i0 - i1 - i2;
          if (i3 < options[3].size() && order.size() < combo_cap) order.push_back({i0, i1, i2, i3});
        }
      }
    }
  }
  for (const auto& idx : order) {
    const std::array<const std::vector<Link>*, 4> chosen{
        &options[0][idx[0]], &options[1][idx[1]], &options[2][idx[2]], &options[3][idx[3]]};
    std::vector<Edge> links = plan.links;
    for (const auto* o : chosen) {
      for (const Link& k : *o) links.push_back(Edge::make(k.x, k.y));
    }
    if (plan.require &&
        std::find(links.begin(), links.end(), *plan.require) == links.end()) {
      continue;
    }
    std::array<std::vector<Vertex>, 4> fin, fout;
    for (int p = 0; p < 4; ++p) {
      for (const Link& k : *chosen[p]) {
        if (xs[p][k.xs].free_part) fout[p].push_back(k.x);
      }
      for (const Link& k : *chosen[(p + 3) & 3]) {
        if (ys[p][k.ys].free_part) fin[p].push_back(k.y);
      }
    }
    std::array<int, 4> npair{1, 1, 1, 1};
    for (int p = 0; p < 4; ++p) {
      if (plan.fill[p] == Fill::kPaired) npair[p] = 2;
    }
    for (int mask = 0; mask < 16; ++mask) {
      bool skip = false;
      for (int p = 0; p < 4; ++p) {
        if (((mask >> p) & 1) >= npair[p]) skip = true;
      }
      if (skip) continue;
      std::vector<std::pair<Vertex, Vertex>> ends;
      for (const VSeq& pc_ : plan.pieces) ends.push_back({pc_.front(), pc_.back()});
      for (int p = 0; p < 4; ++p) {
        const int b = (mask >> p) & 1;
        switch (plan.fill[p]) {
          case Fill::kLaced:
            ends.push_back({fin[p][0], fout[p][0]});
            break;
          case Fill::kPaired:
            ends.push_back({fin[p][0], fout[p][b]});
            ends.push_back({fin[p][1], fout[p][1 - b]});
            break;
          case Fill::kPunctured:
            ends.push_back({fout[p][0], fout[p][1]});
            break;
          case Fill::kNone:
            break;
        }
      }
      if (!forms_single_cycle(ends, links)) {
        continue;
      }
      try {
        std::vector<Path> segs;
        for (const VSeq& pc_ : plan.pieces) segs.push_back(Path{pc_});
        for (int p = 0; p < 4; ++p) {
          for (VSeq& sq : fill_comp(p, fin[p], fout[p], (mask >> p) & 1)) {
            segs.push_back(Path{std::move(sq)});
          }
        }
        HamCycle hc = stitch(t_, f_, segs, links);
        return std::move(hc.vertices);
      } catch (const Failure&) {
        ++s_.stats.rejected_alternatives;
      } catch (const StitchError&) {
        ++s_.stats.rejected_alternatives;
      }
    }
  }
  throw Failure("no ring assembly closes");
}

}  // namespace

// ---------------------------------------------------------------------------
// Case 1: e inside a component.

namespace {

RingPlan ring(std::initializer_list<int> laced) {
  RingPlan s;
  for (int p : laced) s.fill[p] = Fill::kLaced;
  return s;
}

RingPlan double_ring(std::initializer_list<int> paired) {
  RingPlan s;
  for (int p : paired) s.fill[p] = Fill::kPaired;
  return s;
}

VSeq Frame::s1111(Vertex w) {
  label("1.1.1.1");
  std::vector<Vertex> seen;
  for (const RescueEdge& r : rescue_candidates(t_, f_, *part_, w)) {
    if (!r.link_faulty || std::find(seen.begin(), seen.end(), r.v) != seen.end()) continue;
    seen.push_back(r.v);
    const Vertex b0 = r.v;
    if (auto c = attempt([&] {
          const Edge wb = Edge::make(w, b0);
          VSeq c0 = induct(0, {}, {wb}, e_);
          RingPlan s = ring({1, 2, 3});
          s.pieces = {path_between(c0, b0, w)};
          s.exits[0] = {w};
          s.entries[0] = {b0};
          return assemble(s);
        })) {
      return *c;
    }
  }
  throw Failure("1.1.1.1 exhausted");
}

VSeq Frame::s1112(Vertex w) {
  const Vertex ew = pw(e_.u) ? e_.u : e_.v;
  const Vertex eb = e_.other(ew);
  std::vector<std::pair<Vertex, Vertex>> X;  // (a0, b1)
  for (Vertex b1 : cnb(w)) {
    if (!faulty(w, b1)) continue;
    for (Vertex a0 : ffx(b1)) X.push_back({a0, b1});
  }
  std::map<Vertex, VSeq> p1_memo;
  auto p1_for = [&](Vertex b1) -> const VSeq& {
    auto it = p1_memo.find(b1);
    if (it != p1_memo.end()) return it->second;
    const Edge wb = Edge::make(w, b1);
    VSeq c1 = induct(1, {}, {wb}, wb);
    return p1_memo[b1] = path_between(c1, b1, w);
  };
  auto spec_for = [&](Vertex b1, VSeq p0, Vertex a0, Vertex entry0) {
    RingPlan s = ring({2, 3});
    s.pieces = {std::move(p0), p1_for(b1)};
    s.exits[0] = {a0};
    s.entries[0] = {entry0};
    s.entries[1] = {b1};
    s.exits[1] = {w};
    return assemble(s);
  };
  bool only_u = !X.empty();
  for (auto& [a0, b1] : X) only_u = only_u && a0 == ew;
  if (only_u) {
    label("1.1.1.2.1");
    for (auto& [a0, b1] : X) {
      if (auto c = attempt([&] {
            VSeq c0 = induct(0, {}, {}, e_);
            auto nb = cycle_neighbors(c0, ew);
            const Vertex b0 = nb[0] == eb ? nb[1] : nb[0];
            return spec_for(b1, path_between(c0, b0, ew), ew, b0);
          })) {
        return *c;
      }
    }
    throw Failure("1.1.1.2.1 exhausted");
  }
  const bool small = f_.count_in_dimension(j_) <= 3;
  label(small ? "1.1.1.2.2(a)" : "1.1.1.2.2(b)");
  for (auto& [a0, b1] : X) {
    if (a0 == ew) continue;
    if (small) {
      if (auto c = attempt([&] {
            VSeq c0 = induct(0, {}, {}, e_);
            for (Vertex y : cycle_neighbors(c0, a0)) {
              if (ffx(y).empty()) continue;
              if (auto r = attempt([&] { return spec_for(b1, path_between(c0, y, a0), a0, y); })) {
                return *r;
              }
            }
            throw Failure("no cut at a0");
          })) {
        return *c;
      }
      continue;
    }
    for (Vertex z : {ew, eb}) {
      const Vertex other = e_.other(z);
      for (Vertex alpha : ffcnb(z)) {
        if (alpha == other) continue;
        std::vector<Edge> T;
        for (Vertex x : cnb(z)) {
          if (x != other && x != alpha && !faulty(z, x)) T.push_back(Edge::make(z, x));
        }
        for (const RescueEdge& r : rescue_candidates(t_, f_, *part_, a0)) {
          const Edge ab = Edge::make(a0, r.v);
          if (std::find(T.begin(), T.end(), ab) != T.end() || ab.touches(z)) continue;
          if (auto c = attempt([&] {
                VSeq c0 = induct(0, T, {ab}, ab);
                if (!on_cycle(c0, e_)) throw Failure("e not forced");
                return spec_for(b1, path_between(c0, r.v, a0), a0, r.v);
              })) {
            return *c;
          }
        }
      }
    }
  }
  throw Failure("1.1.1.2.2 exhausted");
}

// w in ring component 3: the mirror of the component-1 recipe.
VSeq Frame::s1112_mirror(Vertex w) {
  const Vertex ew = pw(e_.u) ? e_.u : e_.v;
  const Vertex eb = e_.other(ew);
  std::vector<Vertex> B3;
  for (Vertex b : cnb(w)) {
    if (faulty(w, b) && !ffx(b).empty()) B3.push_back(b);
  }
  const std::vector<Vertex> Z = ffx(w);
  bool only_eb = true;
  for (Vertex z : Z) only_eb = only_eb && z == eb;
  const bool small = f_.count_in_dimension(j_) <= 3;
  label(only_eb ? "1.1.1.2.1" : small ? "1.1.1.2.2(a)" : "1.1.1.2.2(b)");

  for (Vertex b3 : B3) {
    std::optional<VSeq> p3;
    auto spec_for = [&](VSeq p0, Vertex entry0, Vertex exit0) {
      if (!p3) {
        const Edge wb = Edge::make(w, b3);
        p3 = path_between(induct(3, {}, {wb}, wb), b3, w);
      }
      RingPlan s = ring({1, 2});
      s.pieces = {std::move(p0), *p3};
      s.entries[0] = {entry0};
      s.exits[0] = {exit0};
      s.entries[3] = {b3};
      s.exits[3] = {w};
      return assemble(s);
    };
    if (only_eb) {
      if (auto c = attempt([&] {
            VSeq c0 = induct(0, {}, {}, e_);
            auto nb = cycle_neighbors(c0, eb);
            const Vertex a0 = nb[0] == ew ? nb[1] : nb[0];
            if (!ffx(a0).empty()) return spec_for(path_between(c0, eb, a0), eb, a0);
            for (Vertex alpha : ffcnb(eb)) {
              if (alpha == ew || ffx(alpha).empty()) continue;
              std::vector<Edge> T;
              for (Vertex x : cnb(eb)) {
                if (x != ew && x != alpha && !faulty(eb, x)) T.push_back(Edge::make(eb, x));
              }
              if (auto r = attempt([&] {
                    VSeq cf = induct(0, T, {}, e_);
                    return spec_for(path_between(cf, eb, alpha), eb, alpha);
                  })) {
                return *r;
              }
            }
            throw Failure("no exit next to the prescribed edge");
          })) {
        return *c;
      }
      continue;
    }
    for (Vertex z : Z) {
      if (z == eb) continue;
      if (small) {
        if (auto c = attempt([&] {
              VSeq c0 = induct(0, {}, {}, e_);
              for (Vertex y : cycle_neighbors(c0, z)) {
                if (ffx(y).empty()) continue;
                if (auto r = attempt([&] { return spec_for(path_between(c0, z, y), z, y); })) {
                  return *r;
                }
              }
              throw Failure("no cut at z");
            })) {
          return *c;
        }
        continue;
      }
      for (Vertex ep : {ew, eb}) {
        const Vertex other = e_.other(ep);
        for (Vertex alpha : ffcnb(ep)) {
          if (alpha == other) continue;
          std::vector<Edge> T;
          for (Vertex x : cnb(ep)) {
            if (x != other && x != alpha && !faulty(ep, x)) T.push_back(Edge::make(ep, x));
          }
          for (Vertex a0 : cnb(z)) {
            const Edge za = Edge::make(z, a0);
            if (ffx(a0).empty() || za.touches(ep)) continue;
            if (auto c = attempt([&] {
                  VSeq c0 = induct(0, T, {za}, za);
                  if (!on_cycle(c0, e_)) throw Failure("e not forced");
                  return spec_for(path_between(c0, z, a0), z, a0);
                })) {
              return *c;
            }
          }
        }
      }
    }
  }
  throw Failure("1.1.1.2 (mirrored) exhausted");
}

VSeq Frame::s1113(Vertex w) {
  label("1.1.1.3");
  std::optional<VSeq> c0;
  for (const RescueEdge& r : rescue_candidates(t_, f_, *part_, w)) {
    if (!r.link_faulty) continue;
    const Vertex b2 = r.v;
    if (auto c = attempt([&] {
          const Edge wb = Edge::make(w, b2);
          VSeq p2 = path_between(induct(2, {}, {wb}, wb), b2, w);
          if (!c0) c0 = induct(0, {}, {}, e_);
          for (auto [x, y] : cut_candidates(*c0)) {
            if (auto res = attempt([&] {
                  RingPlan s = ring({1, 3});
                  s.pieces = {path_between(*c0, y, x), p2};
                  s.exits[0] = {x};
                  s.entries[0] = {y};
                  s.exits[2] = {w};
                  s.entries[2] = {b2};
                  return assemble(s);
                })) {
              return *res;
            }
          }
          throw Failure("no cut in component 0");
        })) {
      return *c;
    }
  }
  throw Failure("1.1.1.3 exhausted");
}

VSeq Frame::s112() {
  label("1.1.2");
  VSeq c0 = induct(0, {}, {}, e_);
  std::size_t tries = 0;
  const std::size_t limit = static_cast<std::size_t>(s_.opt.max_alternatives);
  for (auto [x, y] : cut_candidates(c0)) {
    for (Vertex a3 : ffx(y)) {
      for (const RescueEdge& r3 : rescue_candidates(t_, f_, *part_, a3)) {
        const Vertex b3 = r3.v, a2 = r3.w;
        for (const RescueEdge& r2 : rescue_candidates(t_, f_, *part_, a2)) {
          if (++tries > limit) throw Failure("1.1.2 alternatives exhausted");
          const Vertex b2 = r2.v;
          if (auto c = attempt([&] {
                const Edge g3 = Edge::make(a3, b3), g2 = Edge::make(a2, b2);
                VSeq p3 = path_between(induct(3, {}, {g3}, g3), b3, a3);
                VSeq p2 = path_between(induct(2, {}, {g2}, g2), b2, a2);
                RingPlan s = ring({1});
                s.pieces = {path_between(c0, y, x), p2, p3};
                s.exits[0] = {x};
                s.entries[0] = {y};
                s.exits[2] = {a2};
                s.entries[2] = {b2};
                s.exits[3] = {a3};
                s.entries[3] = {b3};
                return assemble(s);
              })) {
            return *c;
          }
        }
      }
    }
  }
  throw Failure("1.1.2 exhausted");
}

// Faulty edges of ring component p that may be added back as virtual edges.
std::vector<Edge> Frame::heavy_candidates(int p) const {
  const int l = act(p);
  std::optional<Vertex> w1;
  for (Vertex v : part_->component(l)) {
    if (excl_rescue(t_, f_, v, j_) == 1) w1 = v;
  }
  std::vector<Edge> out;
  for (const Edge& g : comp_faults(p)) {
    if (ffx(g.u).empty() || ffx(g.v).empty()) continue;
    if (w1 && !g.touches(*w1)) continue;
    out.push_back(g);
  }
  cap(out);
  return out;
}

VSeq Frame::single_ring_from(const VSeq& c0) {
  for (auto [x, y] : cut_candidates(c0)) {
    if (auto c = attempt([&] {
          RingPlan s = ring({1, 2, 3});
          s.pieces = {path_between(c0, y, x)};
          s.exits[0] = {x};
          s.entries[0] = {y};
          return assemble(s);
        })) {
      return *c;
    }
  }
  throw Failure("no cut in component 0");
}

VSeq Frame::s121() {
  label("1.2.1");
  for (const Edge& g : heavy_candidates(0)) {
    if (auto c = attempt([&] {
          VSeq c0 = induct(0, {}, {g}, e_);
          if (on_cycle(c0, g)) {
            auto [a0, b0] = orient(g);
            RingPlan s = ring({1, 2, 3});
            s.pieces = {path_between(c0, b0, a0)};
            s.exits[0] = {a0};
            s.entries[0] = {b0};
            return assemble(s);
          }
          return single_ring_from(c0);
        })) {
      return *c;
    }
  }
  throw Failure("1.2.1 exhausted");
}

VSeq Frame::finish122(const VSeq& p1, Vertex a1, Vertex b1) {
  for (Vertex a0 : ffx(b1)) {
    std::vector<std::pair<Vertex, Vertex>> choices;  // (b0, d0)
    const std::vector<Vertex> nb = ffcnb(a0);
    for (Vertex b0 : nb) {
      if (ffx(b0).empty()) continue;
      if (e_.touches(a0)) {
        const Vertex d0 = e_.other(a0);
        if (b0 != d0) choices.push_back({b0, d0});
      } else {
        for (Vertex d0 : nb) {
          if (d0 != b0) choices.push_back({b0, d0});
        }
      }
    }
    cap(choices);
    for (auto [b0, d0] : choices) {
      if (auto c = attempt([&] {
            std::vector<Edge> T;
            for (Vertex x : cnb(a0)) {
              if (x != b0 && x != d0 && !faulty(a0, x)) T.push_back(Edge::make(a0, x));
            }
            VSeq c0 = induct(0, T, {}, e_);
            RingPlan s = ring({2, 3});
            s.pieces = {path_between(c0, b0, a0), p1};
            s.exits[0] = {a0};
            s.entries[0] = {b0};
            s.entries[1] = {b1};
            s.exits[1] = {a1};
            return assemble(s);
          })) {
        return *c;
      }
    }
  }
  throw Failure("no way into component 1");
}

VSeq Frame::s122() {
  label("1.2.2");
  for (const Edge& g : heavy_candidates(1)) {
    if (auto c = attempt([&] {
          auto [a1, b1] = orient(g);
          VSeq p1 = path_between(induct(1, {}, {g}, g), b1, a1);
          return finish122(p1, a1, b1);
        })) {
      return *c;
    }
  }
  throw Failure("1.2.2 exhausted");
}

VSeq Frame::finish123(const VSeq& p2, Vertex a2, Vertex b2) {
  VSeq c0 = induct(0, {}, {}, e_);
  for (auto [x, y] : cut_candidates(c0)) {
    if (auto c = attempt([&] {
          RingPlan s = ring({1, 3});
          s.pieces = {path_between(c0, y, x), p2};
          s.exits[0] = {x};
          s.entries[0] = {y};
          s.exits[2] = {a2};
          s.entries[2] = {b2};
          return assemble(s);
        })) {
      return *c;
    }
  }
  throw Failure("no cut in component 0");
}

VSeq Frame::s123() {
  label("1.2.3");
  for (const Edge& g : heavy_candidates(2)) {
    if (auto c = attempt([&] {
          auto [a2, b2] = orient(g);
          VSeq p2 = path_between(induct(2, {}, {g}, g), b2, a2);
          return finish123(p2, a2, b2);
        })) {
      return *c;
    }
  }
  throw Failure("1.2.3 exhausted");
}

std::vector<std::pair<Edge, Edge>> Frame::disjoint_pairs(const std::vector<Edge>& es) const {
  std::vector<std::pair<Edge, Edge>> out;
  for (std::size_t a = 0; a < es.size(); ++a) {
    for (std::size_t b = a + 1; b < es.size(); ++b) {
      if (es[a].touches(es[b].u) || es[a].touches(es[b].v)) continue;
      out.push_back({es[a], es[b]});
    }
  }
  cap(out);
  return out;
}

VSeq Frame::s1311() {
  label("1.3.1.1");
  for (auto [g, h] : disjoint_pairs(heavy_candidates(0))) {
    if (auto c = attempt([&] {
          VSeq c0 = induct(0, {}, {g, h}, e_);
          const bool ug = on_cycle(c0, g), uh = on_cycle(c0, h);
          if (ug && uh) {
            auto [a0, b0] = orient(g);
            auto [c0w, d0] = orient(h);
            RingPlan s = double_ring({1, 2, 3});
            s.pieces = cut_cycle(c0, {g, h});
            s.exits[0] = {a0, c0w};
            s.entries[0] = {b0, d0};
            return assemble(s);
          }
          if (ug || uh) {
            auto [a0, b0] = orient(ug ? g : h);
            RingPlan s = ring({1, 2, 3});
            s.pieces = {path_between(c0, b0, a0)};
            s.exits[0] = {a0};
            s.entries[0] = {b0};
            return assemble(s);
          }
          return single_ring_from(c0);
        })) {
      return *c;
    }
  }
  throw Failure("1.3.1.1 exhausted");
}

VSeq Frame::s1312() {
  label("1.3.1.2");
  for (auto [g0, h0] : disjoint_pairs(heavy_candidates(1))) {
    for (auto [g, h] : {std::pair{g0, h0}, std::pair{h0, g0}}) {
      if (auto c = attempt([&] {
            auto [a1, b1] = orient(g);
            auto [c1, d1] = orient(h);
            VSeq cyc1 = induct(1, {}, {g, h}, g);
            if (!on_cycle(cyc1, h)) return finish122(path_between(cyc1, b1, a1), a1, b1);
            std::vector<VSeq> pieces1 = cut_cycle(cyc1, {g, h});
            std::optional<Vertex> x0;
            for (Vertex x : part_->component(act(0))) {
              if (ffx(x).empty()) x0 = x;
            }
            for (Vertex a0 : ffx(b1)) {
              for (Vertex c0v : ffx(d1)) {
                if (a0 == c0v) continue;
                std::vector<Edge> Fp;
                if (x0) {
                  for (Vertex s : {a0, c0v}) {
                    if (t_.adjacent(s, *x0) && t_.edge_dimension(s, *x0) != j_ &&
                        !faulty(s, *x0)) {
                      Fp.push_back(Edge::make(s, *x0));
                    }
                  }
                } else {
                  const Vertex cc = e_.touches(c0v) ? a0 : c0v;
                  if (!e_.touches(cc)) {
                    for (Vertex al : ffcnb(cc)) {
                      if (ffx(al).size() < 2) Fp.push_back(Edge::make(cc, al));
                    }
                  }
                }
                if (auto r = attempt([&] {
                      VSeq cyc0 = induct(0, Fp, {}, e_);
                      for (Vertex b0 : cycle_neighbors(cyc0, a0)) {
                        for (Vertex d0 : cycle_neighbors(cyc0, c0v)) {
                          const Edge ga = Edge::make(a0, b0), gc = Edge::make(c0v, d0);
                          if (b0 == d0 || ga == gc || ga == e_ || gc == e_) continue;
                          if (ffx(b0).empty() || ffx(d0).empty()) continue;
                          if (auto z = attempt([&] {
                                RingPlan s = double_ring({2, 3});
                                s.pieces = cut_cycle(cyc0, {ga, gc});
                                for (VSeq& q : pieces1) s.pieces.push_back(q);
                                s.exits[0] = {a0, c0v};
                                s.entries[0] = {b0, d0};
                                s.entries[1] = {b1, d1};
                                s.exits[1] = {a1, c1};
                                return assemble(s);
                              })) {
                            return *z;
                          }
                        }
                      }
                      throw Failure("no double cut in component 0");
                    })) {
                  return *r;
                }
              }
            }
            throw Failure("no entry pair for component 1");
          })) {
        return *c;
      }
    }
  }
  throw Failure("1.3.1.2 exhausted");
}

VSeq Frame::s1313() {
  label("1.3.1.3");
  for (auto [g0, h0] : disjoint_pairs(heavy_candidates(2))) {
    for (auto [g, h] : {std::pair{g0, h0}, std::pair{h0, g0}}) {
      if (auto c = attempt([&] {
            auto [a2, b2] = orient(g);
            auto [c2, d2] = orient(h);
            VSeq cyc2 = induct(2, {}, {g, h}, g);
            if (!on_cycle(cyc2, h)) return finish123(path_between(cyc2, b2, a2), a2, b2);
            std::vector<VSeq> pieces2 = cut_cycle(cyc2, {g, h});
            VSeq cyc0 = induct(0, {}, {}, e_);
            auto cuts = cut_candidates(cyc0);
            for (std::size_t i = 0; i < cuts.size(); ++i) {
              for (std::size_t k = i + 1; k < cuts.size(); ++k) {
                auto [x, y] = cuts[i];
                auto [x2, y2] = cuts[k];
                if (x == x2 || y == y2) continue;
                if (auto z = attempt([&] {
                      RingPlan s = double_ring({1, 3});
                      s.pieces = cut_cycle(cyc0, {Edge::make(x, y), Edge::make(x2, y2)});
                      for (VSeq& q : pieces2) s.pieces.push_back(q);
                      s.exits[0] = {x, x2};
                      s.entries[0] = {y, y2};
                      s.exits[2] = {a2, c2};
                      s.entries[2] = {b2, d2};
                      return assemble(s);
                    })) {
                  return *z;
                }
              }
            }
            throw Failure("no double cut in component 0");
          })) {
        return *c;
      }
    }
  }
  throw Failure("1.3.1.3 exhausted");
}

VSeq Frame::s1321(Vertex w) {
  label("1.3.2.1");
  const std::vector<Vertex> beta_list = ffcnb(w);
  if (beta_list.size() != 1) throw std::logic_error("1.3.2.1 needs a 1-rescuable vertex");
  const Vertex beta = beta_list[0];
  std::vector<Vertex> bs;
  for (Vertex b : cnb(w)) {
    if (faulty(w, b) && !ffx(b).empty()) bs.push_back(b);
  }
  for (std::size_t i = 0; i < bs.size(); ++i) {
    for (std::size_t k = i + 1; k < bs.size(); ++k) {
      const Edge gb = Edge::make(w, bs[i]), gd = Edge::make(w, bs[k]);
      if (auto c = attempt([&] {
            VSeq c0 = induct(0, {}, {gb, gd}, e_);
            const bool ub = on_cycle(c0, gb), ud = on_cycle(c0, gd);
            if (!(ub && ud)) {
              label("1.3.2.1");
              if (ub || ud) {
                const Vertex x = ub ? bs[i] : bs[k];
                RingPlan s = ring({1, 2, 3});
                s.pieces = {path_between(c0, x, w)};
                s.exits[0] = {w};
                s.entries[0] = {x};
                return assemble(s);
              }
              return single_ring_from(c0);
            }
            const std::vector<Vertex> wx = ffx(w);
            if (wx.size() == 2) {
              label("1.3.2.1(a)");
              RingPlan s = double_ring({1, 2, 3});
              s.pieces = cut_cycle(c0, {gb, gd});
              s.exits[0] = {w, w};
              s.entries[0] = {bs[i], bs[k]};
              return assemble(s);
            }
            label("1.3.2.1(b)");
            const Vertex b1 = wx.at(0);
            for (Vertex gamma : cycle_neighbors(c0, beta)) {
              const Edge bg = Edge::make(beta, gamma);
              const std::vector<Vertex> gx = ffx(gamma);
              if (bg == e_ || gx.empty()) continue;
              bool other = false;
              for (Vertex d1 : gx) other = other || d1 != b1;
              if (auto r = attempt([&] {
                    RingPlan s = other ? double_ring({1, 2, 3}) : double_ring({2, 3});
                    s.pieces = cut_cycle(c0, {gb, gd, bg});
                    s.links = {Edge::make(beta, w)};
                    s.exits[0] = {w, gamma};
                    s.entries[0] = {bs[i], bs[k]};
                    if (!other) {
                      s.pieces.push_back({b1});
                      s.entries[1] = {b1, b1};
                      s.fill[1] = Fill::kPunctured;
                      s.removed[1] = b1;
                    }
                    return assemble(s);
                  })) {
                return *r;
              }
            }
            throw Failure("no rewiring at beta");
          })) {
        return *c;
      }
    }
  }
  throw Failure("1.3.2.1 exhausted");
}

VSeq Frame::s1322(Vertex w) {
  label("1.3.2.2");
  const int h = pc(w);
  const std::vector<Vertex> beta_list = ffcnb(w);
  if (beta_list.size() != 1) throw std::logic_error("1.3.2.2 needs a 1-rescuable vertex");
  const Edge wbeta = Edge::make(w, beta_list[0]);
  std::vector<Vertex> bs;
  for (Vertex b : cnb(w)) {
    if (faulty(w, b) && !ffx(b).empty()) bs.push_back(b);
  }
  for (std::size_t i = 0; i < bs.size(); ++i) {
    for (std::size_t k = i + 1; k < bs.size(); ++k) {
      const Edge gb = Edge::make(w, bs[i]), gd = Edge::make(w, bs[k]);
      if (auto c = attempt([&] {
            VSeq ch = induct(h, {}, {gb, gd}, wbeta);
            const Edge used = on_cycle(ch, gb) ? gb : gd;
            auto [a, b] = orient(used);
            VSeq piece = path_between(ch, b, a);
            return h == 1 ? finish122(piece, a, b) : finish123(piece, a, b);
          })) {
        return *c;
      }
    }
  }
  throw Failure("1.3.2.2 exhausted");
}

// ---------------------------------------------------------------------------
// Case 2: e = (u, v) joins ring components 0 and 1.

VSeq Frame::s21() {
  label("2.1");
  std::size_t tries = 0;
  const std::size_t limit = static_cast<std::size_t>(s_.opt.max_alternatives);
  for (const RescueEdge& r1 : rescue_candidates(t_, f_, *part_, v_)) {
    const Vertex a1 = r1.v, b2 = r1.w;
    for (const RescueEdge& r2 : rescue_candidates(t_, f_, *part_, b2)) {
      const Vertex a2 = r2.v, b3 = r2.w;
      for (const RescueEdge& r3 : rescue_candidates(t_, f_, *part_, b3)) {
        if (++tries > limit) throw Failure("2.1 alternatives exhausted");
        const Vertex a3 = r3.v;
        if (auto c = attempt([&] {
              const Edge g1 = Edge::make(v_, a1), g2 = Edge::make(a2, b2),
                         g3 = Edge::make(a3, b3);
              VSeq p1 = path_between(induct(1, {}, {g1}, g1), v_, a1);
              VSeq p2 = path_between(induct(2, {}, {g2}, g2), b2, a2);
              VSeq p3 = path_between(induct(3, {}, {g3}, g3), b3, a3);
              RingPlan s = ring({0});
              s.pieces = {p1, p2, p3};
              s.free_exits[0] = {u_};
              s.entries[1] = {v_};
              s.exits[1] = {a1};
              s.entries[2] = {b2};
              s.exits[2] = {a2};
              s.entries[3] = {b3};
              s.exits[3] = {a3};
              s.require = e_;
              return assemble(s);
            })) {
          return *c;
        }
      }
    }
  }
  throw Failure("2.1 exhausted");
}

VSeq Frame::s221() {
  std::vector<Vertex> fu;
  for (Vertex x : cnb(u_)) {
    if (faulty(u_, x)) fu.push_back(x);
  }
  auto single = [&](const VSeq& c0, Vertex b0) {
    RingPlan s = ring({1, 2, 3});
    s.pieces = {path_between(c0, b0, u_)};
    s.exits[0] = {u_};
    s.entries[0] = {b0};
    s.free_entries[1] = {v_};
    s.require = e_;
    return assemble(s);
  };
  if (fu.size() >= 2) {
    label("2.2.1.1");
    for (Vertex b0 : fu) {
      if (ffx(b0).empty()) continue;
      if (auto c = attempt([&] {
            const Edge g = Edge::make(u_, b0);
            return single(induct(0, {}, {g}, g), b0);
          })) {
        return *c;
      }
    }
    throw Failure("2.2.1.1 exhausted");
  }

  std::vector<Edge> away;
  for (const Edge& g : comp_faults(0)) {
    if (!g.touches(u_)) away.push_back(g);
  }
  auto pairs = disjoint_pairs(away);
  for (auto [g0, h0] : pairs) {
    auto [x0, y0] = orient(g0);
    auto [c0a, d0a] = orient(h0);
    bool only_v = true;
    for (Vertex m : ffx(x0)) only_v = only_v && m == v_;
    for (Vertex m : ffx(c0a)) only_v = only_v && m == v_;
    if (!only_v) {
      // (c0, d0): the edge whose white end reaches component 1 away from v.
      bool h_good = false;
      for (Vertex m : ffx(c0a)) h_good = h_good || m != v_;
      const Edge cd = h_good ? h0 : g0;
      auto [c0, d0] = orient(cd);
      if (!ffx(d0).empty()) {
        label("2.2.1.2.1(a)");
        for (Vertex b0 : cnb(u_)) {
          if (b0 == d0 || ffx(b0).empty()) continue;
          const Edge ub = Edge::make(u_, b0);
          if (auto c = attempt([&] {
                VSeq cyc = induct(0, {}, {cd, ub}, ub);
                if (!on_cycle(cyc, cd)) return single(cyc, b0);
                RingPlan s = double_ring({1, 2, 3});
                s.pieces = cut_cycle(cyc, {ub, cd});
                s.exits[0] = {u_, c0};
                s.entries[0] = {b0, d0};
                s.free_entries[1] = {v_};
                s.require = e_;
                return assemble(s);
              })) {
            return *c;
          }
        }
      } else {
        label("2.2.1.2.1(b)");
        if (auto c = attempt([&] {
              VSeq cyc = induct(0, {}, {cd}, cd);
              for (Vertex alpha : ffcnb(d0)) {
                if (on_cycle(cyc, d0, alpha)) continue;
                for (Vertex gamma : cycle_neighbors(cyc, alpha)) {
                  for (Vertex beta : cycle_neighbors(cyc, u_)) {
                    const Edge ga = Edge::make(gamma, alpha), bu = Edge::make(beta, u_);
                    if (beta == gamma || ga == bu || ga == cd || bu == cd) continue;
                    if (ffx(beta).empty() || ffx(gamma).empty()) continue;
                    if (auto r = attempt([&] {
                          RingPlan s = double_ring({1, 2, 3});
                          s.pieces = cut_cycle(cyc, {cd, ga, bu});
                          s.links = {Edge::make(d0, alpha)};
                          s.exits[0] = {u_, c0};
                          s.entries[0] = {beta, gamma};
                          s.free_entries[1] = {v_};
                          s.require = e_;
                          return assemble(s);
                        })) {
                      return *r;
                    }
                  }
                }
              }
              throw Failure("no rewiring at d0");
            })) {
          return *c;
        }
      }
      continue;
    }
    label("2.2.1.2.2");
    for (const Edge& cd : {h0, g0}) {
      auto [c0, d0] = orient(cd);
      if (auto c = attempt([&] {
            VSeq cyc = induct(0, {}, {cd}, cd);
            for (Vertex b0 : cycle_neighbors(cyc, u_)) {
              const Edge ub = Edge::make(u_, b0);
              if (ub == cd || ffx(b0).empty() || ffx(d0).empty()) continue;
              if (auto r = attempt([&] {
                    RingPlan s = double_ring({2, 3});
                    s.pieces = cut_cycle(cyc, {ub, cd});
                    s.pieces.push_back({v_});
                    s.exits[0] = {u_, c0};
                    s.entries[0] = {b0, d0};
                    s.entries[1] = {v_, v_};
                    s.fill[1] = Fill::kPunctured;
                    s.removed[1] = v_;
                    s.require = e_;
                    return assemble(s);
                  })) {
                return *r;
              }
            }
            throw Failure("no cut next to u");
          })) {
        return *c;
      }
    }
  }
  throw Failure("2.2.1.2 exhausted");
}

VSeq Frame::s222() {
  label("2.2.2");
  for (const Edge& g : heavy_candidates(2)) {
    if (auto c = attempt([&] {
          auto [a2, b2] = orient(g);
          VSeq p2 = path_between(induct(2, {}, {g}, g), b2, a2);
          RingPlan s = ring({0, 1, 3});
          s.pieces = {p2};
          s.entries[2] = {b2};
          s.exits[2] = {a2};
          s.free_exits[0] = {u_};
          s.free_entries[1] = {v_};
          s.require = e_;
          return assemble(s);
        })) {
      return *c;
    }
  }
  throw Failure("2.2.2 exhausted");
}

// ---------------------------------------------------------------------------

VSeq Frame::run(const Decision& d) {
  j_ = d.j;
  part_ = shared_partition(n_, j_);
  s_.trace.entries[entry_].split_dimension = j_;
  for (auto [base, dir] : d.rings) {
    const std::size_t mark = s_.trace.entries.size();
    try {
      set_ring(base, dir);
      local_ = {};
      if (d.family[0] == '2') {
        u_ = pc(e_.u) == 0 ? e_.u : e_.v;
        v_ = e_.other(u_);
      }
      const std::string& fam = d.family;
      if (fam == "1.1.1.1") return s1111(*d.w);
      if (fam == "1.1.1.2") return pc(*d.w) == 1 ? s1112(*d.w) : s1112_mirror(*d.w);
      if (fam == "1.1.1.3") return s1113(*d.w);
      if (fam == "1.1.2") return s112();
      if (fam == "1.2.1") return s121();
      if (fam == "1.2.2") return s122();
      if (fam == "1.2.3") return s123();
      if (fam == "1.3.1.1") return s1311();
      if (fam == "1.3.1.2") return s1312();
      if (fam == "1.3.1.3") return s1313();
      if (fam == "1.3.2.1") return s1321(*d.w);
      if (fam == "1.3.2.2") return s1322(*d.w);
      if (fam == "2.1") return s21();
      if (fam == "2.2.1.1" || fam == "2.2.1.2") return s221();
      if (fam == "2.2.2") return s222();
      throw std::logic_error("unknown branch " + fam);
    } catch (const Failure&) {
      s_.trace.entries.resize(mark);
    }
  }
  throw Failure("branch " + d.family + " failed for every orientation");
}

VSeq Solver::solve(const Topology& t, const FaultSet& f, const Edge& e0, int level) {
  ++stats.recursive_calls;
  const Edge e = Edge::make(e0.u, e0.v, t.edge_dimension(e0.u, e0.v));
  const std::size_t entry = trace.entries.size();
  TraceEntry te;
  te.level = level;
  trace.entries.push_back(te);
  if (t.dimension() == 2) {
    trace.entries[entry].label = "base";
    auto r = ham_cycle_search(t, f, e, opt.budget);
    ++stats.path_searches;
    stats.search_nodes += r.stats.nodes;
    if (r.status == SearchStatus::kBudgetExceeded) budget_hit = true;
    if (r.status != SearchStatus::kFound) throw Failure("no cycle on BH_2");
    return r.cycle.vertices;
  }
  int added = 0;
  FaultSet padded = pad_faults(t, f, e, added);
  trace.entries[entry].padded = added;
  Decision d;
  try {
    d = decide(t, padded, e);
  } catch (const std::logic_error& ex) {
    throw Failure(ex.what());
  }
  trace.entries[entry].label = d.family;
  Frame fr(*this, t, std::move(padded), e, level, entry);
  VSeq c = fr.run(d);
  if (!verify_ham_cycle(t, f, c, e).ok) throw Failure("assembled cycle failed verification");
  return c;
}

}  // namespace

std::vector<std::string> CaseTrace::labels() const {
  std::vector<std::string> out;
  for (const TraceEntry& te : entries) out.push_back(te.label);
  return out;
}

int CaseTrace::depth() const {
  int d = 0;
  for (const TraceEntry& te : entries) d = std::max(d, te.level);
  return d;
}

std::span<const std::string_view> case_vocabulary() { return kVocabulary; }

bool in_vocabulary(std::string_view label) {
  return std::find(std::begin(kVocabulary), std::end(kVocabulary), label) !=
         std::end(kVocabulary);
}

bool guard_holds(const TraceEntry& te, int n) {
  const std::string& l = te.label;
  if (l == "base") return n == 2;
  if (!in_vocabulary(l) || n < 3) return false;
  const auto& c = te.component_faults;
  int total = te.cross_faults;
  for (int x : c) total += x;
  if (total != 4 * n - 5) return false;
  auto all_below = [&](int bound) {
    return std::all_of(c.begin(), c.end(), [&](int x) { return x <= bound; });
  };
  const int h7 = 4 * n - 7, h8 = 4 * n - 8;
  if (l.starts_with("1.1")) {
    if (!all_below(4 * n - 9) || te.cross_faults < 2) return false;
    if (l == "1.1.2") return c[1] <= 2 * n - 4;
    if (l == "1.1.1.2.2(a)") return te.cross_faults <= 3;
    if (l == "1.1.1.2.2(b)") return te.cross_faults >= 4;
    return true;
  }
  if (l == "1.2.1") return c[0] == h8;
  if (l == "1.2.2") return c[1] == h8;
  if (l == "1.2.3") return c[2] == h8;
  if (l == "1.3.1.1" || l.starts_with("1.3.2.1")) return c[0] == h7;
  if (l == "1.3.1.2") return c[1] == h7;
  if (l == "1.3.1.3") return c[2] == h7;
  if (l == "1.3.2.2") return c[1] == h7 || c[2] == h7;
  if (te.cross_faults < 3) return false;
  if (l == "2.1") return all_below(4 * n - 9) && c[0] <= 2 * n - 4;
  if (l.starts_with("2.2.1")) return c[0] == h8;
  if (l == "2.2.2") return c[2] == h8;
  return false;
}

namespace {

void check_preconditions(const Topology& t, const FaultSet& f, const Edge& e) {
  const int n = t.dimension();
  if (n < 2) throw PreconditionError("dimension must be at least 2");
  if (f.dimension() != n) throw PreconditionError("fault set dimension mismatch");
  if (f.size() > static_cast<std::size_t>(4 * n - 5)) {
    throw PreconditionError("more than 4n-5 faulty edges");
  }
  if (!t.contains(e.u) || !t.contains(e.v) || !t.adjacent(e.u, e.v)) {
    throw PreconditionError("prescribed edge is not an edge of BH_n");
  }
  if (f.contains(e)) throw PreconditionError("prescribed edge is faulty");
  if (!is_conditional(t, f)) throw PreconditionError("fault set is not conditional");
}

}  // namespace

HamCycle base_case_bh2(const FaultSet& f, const Edge& e, const SearchBudget& budget) {
  auto t = Topology::shared(2);
  check_preconditions(*t, f, e);
  auto r = ham_cycle_search(*t, f, Edge::make(e.u, e.v), budget);
  if (r.status != SearchStatus::kFound) {
    CaseTrace tr;
    tr.entries.push_back(TraceEntry{0, "base", -1, {}, 0, 1, 0});
    const std::string what = std::string("BH_2 search: ") + to_string(r.status);
    if (r.status == SearchStatus::kBudgetExceeded) throw BudgetExhausted(what, tr);
    throw OracleFailure(what, tr);
  }
  return r.cycle;
}

Construction construct_ham_cycle(const Topology& t, const FaultSet& f, const Edge& e,
                                 const ConstructOptions& opt) {
  check_preconditions(t, f, e);
  Solver s(opt);
  Construction out;
  try {
    out.cycle.vertices = s.solve(t, f, e, 0);
  } catch (const Failure& ex) {
    if (s.budget_hit) throw BudgetExhausted(ex.what(), s.trace);
    throw OracleFailure(ex.what(), s.trace);
  }
  if (!verify_ham_cycle(t, f, out.cycle, Edge::make(e.u, e.v)).ok) {
    throw OracleFailure("constructed cycle failed verification", s.trace);
  }
  out.trace = std::move(s.trace);
  out.stats = s.stats;
  return out;
}

std::string predict_branch(const Topology& t, const FaultSet& f, const Edge& e) {
  check_preconditions(t, f, e);
  if (t.dimension() == 2) return "base";
  int added = 0;
  const Edge ed = Edge::make(e.u, e.v, t.edge_dimension(e.u, e.v));
  return decide(t, pad_faults(t, f, ed, added), ed).family;
}

std::optional<BranchInstance> find_branch_instance(const Topology& t, std::string_view label,
                                                   std::uint64_t seed, int attempts,
                                                   const ConstructOptions& opt) {
  const int n = t.dimension();
  if (n < 3) throw std::invalid_argument("branch search needs n >= 3");
  const std::size_t size = static_cast<std::size_t>(4 * n - 5);
  const bool exact = in_vocabulary(label);
  auto related = [&](std::string_view family) {
    return label.starts_with(family) || family.starts_with(label);
  };
  for (int a = 0; a < attempts; ++a) {
    const std::uint64_t s = mix_seed(seed, static_cast<std::uint64_t>(a));
    const FaultSet f = a % 3 == 2 ? clustered_conditional_faults(t, size, s)
                                  : component_loaded_faults(t, static_cast<int>(s % n), s);
    std::vector<Edge> edges(t.edges().begin(), t.edges().end());
    std::mt19937_64 rng(s);
    std::shuffle(edges.begin(), edges.end(), rng);
    for (const Edge& e : edges) {
      if (f.contains(e) || !related(predict_branch(t, f, e))) continue;
      try {
        Construction c = construct_ham_cycle(t, f, e, opt);
        const std::string top = c.trace.top_label();
        if (exact ? top == label : top.starts_with(label)) {
          return BranchInstance{f, e, s, c.trace};
        }
      } catch (const OracleFailure&) {
        // reported by the caller's own runs; keep looking here
      }
    }
  }
  return std::nullopt;
}

}  // namespace bhc
