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

#include <algorithm>
#include <array>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "bhcycle/faults.hpp"

namespace bhc {
namespace {

Vertex V(std::vector<int> d) { return Vertex::from_digits(d); }

std::vector<Edge> incident(const Topology& t, Vertex v) {
  std::vector<Edge> out;
  for (Vertex w : t.neighbors(v)) out.push_back(*t.find_edge(v, w));
  return out;
}

// Greedy matching inside one dimension.
std::vector<Edge> disjoint_edges(const Topology& t, int d, std::size_t k) {
  std::vector<Edge> out;
  std::set<Vertex> used;
  for (const Edge& e : t.edges_of_dimension(d)) {
    if (out.size() == k) break;
    if (used.count(e.u) || used.count(e.v)) continue;
    used.insert(e.u);
    used.insert(e.v);
    out.push_back(e);
  }
  return out;
}

TEST(FaultSet, DegreesTrackEdges) {
  const Topology t = Topology::build_def1(2);
  FaultSet f(2);
  const auto es = incident(t, V({0, 0}));
  EXPECT_TRUE(f.insert(es[0]));
  EXPECT_FALSE(f.insert(es[0]));
  EXPECT_TRUE(f.insert(Edge::make(es[1].v, es[1].u)));
  EXPECT_EQ(f.fault_degree(V({0, 0})), 2);
  EXPECT_TRUE(f.contains(es[1].v, es[1].u));
  EXPECT_TRUE(f.erase(es[0]));
  EXPECT_EQ(f.fault_degree(V({0, 0})), 1);
  EXPECT_TRUE(f.consistent());
  EXPECT_THROW(f.insert(Edge::make(V({0, 0}), V({2, 0}))), std::invalid_argument);
}

TEST(FaultSet, DimensionTagFilledOnInsert) {
  const Topology t = Topology::build_def1(3);
  FaultSet f(3);
  f.insert(Edge::make(V({2, 3, 1}), V({3, 3, 2})));
  EXPECT_EQ(f.count_in_dimension(2), 1);
  EXPECT_EQ(f.edges()[0].dim, 2);
}

TEST(FaultSet, RejectsForeignEdges) {
  const Topology t = Topology::build_def1(2);
  const std::vector<Edge> bad{Edge::make(V({0, 0}), V({0, 1}))};
  EXPECT_THROW(FaultSet(t, bad), std::invalid_argument);
  const auto e = t.edges()[0];
  const std::vector<Edge> twice{e, e};
  EXPECT_THROW(FaultSet(t, twice), std::invalid_argument);
}

TEST(Conditional, Examples) {
  const Topology t = Topology::build_def1(2);
  EXPECT_TRUE(is_conditional(t, FaultSet(2)));
  auto es = incident(t, V({1, 2}));
  es.pop_back();
  const FaultSet three(t, es);
  EXPECT_EQ(t.degree() - three.fault_degree(V({1, 2})), 1);
  EXPECT_FALSE(is_conditional(t, three));
  EXPECT_TRUE(is_conditional(t, build_optimality_counterexample(t).faults));
}

TEST(Rescuability, Examples) {
  for (int n = 2; n <= 3; ++n) {
    const Topology t = Topology::build_def1(n);
    for (std::uint32_t x = 0; x < t.vertex_count(); x += 5) {
      EXPECT_EQ(rescuability(t, FaultSet(n), Vertex(x)), 2 * n);
      EXPECT_EQ(rescuability(t, FaultSet(n), Vertex(x), n - 1), 2 * n - 2);
    }
  }
  const Topology t = Topology::build_def1(2);
  auto es = incident(t, V({2, 1}));
  es.resize(2);
  EXPECT_EQ(rescuability(t, FaultSet(t, es), V({2, 1})), 2);
}

TEST(SplitSelection, SingleDimensionLoadGivesCase1) {
  const Topology t = Topology::build_def1(3);
  const FaultSet f(t, disjoint_edges(t, 0, 7));
  ASSERT_EQ(f.size(), 7u);
  ASSERT_TRUE(is_conditional(t, f));
  // Only dimension 0 holds the three faults Case 1 needs.
  EXPECT_EQ(f.count_in_dimension(0), 7);
  const SplitChoice c = select_split_dimension(t, f);
  EXPECT_EQ(c.kind, SplitChoice::Kind::kCase1);
  EXPECT_EQ(c.m, 0);
}

TEST(SplitSelection, SpreadFaultsGiveCase2) {
  const Topology t = Topology::build_def1(3);
  std::vector<Edge> es;
  std::set<Vertex> used;
  for (int d : {0, 1, 2}) {
    int want = d == 2 ? 1 : 2;
    for (const Edge& e : t.edges_of_dimension(d)) {
      if (!want) break;
      if (used.count(e.u) || used.count(e.v)) continue;
      used.insert(e.u);
      used.insert(e.v);
      es.push_back(e);
      --want;
    }
  }
  const FaultSet f(t, es);
  for (int d = 0; d < 3; ++d) EXPECT_LE(f.count_in_dimension(d), 2);
  const SplitChoice c = select_split_dimension(t, f);
  EXPECT_EQ(c.kind, SplitChoice::Kind::kCase2);
  ASSERT_TRUE(c.m_prime.has_value());
  EXPECT_EQ(f.count_in_dimension(c.m), 2);
  EXPECT_EQ(f.count_in_dimension(*c.m_prime), 2);
}

TEST(SplitSelection, FullLoadAlwaysSucceeds) {
  for (int n = 3; n <= 4; ++n) {
    const auto t = Topology::shared(n);
    for (std::uint64_t s = 0; s < 200; ++s) {
      const FaultSet f = s % 2 ? clustered_conditional_faults(*t, 4 * n - 5, s)
                               : random_conditional_faults(*t, 4 * n - 5, s);
      const SplitChoice c = select_split_dimension(*t, f);
      const DimensionProfile p = profile_dimension(*t, f, c.m);
      EXPECT_EQ(p.isolated, 0);
      if (c.kind == SplitChoice::Kind::kCase1) {
        EXPECT_GE(p.faults, 3);
        EXPECT_EQ(p.one_rescuable, 0);
      } else {
        EXPECT_LE(p.one_rescuable, 1);
      }
    }
  }
}

TEST(Rescue, EmptyFaultSet) {
  const Topology t = Topology::build_def1(3);
  const Partition p = Partition::by_dimension(t, 1);
  const Vertex u = V({1, 2, 3});
  const RescueEdge r = find_rescue_cross_edge(t, FaultSet(3), p, u);
  EXPECT_EQ(p.label(r.v), p.label(u));
  EXPECT_NE(t.edge_dimension(u, r.v), 1);
  EXPECT_EQ(t.edge_dimension(r.v, r.w), 1);
  EXPECT_FALSE(r.link_faulty);
  EXPECT_EQ(rescue_candidates(t, FaultSet(3), p, u).size(), 8u);
}

TEST(Rescue, OneRescuableVertexMayUseFaultyLink) {
  const Topology t = Topology::build_def1(3);
  const int j = 2;
  const Partition p = Partition::by_dimension(t, j);
  const Vertex u = V({0, 0, 0});
  FaultSet f(3);
  int placed = 0;
  for (Vertex w : t.neighbors(u)) {
    if (t.edge_dimension(u, w) != j && placed < 3) {
      f.insert(*t.find_edge(u, w));
      ++placed;
    }
  }
  ASSERT_EQ(rescuability(t, f, u, j), 1);
  bool faulty_link = false;
  for (const RescueEdge& r : rescue_candidates(t, f, p, u)) faulty_link |= r.link_faulty;
  EXPECT_TRUE(faulty_link);
}

TEST(Rescue, SurvivesCrossFaultsAtNeighbors) {
  const Topology t = Topology::build_def1(3);
  const int j = 0;
  const Partition p = Partition::by_dimension(t, j);
  const Vertex u = V({2, 1, 1});
  FaultSet f(3);
  std::vector<Vertex> side;
  for (Vertex w : t.neighbors(u)) {
    if (t.edge_dimension(u, w) != j) side.push_back(w);
  }
  f.insert(*t.find_edge(u, side[0]));
  int placed = 0;
  for (std::size_t i = 1; i < side.size() && placed < 4; ++i) {
    for (Vertex w : t.neighbors_in_dimension(side[i], j)) {
      if (placed < 4 && w != u) {
        f.insert(*t.find_edge(side[i], w));
        ++placed;
      }
    }
  }
  // 2(2n-2) candidate cross edges, 4 of them faulty.
  std::size_t expect = 0;
  for (Vertex v : side) {
    for (Vertex w : t.neighbors_in_dimension(v, j)) expect += !f.contains(v, w);
  }
  EXPECT_EQ(expect, 4u);
  EXPECT_EQ(rescue_candidates(t, f, p, u).size(), expect);
  EXPECT_NO_THROW(find_rescue_cross_edge(t, f, p, u));
}

TEST(Generators, RandomIsReproducibleAndConditional) {
  const Topology t2 = Topology::build_def1(2);
  EXPECT_TRUE(random_conditional_faults(t2, 0, 9).empty());
  EXPECT_EQ(random_conditional_faults(t2, 3, 42), random_conditional_faults(t2, 3, 42));
  EXPECT_TRUE(is_conditional(t2, random_conditional_faults(t2, 3, 42)));
  const Topology t3 = Topology::build_def1(3);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const FaultSet f = random_conditional_faults(t3, 7, s);
    EXPECT_EQ(f.size(), 7u);
    EXPECT_TRUE(is_conditional(t3, f));
    const FaultSet g = clustered_conditional_faults(t3, 7, s);
    EXPECT_EQ(g.size(), 7u);
    EXPECT_TRUE(is_conditional(t3, g));
  }
}

TEST(Generators, ComponentLoaded) {
  const Topology t = Topology::build_def1(3);
  for (std::uint64_t s = 0; s < 40; ++s) {
    const int j = static_cast<int>(s % 3);
    const FaultSet f = component_loaded_faults(t, j, s);
    EXPECT_EQ(f.size(), 7u);
    EXPECT_TRUE(is_conditional(t, f));
    const Partition p = Partition::by_dimension(t, j);
    std::array<int, 4> inner{};
    for (const Edge& e : f.edges()) {
      if (p.label(e.u) == p.label(e.v)) ++inner[p.label(e.u)];
    }
    EXPECT_GE(*std::max_element(inner.begin(), inner.end()), 3);
  }
}

TEST(Counterexample, Shape) {
  for (int n = 2; n <= 4; ++n) {
    const Topology t = Topology::build_def1(n);
    const Counterexample c = build_optimality_counterexample(t);
    EXPECT_EQ(c.faults.size(), static_cast<std::size_t>(4 * n - 4));
    EXPECT_TRUE(is_conditional(t, c.faults));
    EXPECT_EQ(c.u.color(), c.v.color());
    for (Vertex hub : {c.u, c.v}) {
      std::set<Vertex> alive;
      for (Vertex w : t.neighbors(hub)) {
        if (!c.faults.contains(hub, w)) alive.insert(w);
      }
      EXPECT_EQ(alive, (std::set<Vertex>{c.x, c.y}));
    }
  }
  EXPECT_THROW(build_optimality_counterexample(Topology::build_def1(1)), std::invalid_argument);
}

TEST(Seeds, MixIsDeterministic) {
  EXPECT_EQ(mix_seed(1, 2), mix_seed(1, 2));
  EXPECT_NE(mix_seed(1, 2), mix_seed(1, 3));
}

}  // namespace
}  // namespace bhc
