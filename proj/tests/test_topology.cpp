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
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "bhcycle/topology.hpp"
#include "bhcycle/verify.hpp"

namespace bhc {
namespace {

Vertex V(std::vector<int> d) { return Vertex::from_digits(d); }

// Neighbors straight from the digit rule, written out independently of the
// library's generator.
std::set<std::pair<int, std::uint32_t>> rule_neighbors(int n, const std::vector<int>& a) {
  std::set<std::pair<int, std::uint32_t>> out;
  const int s = a[0] % 2 == 0 ? 1 : -1;
  for (int i = 0; i < n; ++i) {
    for (int d0 : {1, 3}) {
      std::vector<int> b = a;
      b[0] = (a[0] + d0) % 4;
      if (i > 0) b[i] = ((a[i] + s) % 4 + 4) % 4;
      out.insert({i, Vertex::from_digits(b).code()});
    }
  }
  return out;
}

TEST(Topology, Bh1IsFourCycle) {
  const Topology t = Topology::build_def1(1);
  EXPECT_EQ(t.vertex_count(), 4u);
  ASSERT_EQ(t.edges().size(), 4u);
  for (std::uint32_t x = 0; x < 4; ++x) {
    EXPECT_TRUE(t.adjacent(Vertex(x), Vertex((x + 1) % 4)));
    EXPECT_FALSE(t.adjacent(Vertex(x), Vertex((x + 2) % 4)));
  }
  EXPECT_EQ(Topology::build_def2(1), t);
}

TEST(Topology, Bh2Basics) {
  const Topology t = Topology::build_def1(2);
  EXPECT_EQ(t.vertex_count(), 16u);
  EXPECT_EQ(t.edges().size(), 32u);
  for (std::uint32_t x = 0; x < 16; ++x) EXPECT_EQ(t.neighbors(Vertex(x)).size(), 4u);
  const Vertex o = V({0, 0});
  for (auto w : {V({1, 0}), V({3, 0}), V({1, 1}), V({3, 1})}) EXPECT_TRUE(t.adjacent(o, w));
}

TEST(Topology, MatchesDigitRule) {
  for (int n = 1; n <= 4; ++n) {
    const Topology t = Topology::build_def1(n);
    for (std::uint32_t x = 0; x < t.vertex_count(); ++x) {
      const Vertex v(x);
      std::set<std::pair<int, std::uint32_t>> got;
      for (int s = 0; s < t.degree(); ++s) {
        got.insert({t.neighbor_dimension(v, s), t.neighbors(v)[s].code()});
      }
      EXPECT_EQ(got, rule_neighbors(n, v.digits(n))) << v.to_string(n);
    }
    EXPECT_EQ(t.edges().size(), static_cast<std::size_t>(n) << (2 * n));
  }
}

TEST(Topology, NamedNeighbors) {
  const Topology t = Topology::build_def1(3);
  const auto nb = t.neighbors_in_dimension(V({2, 3, 1}), 2);
  const std::set<Vertex> got(nb.begin(), nb.end());
  EXPECT_EQ(got, (std::set<Vertex>{V({3, 3, 2}), V({1, 3, 2})}));

  const Topology t2 = Topology::build_def2(2);
  const auto nb2 = t2.neighbors_in_dimension(V({0, 0}), 1);
  EXPECT_EQ((std::set<Vertex>(nb2.begin(), nb2.end())), (std::set<Vertex>{V({1, 1}), V({3, 1})}));
}

TEST(Topology, EdgeDimension) {
  const Topology t2 = Topology::build_def1(2);
  EXPECT_EQ(t2.edge_dimension(V({0, 0}), V({1, 0})), 0);
  EXPECT_EQ(t2.edge_dimension(V({0, 0}), V({1, 1})), 1);
  EXPECT_THROW(t2.edge_dimension(V({0, 0}), V({2, 0})), std::invalid_argument);
  const Topology t3 = Topology::build_def1(3);
  EXPECT_EQ(t3.edge_dimension(V({2, 3, 1}), V({3, 3, 2})), 2);
  EXPECT_EQ(classify_pair(3, V({2, 3, 1}), V({3, 3, 2})), 2);
  EXPECT_EQ(classify_pair(3, V({2, 3, 1}), V({2, 3, 2})), std::nullopt);
}

TEST(Topology, ColorsAndBipartite) {
  EXPECT_EQ(V({0, 0}).color(), Color::kWhite);
  EXPECT_EQ(V({3, 2}).color(), Color::kBlack);
  for (int n = 1; n <= 4; ++n) {
    const Topology t = Topology::build_def1(n);
    for (const Edge& e : t.edges()) EXPECT_NE(e.u.color(), e.v.color());
  }
}

TEST(Topology, DefinitionsAgree) {
  for (int n = 1; n <= 4; ++n) {
    EXPECT_EQ(Topology::build_def1(n), Topology::build_def2(n)) << n;
    EXPECT_TRUE(verify_defs_equivalent(n).ok) << n;
  }
}

TEST(Topology, RejectsBadDimension) {
  EXPECT_THROW(Topology::build_def1(0), std::invalid_argument);
  EXPECT_THROW(Topology::build_def2(kMaxDimension + 1), std::invalid_argument);
}

TEST(Partition, Bh2SplitIntoFourCycles) {
  const Topology t = Topology::build_def1(2);
  const Partition p = Partition::by_dimension(t, 1);
  for (int l = 0; l < 4; ++l) {
    const auto c = p.component(l);
    ASSERT_EQ(c.size(), 4u);
    int inner = 0;
    for (const Edge& e : t.edges()) {
      if (p.label(e.u) == l && p.label(e.v) == l) ++inner;
    }
    EXPECT_EQ(inner, 4);
  }
  EXPECT_EQ(p.cross_edges().size(), 16u);
  EXPECT_EQ(t.edges_of_dimension(1).size(), 16u);
}

TEST(Partition, Orientation) {
  for (int n = 2; n <= 3; ++n) {
    const Topology t = Topology::build_def1(n);
    for (int j = 0; j < n; ++j) {
      const Partition p = Partition::by_dimension(t, j);
      for (const auto& ce : p.cross_edges()) {
        const Vertex w = ce.edge.u.color() == Color::kWhite ? ce.edge.u : ce.edge.v;
        EXPECT_EQ(p.label(w), ce.from_label);
        EXPECT_EQ(p.label(ce.edge.other(w)), (ce.from_label + 1) % 4);
        EXPECT_EQ(ce.to_label, (ce.from_label + 1) % 4);
      }
      for (std::uint32_t x = 0; x < t.vertex_count(); ++x) {
        const Vertex v(x);
        EXPECT_EQ(p.to_global(p.label(v), p.to_local(v)), v);
      }
    }
  }
}

TEST(Partition, VerifiedForAllDimensions) {
  for (int n = 2; n <= 3; ++n) {
    const Topology t = Topology::build_def1(n);
    for (int j = 0; j < n; ++j) EXPECT_TRUE(verify_partition(t, Partition::by_dimension(t, j)).ok);
  }
  const Topology t4 = Topology::build_def1(4);
  for (int j : {0, 3}) EXPECT_TRUE(verify_partition(t4, Partition::by_dimension(t4, j)).ok);
}

TEST(Partition, ComponentsAreRegular) {
  const Topology t = Topology::build_def1(3);
  const Partition p = Partition::by_dimension(t, 2);
  for (int l = 0; l < 4; ++l) {
    ASSERT_EQ(p.component(l).size(), 16u);
    for (Vertex v : p.component(l)) {
      int in = 0;
      for (Vertex w : t.neighbors(v)) in += p.label(w) == l;
      EXPECT_EQ(in, 4);
    }
  }
}

}  // namespace
}  // namespace bhc
