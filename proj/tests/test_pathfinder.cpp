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

#include <cstdint>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "bhcycle/faults.hpp"
#include "bhcycle/pathfinder.hpp"
#include "bhcycle/verify.hpp"

namespace bhc {
namespace {

// Held-Karp reachability over subsets: is there a Hamiltonian path s -> d
// of the graph minus `skip`? Only for 16 or fewer vertices.
bool dp_path(const Topology& t, const FaultSet& f, int s, int d, int skip = -1) {
  const int nv = static_cast<int>(t.vertex_count());
  std::vector<std::uint32_t> adj(nv, 0);
  for (const Edge& e : t.edges()) {
    if (f.contains(e)) continue;
    adj[e.u.code()] |= 1u << e.v.code();
    adj[e.v.code()] |= 1u << e.u.code();
  }
  const std::uint32_t full = ((1u << nv) - 1) & ~(skip >= 0 ? 1u << skip : 0u);
  std::vector<std::uint32_t> reach(std::size_t{1} << nv, 0);  // bitmask of end vertices
  reach[1u << s] = 1u << s;
  for (std::uint32_t m = 1; m <= full; ++m) {
    if (!reach[m] || (m & ~full)) continue;
    for (int x = 0; x < nv; ++x) {
      if (!(reach[m] >> x & 1)) continue;
      std::uint32_t nxt = adj[x] & ~m & full;
      while (nxt) {
        const int y = __builtin_ctz(nxt);
        nxt &= nxt - 1;
        reach[m | 1u << y] |= 1u << y;
      }
    }
  }
  return reach[full] >> d & 1;
}

SearchOptions unpruned() {
  SearchOptions o;
  o.parity_pruning = o.degree_pruning = o.connectivity_pruning = false;
  return o;
}

TEST(HamPath, Bh1) {
  const Topology t = Topology::build_def1(1);
  const auto r = ham_path(t, FaultSet(1), Vertex(0), Vertex(1));
  ASSERT_EQ(r.status, SearchStatus::kFound);
  const std::vector<std::uint32_t> want{0, 3, 2, 1};
  ASSERT_EQ(r.path.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(r.path.vertices[i].code(), want[i]);
}

TEST(HamPath, Bh2AllOppositePairs) {
  const Topology t = Topology::build_def1(2);
  const FaultSet none(2);
  for (std::uint32_t a = 0; a < 16; a += 2) {
    for (std::uint32_t b = 1; b < 16; b += 2) {
      const auto r = ham_path(t, none, Vertex(a), Vertex(b));
      ASSERT_EQ(r.status, SearchStatus::kFound);
      EXPECT_TRUE(verify_ham_path(t, none, r.path.vertices, Vertex(a), Vertex(b)).ok);
    }
  }
}

TEST(HamPath, SameColorIsNotFound) {
  const Topology t = Topology::build_def1(2);
  EXPECT_EQ(ham_path(t, FaultSet(2), Vertex(0), Vertex(2)).status, SearchStatus::kNotFound);
  EXPECT_THROW(ham_path(t, FaultSet(2), Vertex(3), Vertex(3)), std::invalid_argument);
  EXPECT_THROW(ham_path(t, FaultSet(2), Vertex(0), Vertex(99)), std::invalid_argument);
}

TEST(HamPath, AgreesWithSubsetDp) {
  const Topology t = Topology::build_def1(2);
  std::mt19937_64 rng(17);
  int found = 0, absent = 0;
  for (int trial = 0; trial < 120; ++trial) {
    FaultSet f(2);
    const int k = 2 + trial % 5;
    while (static_cast<int>(f.size()) < k) f.insert(t.edges()[rng() % t.edges().size()]);
    const int s = static_cast<int>(rng() % 16);
    int d = static_cast<int>(rng() % 16);
    if (d == s) d = (d + 1) % 16;
    const bool want = dp_path(t, f, s, d);
    for (const SearchOptions& o : {SearchOptions{}, unpruned()}) {
      const auto r = ham_path(t, f, Vertex(s), Vertex(d), {}, o);
      ASSERT_NE(r.status, SearchStatus::kBudgetExceeded);
      EXPECT_EQ(r.status == SearchStatus::kFound, want) << "trial " << trial;
    }
    (want ? found : absent)++;
  }
  EXPECT_GT(found, 10);
  EXPECT_GT(absent, 10);
}

TEST(HamPath, PruningSavesNodes) {
  const Topology t = Topology::build_def1(2);
  const FaultSet f = random_conditional_faults(t, 2, 3);
  std::uint64_t pruned = 0, plain = 0;
  for (std::uint32_t b = 1; b < 16; b += 2) {
    pruned += ham_path(t, f, Vertex(0), Vertex(b)).stats.nodes;
    plain += ham_path(t, f, Vertex(0), Vertex(b), {}, unpruned()).stats.nodes;
  }
  EXPECT_LE(pruned, plain);
}

TEST(HamPath, Laceability) {
  const Topology t = Topology::build_def1(2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const FaultSet f = random_conditional_faults(t, 2, seed);
    for (std::uint32_t a = 0; a < 16; a += 2) {
      for (std::uint32_t b = 1; b < 16; b += 2) {
        const auto r = ham_path(t, f, Vertex(a), Vertex(b));
        ASSERT_EQ(r.status, SearchStatus::kFound);
        EXPECT_TRUE(verify_ham_path(t, f, r.path.vertices, Vertex(a), Vertex(b)).ok);
      }
    }
  }
}

TEST(HamPath, TinyBudgetIsReported) {
  const auto t = Topology::shared(3);
  SearchBudget b;
  b.node_limit = 3;
  const auto r = ham_path(*t, FaultSet(3), Vertex(0), Vertex(63), b);
  EXPECT_EQ(r.status, SearchStatus::kBudgetExceeded);
}

TEST(TwoPaths, Bh1) {
  const Topology t = Topology::build_def1(1);
  const FaultSet none(1);
  const auto r = two_spanning_paths(t, none, Vertex(0), Vertex(1), Vertex(2), Vertex(3));
  ASSERT_EQ(r.status, SearchStatus::kFound);
  EXPECT_TRUE(verify_path_pair(t, none, r.first.vertices, r.second.vertices, Vertex(0), Vertex(1),
                               Vertex(2), Vertex(3))
                  .ok);
  EXPECT_THROW(two_spanning_paths(t, none, Vertex(0), Vertex(1), Vertex(0), Vertex(3)),
               std::invalid_argument);
}

TEST(TwoPaths, Bh2FixedFirstEndpoint) {
  const Topology t = Topology::build_def1(2);
  const FaultSet none(2);
  const Vertex u1(0);
  int runs = 0;
  for (std::uint32_t u2 = 2; u2 < 16; u2 += 2) {
    for (std::uint32_t v1 = 1; v1 < 16; v1 += 2) {
      for (std::uint32_t v2 = 1; v2 < 16; v2 += 2) {
        if (v1 == v2) continue;
        const auto r = two_spanning_paths(t, none, u1, Vertex(v1), Vertex(u2), Vertex(v2));
        ASSERT_EQ(r.status, SearchStatus::kFound);
        EXPECT_TRUE(verify_path_pair(t, none, r.first.vertices, r.second.vertices, u1, Vertex(v1),
                                     Vertex(u2), Vertex(v2))
                        .ok);
        ++runs;
      }
    }
  }
  EXPECT_EQ(runs, 7 * 8 * 7);
}

TEST(HyperPath, Bh1) {
  const Topology t = Topology::build_def1(1);
  const auto r = hyper_ham_path(t, FaultSet(1), Vertex(0), Vertex(1), Vertex(3));
  ASSERT_EQ(r.status, SearchStatus::kFound);
  ASSERT_EQ(r.path.size(), 3u);
  EXPECT_EQ(r.path.vertices[1], Vertex(2));
  EXPECT_THROW(hyper_ham_path(t, FaultSet(1), Vertex(0), Vertex(0), Vertex(2)),
               std::invalid_argument);
}

TEST(HyperPath, Bh2EveryWhiteRemoved) {
  const Topology t = Topology::build_def1(2);
  const FaultSet none(2);
  for (std::uint32_t w = 0; w < 16; w += 2) {
    for (std::uint32_t a = 1; a < 16; a += 2) {
      for (std::uint32_t b = a + 2; b < 16; b += 2) {
        const auto r = hyper_ham_path(t, none, Vertex(w), Vertex(a), Vertex(b));
        ASSERT_EQ(r.status, SearchStatus::kFound);
        const std::vector<Vertex> gone{Vertex(w)};
        EXPECT_TRUE(verify_ham_path(t, none, r.path.vertices, Vertex(a), Vertex(b), gone).ok);
        EXPECT_EQ(r.status == SearchStatus::kFound,
                  dp_path(t, none, static_cast<int>(a), static_cast<int>(b), static_cast<int>(w)));
      }
    }
  }
}

TEST(CycleSearch, Bh1) {
  const Topology t = Topology::build_def1(1);
  const auto r = ham_cycle_search(t, FaultSet(1));
  ASSERT_EQ(r.status, SearchStatus::kFound);
  EXPECT_TRUE(verify_ham_cycle(t, FaultSet(1), r.cycle).ok);
}

TEST(CycleSearch, Bh2ThroughEveryEdge) {
  const Topology t = Topology::build_def1(2);
  for (const Edge& e : t.edges()) {
    const auto r = ham_cycle_search(t, FaultSet(2), e);
    ASSERT_EQ(r.status, SearchStatus::kFound);
    EXPECT_TRUE(verify_ham_cycle(t, FaultSet(2), r.cycle, e).ok);
  }
}

TEST(CycleSearch, CounterexampleHasNoCycle) {
  const Topology t = Topology::build_def1(2);
  const FaultSet f = build_optimality_counterexample(t).faults;
  EXPECT_EQ(ham_cycle_search(t, f).status, SearchStatus::kNotFound);
  EXPECT_EQ(ham_cycle_search(t, f, std::nullopt, {}, unpruned()).status, SearchStatus::kNotFound);
}

TEST(CycleSearch, FaultyThroughEdgeRejected) {
  const Topology t = Topology::build_def1(2);
  FaultSet f(2);
  f.insert(t.edges()[0]);
  EXPECT_THROW(ham_cycle_search(t, f, t.edges()[0]), std::invalid_argument);
}

}  // namespace
}  // namespace bhc
