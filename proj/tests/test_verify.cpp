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
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "bhcycle/faults.hpp"
#include "bhcycle/verify.hpp"

namespace bhc {
namespace {

std::vector<Vertex> seq(std::initializer_list<std::uint32_t> codes) {
  std::vector<Vertex> out;
  for (auto c : codes) out.emplace_back(c);
  return out;
}

TEST(VerifyCycle, Bh1) {
  const Topology t = Topology::build_def1(1);
  EXPECT_TRUE(verify_ham_cycle(t, FaultSet(1), seq({0, 1, 2, 3})).ok);
  FaultSet f(1);
  f.insert(Edge::make(Vertex(1), Vertex(2)));
  const Verdict v = verify_ham_cycle(t, f, seq({0, 1, 2, 3}));
  EXPECT_FALSE(v.ok);
  EXPECT_NE(v.reason.find("faulty edge used"), std::string::npos) << v.reason;
}

TEST(VerifyCycle, Malformed) {
  const Topology t = Topology::build_def1(1);
  const FaultSet none(1);
  EXPECT_FALSE(verify_ham_cycle(t, none, seq({0, 1, 2})).ok);
  EXPECT_FALSE(verify_ham_cycle(t, none, seq({0, 1, 2, 1})).ok);
  EXPECT_FALSE(verify_ham_cycle(t, none, seq({0, 2, 1, 3})).ok);
  EXPECT_FALSE(verify_ham_cycle(t, none, seq({0, 1, 2, 7})).ok);
  EXPECT_FALSE(verify_ham_cycle(t, none, seq({})).ok);
}

TEST(VerifyCycle, ThroughEdge) {
  const Topology t = Topology::build_def1(2);
  // 0-1-2-3 runs along dimension 0 and closes into a 4-cycle; not Hamiltonian.
  EXPECT_FALSE(verify_ham_cycle(t, FaultSet(2), seq({0, 1, 2, 3})).ok);
  const Topology t1 = Topology::build_def1(1);
  const FaultSet none(1);
  EXPECT_TRUE(verify_ham_cycle(t1, none, seq({0, 1, 2, 3}), Edge::make(Vertex(3), Vertex(0))).ok);
  EXPECT_FALSE(verify_ham_cycle(t1, none, seq({0, 1, 2, 3}), Edge::make(Vertex(0), Vertex(2))).ok);
}

TEST(VerifyPath, ExcludedVertex) {
  const Topology t = Topology::build_def1(1);
  const FaultSet none(1);
  const std::vector<Vertex> gone = seq({0});
  EXPECT_TRUE(verify_ham_path(t, none, seq({1, 2, 3}), Vertex(1), Vertex(3), gone).ok);
  EXPECT_FALSE(verify_ham_path(t, none, seq({1, 2, 3}), Vertex(1), Vertex(3)).ok);
  EXPECT_TRUE(verify_ham_path(t, none, seq({1, 0, 3}), Vertex(1), Vertex(3), seq({2})).ok);
  EXPECT_FALSE(verify_ham_path(t, none, seq({1, 2, 3}), Vertex(3), Vertex(1), gone).ok);
}

TEST(VerifyPath, Pair) {
  const Topology t = Topology::build_def1(1);
  const FaultSet none(1);
  EXPECT_TRUE(verify_path_pair(t, none, seq({0, 1}), seq({2, 3}), Vertex(0), Vertex(1), Vertex(2),
                               Vertex(3))
                  .ok);
  EXPECT_FALSE(verify_path_pair(t, none, seq({0, 1, 2}), seq({2, 3}), Vertex(0), Vertex(2),
                                Vertex(2), Vertex(3))
                   .ok);
  EXPECT_FALSE(verify_path_pair(t, none, seq({0, 1}), seq({2}), Vertex(0), Vertex(1), Vertex(2),
                                Vertex(2))
                   .ok);
}

TEST(Isomorphism, RelabeledBh2) {
  const Topology t = Topology::build_def1(2);
  std::vector<std::vector<int>> a(16), b(16);
  std::vector<int> perm(16);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937(5));
  for (const Edge& e : t.edges()) {
    const int u = static_cast<int>(e.u.code()), v = static_cast<int>(e.v.code());
    a[u].push_back(v);
    a[v].push_back(u);
    b[perm[u]].push_back(perm[v]);
    b[perm[v]].push_back(perm[u]);
  }
  EXPECT_TRUE(graphs_isomorphic(a, b));
  // Move one edge: same size, different graph.
  auto c = a;
  const int x = 0, y = c[0][0];
  c[x].erase(c[x].begin());
  c[y].erase(std::find(c[y].begin(), c[y].end(), x));
  EXPECT_FALSE(graphs_isomorphic(a, c));
}

TEST(Isomorphism, HexagonVersusTwoTriangles) {
  const std::vector<std::vector<int>> hex{{1, 5}, {0, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 0}};
  const std::vector<std::vector<int>> tri{{1, 2}, {0, 2}, {0, 1}, {4, 5}, {3, 5}, {3, 4}};
  EXPECT_FALSE(graphs_isomorphic(hex, tri));
  EXPECT_TRUE(graphs_isomorphic(hex, hex));
}

TEST(Definitions, Equivalent) {
  for (int n = 1; n <= 4; ++n) EXPECT_TRUE(verify_defs_equivalent(n).ok) << n;
}

TEST(Absence, Counterexamples) {
  const Topology t2 = Topology::build_def1(2);
  EXPECT_EQ(certify_no_ham_cycle(t2, build_optimality_counterexample(t2).faults).verdict,
            Absence::kConclusiveAbsent);
  for (int n = 3; n <= 4; ++n) {
    const auto t = Topology::shared(n);
    const Counterexample c = build_optimality_counterexample(*t);
    const AbsenceReport r = certify_no_ham_cycle(*t, c.faults);
    EXPECT_EQ(r.verdict, Absence::kStructuralAbsent);
    ASSERT_EQ(r.witness.size(), 4u);
  }
}

TEST(Absence, HamiltonianHostGetsWitness) {
  const Topology t = Topology::build_def1(2);
  const AbsenceReport r = certify_no_ham_cycle(t, FaultSet(2));
  ASSERT_EQ(r.verdict, Absence::kPresent);
  EXPECT_TRUE(verify_ham_cycle(t, FaultSet(2), r.witness).ok);
  EXPECT_STREQ(to_string(Absence::kConclusiveAbsent), "CONCLUSIVE_ABSENT");
}

}  // namespace
}  // namespace bhc
