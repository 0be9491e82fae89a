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
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "bhcycle/construct.hpp"
#include "bhcycle/verify.hpp"

namespace bhc {
namespace {

// Shape of a 3-fault set of BH_2 relative to e, named after where the lone
// off-split fault sits. `j` is the dimension holding most faults.
std::string shape(const Topology& t, const FaultSet& f, const Edge& e) {
  const int j = f.count_in_dimension(1) >= f.count_in_dimension(0) ? 1 : 0;
  const Partition p = Partition::by_dimension(t, j);
  const bool crossing = t.edge_dimension(e.u, e.v) == j;
  if (f.count_in_dimension(j) == 3) return crossing ? "all_split/crossing" : "all_split/inner";
  const Edge* inner = nullptr;
  for (const Edge& g : f.edges()) {
    if (p.label(g.u) == p.label(g.v)) inner = &g;
  }
  const int l = p.label(inner->u);
  if (crossing) {
    const int a = p.label(e.u), b = p.label(e.v);
    return l == a || l == b ? "one_inner/crossing/touching" : "one_inner/crossing/far";
  }
  const int d = (l - p.label(e.u) + 4) % 4;
  return d == 0 ? "one_inner/same" : d == 2 ? "one_inner/opposite" : "one_inner/adjacent";
}

TEST(BaseCase, FaultFreeBh2) {
  const Topology t = Topology::build_def1(2);
  const Edge e = *t.find_edge(Vertex(0), Vertex(1));
  const HamCycle c = base_case_bh2(FaultSet(2), e);
  EXPECT_EQ(c.size(), 16u);
  EXPECT_TRUE(verify_ham_cycle(t, FaultSet(2), c, e).ok);
}

TEST(BaseCase, EveryThreeFaultShape) {
  const auto tp = Topology::shared(2);
  const Topology& t = *tp;
  const auto es = t.edges();
  std::map<std::string, int> seen;
  int subsets = 0;
  for (std::size_t a = 0; a < es.size(); ++a) {
    for (std::size_t b = a + 1; b < es.size(); ++b) {
      for (std::size_t c = b + 1; c < es.size(); ++c) {
        const std::vector<Edge> pick{es[a], es[b], es[c]};
        const FaultSet f(t, pick);
        ++subsets;
        if (!is_conditional(t, f)) continue;
        for (const Edge& e : es) {
          if (f.contains(e)) continue;
          ++seen[shape(t, f, e)];
          const Construction r = construct_ham_cycle(t, f, e);
          ASSERT_EQ(r.cycle.size(), 16u);
          ASSERT_TRUE(verify_ham_cycle(t, f, r.cycle, e).ok);
        }
      }
    }
  }
  EXPECT_EQ(subsets, 4960);
  for (const char* s : {"all_split/inner", "all_split/crossing", "one_inner/same",
                        "one_inner/adjacent", "one_inner/opposite", "one_inner/crossing/touching",
                        "one_inner/crossing/far"}) {
    EXPECT_GT(seen[s], 0) << s;
  }
}

TEST(Construct, Preconditions) {
  const auto t = Topology::shared(3);
  const FaultSet f = random_conditional_faults(*t, 7, 1);
  EXPECT_THROW(construct_ham_cycle(*t, f, f.edges()[0]), PreconditionError);
  FaultSet big = random_conditional_faults(*t, 8, 1);
  Edge free_edge = t->edges()[0];
  for (const Edge& e : t->edges()) {
    if (!big.contains(e)) free_edge = e;
  }
  EXPECT_THROW(construct_ham_cycle(*t, big, free_edge), PreconditionError);
  const Counterexample cx = build_optimality_counterexample(*t);
  FaultSet starved(3);
  for (Vertex w : t->neighbors(cx.u)) {
    if (starved.size() < 5) starved.insert(*t->find_edge(cx.u, w));
  }
  for (const Edge& e : t->edges()) {
    if (!starved.contains(e)) {
      EXPECT_THROW(construct_ham_cycle(*t, starved, e), PreconditionError);
      break;
    }
  }
}

TEST(Construct, RandomBh3AgreesWithSearch) {
  const auto t = Topology::shared(3);
  std::mt19937_64 rng(7);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const FaultSet f = random_conditional_faults(*t, 7, s);
    Edge e = t->edges()[rng() % t->edges().size()];
    while (f.contains(e)) e = t->edges()[rng() % t->edges().size()];
    const Construction c = construct_ham_cycle(*t, f, e);
    ASSERT_EQ(c.cycle.size(), 64u);
    EXPECT_TRUE(verify_ham_cycle(*t, f, c.cycle, e).ok);
    const CycleResult r = ham_cycle_search(*t, f, e);
    EXPECT_EQ(r.status, SearchStatus::kFound) << s;
    EXPECT_TRUE(c.trace.top_label().starts_with(predict_branch(*t, f, e)));
  }
}

TEST(Construct, TraceLabelsAndGuards) {
  const auto t = Topology::shared(3);
  std::set<std::string> tops;
  for (std::uint64_t s = 0; s < 60; ++s) {
    const FaultSet f = clustered_conditional_faults(*t, 7, s);
    for (std::size_t k = s % 5; k < t->edges().size(); k += 37) {
      const Edge e = t->edges()[k];
      if (f.contains(e)) continue;
      const Construction c = construct_ham_cycle(*t, f, e);
      tops.insert(c.trace.top_label());
      EXPECT_LE(c.trace.depth(), 1);
      for (const TraceEntry& te : c.trace.entries) {
        EXPECT_TRUE(in_vocabulary(te.label)) << te.label;
        EXPECT_TRUE(guard_holds(te, 3 - te.level)) << te.label;
      }
    }
  }
  EXPECT_GE(tops.size(), 3u);
}

TEST(Construct, SmallerFaultSets) {
  const auto t = Topology::shared(3);
  for (std::size_t k = 0; k < 7; ++k) {
    const FaultSet f = random_conditional_faults(*t, k, k + 11);
    for (std::size_t i = 0; i < t->edges().size(); i += 23) {
      const Edge e = t->edges()[i];
      if (f.contains(e)) continue;
      const Construction c = construct_ham_cycle(*t, f, e);
      EXPECT_TRUE(verify_ham_cycle(*t, f, c.cycle, e).ok);
      EXPECT_GT(c.trace.entries.front().padded, 0);
    }
  }
}

TEST(Construct, Bh4) {
  const auto t = Topology::shared(4);
  for (std::uint64_t s = 0; s < 3; ++s) {
    const FaultSet f = random_conditional_faults(*t, 11, s);
    const Edge e = t->edges()[(s * 97) % t->edges().size()];
    if (f.contains(e)) continue;
    const Construction c = construct_ham_cycle(*t, f, e);
    EXPECT_EQ(c.cycle.size(), 256u);
    EXPECT_TRUE(verify_ham_cycle(*t, f, c.cycle, e).ok);
    EXPECT_LE(c.trace.depth(), 2);
  }
}

TEST(Construct, HeavyComponentWithRescuableVertex) {
  const auto t = Topology::shared(3);
  const auto hit = find_branch_instance(*t, "1.3.2", 1, 3000);
  ASSERT_TRUE(hit.has_value());
  EXPECT_TRUE(hit->trace.top_label().starts_with("1.3.2"));
  const Construction c = construct_ham_cycle(*t, hit->faults, hit->edge);
  EXPECT_TRUE(verify_ham_cycle(*t, hit->faults, c.cycle, hit->edge).ok);
  EXPECT_EQ(c.trace.labels(), hit->trace.labels());
}

TEST(Vocabulary, Membership) {
  EXPECT_TRUE(in_vocabulary("base"));
  EXPECT_TRUE(in_vocabulary("2.2.2"));
  EXPECT_FALSE(in_vocabulary("2.2"));
  EXPECT_FALSE(in_vocabulary("3.1"));
  EXPECT_EQ(case_vocabulary().size(), 23u);
  TraceEntry te;
  te.label = "nonsense";
  EXPECT_FALSE(guard_holds(te, 3));
}

class StitchTest : public ::testing::Test {
 protected:
  void SetUp() override {
    t_ = Topology::shared(2);
    const auto r = ham_cycle_search(*t_, FaultSet(2));
    ASSERT_EQ(r.status, SearchStatus::kFound);
    cycle_ = r.cycle.vertices;
    for (int s = 0; s < 4; ++s) {
      Path p;
      p.vertices.assign(cycle_.begin() + 4 * s, cycle_.begin() + 4 * s + 4);
      segs_.push_back(p);
      links_.push_back(Edge::make(cycle_[4 * s + 3], cycle_[(4 * s + 4) % 16]));
    }
  }
  std::shared_ptr<const Topology> t_;
  std::vector<Vertex> cycle_;
  std::vector<Path> segs_;
  std::vector<Edge> links_;
};

TEST_F(StitchTest, FourSegmentsIntoOneCycle) {
  const HamCycle c = stitch(*t_, FaultSet(2), segs_, links_);
  EXPECT_EQ(c.vertices, cycle_);
  std::reverse(segs_[2].vertices.begin(), segs_[2].vertices.end());
  const HamCycle d = stitch(*t_, FaultSet(2), segs_, links_);
  EXPECT_TRUE(verify_ham_cycle(*t_, FaultSet(2), d).ok);
}

TEST_F(StitchTest, SwappedEndpoints) {
  std::swap(segs_[1].vertices[0], segs_[1].vertices[1]);
  try {
    stitch(*t_, FaultSet(2), segs_, links_);
    FAIL() << "expected a stitch error";
  } catch (const StitchError& ex) {
    EXPECT_EQ(ex.kind(), StitchError::Kind::kEndpointMismatch);
  }
}

TEST_F(StitchTest, FaultyLink) {
  FaultSet f(2);
  f.insert(links_[0]);
  try {
    stitch(*t_, f, segs_, links_);
    FAIL() << "expected a stitch error";
  } catch (const StitchError& ex) {
    EXPECT_EQ(ex.kind(), StitchError::Kind::kBadLink);
  }
}

TEST_F(StitchTest, MissingSegment) {
  segs_.pop_back();
  links_.pop_back();
  links_.back() = Edge::make(cycle_[11], cycle_[0]);
  EXPECT_THROW(stitch(*t_, FaultSet(2), segs_, links_), StitchError);
}

TEST(Stitch, TwoCyclesAreRejected) {
  const std::vector<std::pair<Vertex, Vertex>> ends{{Vertex(0), Vertex(1)},
                                                    {Vertex(2), Vertex(3)},
                                                    {Vertex(4), Vertex(5)},
                                                    {Vertex(6), Vertex(7)}};
  const std::vector<Edge> one{Edge::make(Vertex(1), Vertex(2)), Edge::make(Vertex(3), Vertex(4)),
                              Edge::make(Vertex(5), Vertex(6)), Edge::make(Vertex(7), Vertex(0))};
  EXPECT_TRUE(forms_single_cycle(ends, one));
  const std::vector<Edge> two{Edge::make(Vertex(1), Vertex(2)), Edge::make(Vertex(3), Vertex(0)),
                              Edge::make(Vertex(5), Vertex(6)), Edge::make(Vertex(7), Vertex(4))};
  EXPECT_FALSE(forms_single_cycle(ends, two));
}

}  // namespace
}  // namespace bhc
