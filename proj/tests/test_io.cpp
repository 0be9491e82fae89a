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
#include <string>

#include <gtest/gtest.h>

#include "bhcycle/io.hpp"

namespace bhc {
namespace {

TEST(Io, VertexDigitsInnerFirst) {
  const Vertex v = Vertex::from_digits(std::vector<int>{2, 3, 1});
  EXPECT_EQ(vertex_to_json(v, 3), json({2, 3, 1}));
  EXPECT_EQ(vertex_from_json(json({2, 3, 1}), 3), v);
  EXPECT_THROW(vertex_from_json(json({2, 3}), 3), std::invalid_argument);
  EXPECT_THROW(vertex_from_json(json({2, 3, 4}), 3), std::invalid_argument);
  EXPECT_THROW(vertex_from_json(json("231"), 3), std::invalid_argument);
}

TEST(Io, TopologyJson) {
  const Topology t = Topology::build_def1(3);
  const json j = topology_to_json(t);
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(j["vertices"].size(), 64u);
  EXPECT_EQ(j["edges"].size(), 192u);
  EXPECT_EQ(j["edges"][0]["dim"].get<int>(), t.edges()[0].dim);
}

TEST(Io, Dot) {
  const std::string dot = topology_to_dot(Topology::build_def1(1));
  EXPECT_EQ(std::count(dot.begin(), dot.end(), '\n'), 1 + 4 + 4 + 1);
  EXPECT_NE(dot.find("color=black"), std::string::npos);
  EXPECT_NE(dot.find("dim=0"), std::string::npos);
}

TEST(Io, FaultsRoundTrip) {
  const Topology t = Topology::build_def1(3);
  const FaultSet f = random_conditional_faults(t, 7, 3);
  const json j = faults_to_json(f, 3);
  EXPECT_EQ(j["seed"], 3);
  const LoadedFaults back = faults_from_json(t, json::parse(j.dump()));
  EXPECT_EQ(back.faults, f);
  EXPECT_EQ(back.seed, 3u);
  EXPECT_TRUE(faults_to_json(f)["seed"].is_null());
  EXPECT_THROW(faults_from_json(Topology::build_def1(2), j), std::invalid_argument);
}

TEST(Io, CycleJson) {
  HamCycle c{{Vertex(0), Vertex(1), Vertex(2), Vertex(3)}};
  const json j = cycle_to_json(1, c, Edge::make(Vertex(0), Vertex(1)), {"base"});
  EXPECT_EQ(j["cycle"].size(), 4u);
  EXPECT_EQ(j["through"]["v"], json({1}));
  EXPECT_EQ(j["trace"][0], "base");
}

}  // namespace
}  // namespace bhc
