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

#include "bhcycle/io.hpp"

#include <sstream>
#include <stdexcept>

namespace bhc {

json vertex_to_json(Vertex v, int n) { return v.digits(n); }

Vertex vertex_from_json(const json& j, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    throw std::invalid_argument("vertex must be an array of " + std::to_string(n) + " digits");
  }
  std::vector<int> d;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw std::invalid_argument("digit must be an integer");
    d.push_back(x.get<int>());
  }
  return Vertex::from_digits(d);
}

json topology_to_json(const Topology& t) {
  const int n = t.dimension();
  json vs = json::array();
  for (std::uint32_t c = 0; c < t.vertex_count(); ++c) vs.push_back(vertex_to_json(Vertex(c), n));
  json es = json::array();
  for (const Edge& e : t.edges()) {
    es.push_back({{"u", vertex_to_json(e.u, n)}, {"v", vertex_to_json(e.v, n)}, {"dim", e.dim}});
  }
  return {{"n", n}, {"vertices", std::move(vs)}, {"edges", std::move(es)}};
}

namespace {

std::string dot_id(Vertex v, int n) {
  std::string s = "v";
  for (int i = 0; i < n; ++i) s += static_cast<char>('0' + v.digit(i));
  return s;
}

}  // namespace

std::string topology_to_dot(const Topology& t) {
  const int n = t.dimension();
  std::ostringstream out;
  out << "graph BH" << n << " {\n";
  for (std::uint32_t c = 0; c < t.vertex_count(); ++c) {
    const Vertex v(c);
    out << "  " << dot_id(v, n) << " [label=\"" << v.to_string(n) << "\", color="
        << (v.color() == Color::kWhite ? "white" : "black") << "];\n";
  }
  for (const Edge& e : t.edges()) {
    out << "  " << dot_id(e.u, n) << " -- " << dot_id(e.v, n) << " [dim=" << e.dim << "];\n";
  }
  out << "}\n";
  return out.str();
}

json faults_to_json(const FaultSet& f, std::optional<std::uint64_t> seed) {
  const int n = f.dimension();
  json fs = json::array();
  for (const Edge& e : f.edges()) {
    fs.push_back({{"u", vertex_to_json(e.u, n)}, {"v", vertex_to_json(e.v, n)}});
  }
  json out = {{"n", n}, {"faults", std::move(fs)}, {"seed", nullptr}};
  if (seed) out["seed"] = *seed;
  return out;
}

LoadedFaults faults_from_json(const Topology& t, const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("faults")) {
    throw std::invalid_argument("fault file needs \"n\" and \"faults\"");
  }
  const int n = j.at("n").get<int>();
  if (n != t.dimension()) throw std::invalid_argument("fault file dimension mismatch");
  std::vector<Edge> edges;
  for (const auto& e : j.at("faults")) {
    edges.push_back(Edge::make(vertex_from_json(e.at("u"), n), vertex_from_json(e.at("v"), n)));
  }
  LoadedFaults out{FaultSet(t, edges), std::nullopt};
  if (j.contains("seed") && !j.at("seed").is_null()) out.seed = j.at("seed").get<std::uint64_t>();
  return out;
}

json cycle_to_json(int n, const HamCycle& c, const Edge& through,
                   const std::vector<std::string>& trace) {
  json vs = json::array();
  for (Vertex v : c.vertices) vs.push_back(vertex_to_json(v, n));
  return {{"n", n},
          {"cycle", std::move(vs)},
          {"through", {{"u", vertex_to_json(through.u, n)}, {"v", vertex_to_json(through.v, n)}}},
          {"trace", trace}};
}

}  // namespace bhc
