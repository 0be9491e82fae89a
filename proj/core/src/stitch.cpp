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

#include <unordered_map>

#include "bhcycle/construct.hpp"

namespace bhc {

namespace {

struct Step {
  std::size_t segment;
  bool reversed;
};

// Walks segments through links. Throws StitchError on a malformed chain.
std::vector<Step> chain(std::span<const std::pair<Vertex, Vertex>> ends,
                        std::span<const Edge> links) {
  using Kind = StitchError::Kind;
  if (ends.empty()) throw StitchError(Kind::kCoverageGap, "no segments");
  std::unordered_map<Vertex, std::size_t> owner;
  for (std::size_t i = 0; i < ends.size(); ++i) {
    for (Vertex x : {ends[i].first, ends[i].second}) {
      auto [it, fresh] = owner.try_emplace(x, i);
      if (!fresh && it->second != i) {
        throw StitchError(Kind::kEndpointMismatch, "segments share an endpoint");
      }
    }
  }
  std::unordered_map<Vertex, std::vector<std::size_t>> at;
  for (std::size_t k = 0; k < links.size(); ++k) {
    for (Vertex x : {links[k].u, links[k].v}) {
      if (!owner.count(x)) throw StitchError(Kind::kEndpointMismatch, "link ends inside a segment");
      at[x].push_back(k);
    }
  }
  for (const auto& [a, b] : ends) {
    const std::size_t need = a == b ? 2 : 1;
    if (at[a].size() != need || at[b].size() != need) {
      throw StitchError(Kind::kEndpointMismatch, "segment endpoint has the wrong number of links");
    }
  }
  if (links.size() != ends.size()) {
    throw StitchError(Kind::kEndpointMismatch, "link count differs from segment count");
  }

  std::vector<Step> order;
  std::vector<char> used(ends.size(), 0);
  std::size_t seg = 0;
  bool rev = false;
  std::size_t via = links.size();  // link used to enter the current segment
  for (;;) {
    if (used[seg]) break;
    used[seg] = 1;
    order.push_back({seg, rev});
    const Vertex out = rev ? ends[seg].first : ends[seg].second;
    std::size_t next_link = links.size();
    for (std::size_t k : at[out]) {
      if (k != via) next_link = k;
    }
    const Vertex in = links[next_link].other(out);
    seg = owner[in];
    via = next_link;
    rev = ends[seg].first != ends[seg].second && in == ends[seg].second;
  }
  if (order.size() != ends.size() || seg != 0 || rev) {
    throw StitchError(Kind::kCoverageGap, "links close more than one cycle");
  }
  return order;
}

}  // namespace

bool forms_single_cycle(std::span<const std::pair<Vertex, Vertex>> segment_ends,
                        std::span<const Edge> links) {
  try {
    chain(segment_ends, links);
    return true;
  } catch (const StitchError&) {
    return false;
  }
}

HamCycle stitch(const Topology& t, const FaultSet& f, std::span<const Path> segments,
                std::span<const Edge> links) {
  using Kind = StitchError::Kind;
  for (const Edge& l : links) {
    if (!t.adjacent(l.u, l.v) || f.contains(l)) {
      throw StitchError(Kind::kBadLink, "link is not a fault-free edge");
    }
  }
  std::vector<std::pair<Vertex, Vertex>> ends;
  for (const Path& p : segments) {
    if (p.empty()) throw StitchError(Kind::kCoverageGap, "empty segment");
    ends.push_back({p.front(), p.back()});
  }
  HamCycle c;
  for (const Step& s : chain(ends, links)) {
    const auto& v = segments[s.segment].vertices;
    if (s.reversed) {
      c.vertices.insert(c.vertices.end(), v.rbegin(), v.rend());
    } else {
      c.vertices.insert(c.vertices.end(), v.begin(), v.end());
    }
  }
  if (c.vertices.size() != t.vertex_count()) {
    throw StitchError(Kind::kCoverageGap, "segments do not cover the host");
  }
  std::vector<char> seen(t.vertex_count(), 0);
  for (Vertex x : c.vertices) {
    if (!t.contains(x) || seen[x.code()]) throw StitchError(Kind::kCoverageGap, "segments overlap");
    seen[x.code()] = 1;
  }
  return c;
}

}  // namespace bhc
