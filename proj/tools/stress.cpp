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

#include "stress.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>
#include <vector>

#include "bhcycle/io.hpp"
#include "bhcycle/verify.hpp"

namespace bhc::stress {

namespace {

using nlohmann::json;

struct Unit {
  std::uint64_t index = 0;
  std::uint64_t seed = 0;
  FaultSet faults;
  std::vector<Edge> edges;
  std::string generator_error;
};

struct Outcome {
  std::uint64_t runs = 0;
  std::uint64_t passed = 0;
  json failures = json::array();
  std::map<std::string, std::uint64_t> labels;
  std::map<std::string, std::uint64_t> top_labels;
  std::map<int, std::uint64_t> depths;
  ConstructStats stats;
};

json edge_json(const Edge& e, int n) {
  return {{"u", vertex_to_json(e.u, n)}, {"v", vertex_to_json(e.v, n)}};
}

void add(ConstructStats& a, const ConstructStats& b) {
  a.recursive_calls += b.recursive_calls;
  a.path_searches += b.path_searches;
  a.search_nodes += b.search_nodes;
  a.rejected_alternatives += b.rejected_alternatives;
  a.precondition_misses += b.precondition_misses;
}

Outcome run_unit(const Topology& t, const Unit& u, const ConstructOptions& opt) {
  const int n = t.dimension();
  Outcome out;
  for (const Edge& e : u.edges) {
    ++out.runs;
    std::string kind, message;
    CaseTrace trace;
    try {
      Construction c = construct_ham_cycle(t, u.faults, e, opt);
      add(out.stats, c.stats);
      trace = c.trace;
      const Verdict v = verify_ham_cycle(t, u.faults, c.cycle, e);
      if (!v || c.cycle.size() != t.vertex_count()) {
        kind = "verify";
        message = v ? "wrong cycle length" : v.reason;
      }
    } catch (const PreconditionError& ex) {
      kind = "precondition";
      message = ex.what();
    } catch (const BudgetExhausted& ex) {
      kind = "budget";
      message = ex.what();
      trace = ex.trace();
    } catch (const OracleFailure& ex) {
      kind = "oracle";
      message = ex.what();
      trace = ex.trace();
    } catch (const std::exception& ex) {
      kind = "error";
      message = ex.what();
    }
    if (kind.empty()) {
      ++out.passed;
      for (const TraceEntry& te : trace.entries) ++out.labels[te.label];
      ++out.top_labels[trace.top_label()];
      ++out.depths[trace.depth()];
      continue;
    }
    out.failures.push_back({{"trial", u.index},
                            {"seed", u.seed},
                            {"edge", edge_json(e, n)},
                            {"kind", kind},
                            {"message", message},
                            {"trace", trace.labels()},
                            {"faults", faults_to_json(u.faults, u.seed)["faults"]}});
  }
  return out;
}

std::vector<Edge> sample_edges(const Topology& t, const FaultSet& f, int k, std::uint64_t seed) {
  std::vector<Edge> free;
  for (const Edge& e : t.edges()) {
    if (!f.contains(e)) free.push_back(e);
  }
  if (k <= 0 || static_cast<std::size_t>(k) >= free.size()) return free;
  std::mt19937_64 rng(seed);
  std::shuffle(free.begin(), free.end(), rng);
  free.resize(static_cast<std::size_t>(k));
  return free;
}

// Every conditional subset of E(BH_2) with at most k edges, in lexicographic
// order of edge indices.
std::vector<FaultSet> all_small_subsets(const Topology& t, int k) {
  const auto edges = t.edges();
  const int m = static_cast<int>(edges.size());
  std::vector<FaultSet> out;
  std::vector<int> pick;
  auto rec = [&](auto&& self, int from) -> void {
    std::vector<Edge> chosen;
    for (int i : pick) chosen.push_back(edges[i]);
    FaultSet f(t, chosen);
    if (is_conditional(t, f)) out.push_back(std::move(f));
    if (static_cast<int>(pick.size()) == k) return;
    for (int i = from; i < m; ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

FaultSet generate(const Topology& t, Generator g, int size, std::uint64_t index,
                  std::uint64_t seed) {
  switch (g) {
    case Generator::kRandom:
      return random_conditional_faults(t, static_cast<std::size_t>(size), seed);
    case Generator::kClustered:
      return clustered_conditional_faults(t, static_cast<std::size_t>(size), seed);
    case Generator::kLoaded:
      return component_loaded_faults(t, static_cast<int>(index % t.dimension()), seed);
  }
  throw std::logic_error("unknown generator");
}

std::vector<Outcome> run_all(const Topology& t, const std::vector<Unit>& units,
                             const ConstructOptions& opt, int jobs) {
  std::vector<Outcome> results(units.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < units.size(); i = next++) {
      if (units[i].generator_error.empty()) results[i] = run_unit(t, units[i], opt);
    }
  };
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(units.size())));
  if (workers == 1) {
    worker();
    return results;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return results;
}

json stats_json(const ConstructStats& s) {
  return {{"recursive_calls", s.recursive_calls},
          {"path_searches", s.path_searches},
          {"search_nodes", s.search_nodes},
          {"rejected_alternatives", s.rejected_alternatives},
          {"precondition_misses", s.precondition_misses}};
}

}  // namespace

Generator parse_generator(const std::string& name) {
  if (name == "random") return Generator::kRandom;
  if (name == "clustered") return Generator::kClustered;
  if (name == "loaded") return Generator::kLoaded;
  throw std::invalid_argument("unknown generator: " + name);
}

const char* to_string(Generator g) {
  switch (g) {
    case Generator::kRandom: return "random";
    case Generator::kClustered: return "clustered";
    case Generator::kLoaded: return "loaded";
  }
  return "?";
}

int exit_code(const json& report) {
  bool budget = false;
  for (const auto& f : report.at("failures")) {
    if (f.at("kind") != "budget") return 3;
    budget = true;
  }
  if (!report.at("generator_failures").empty()) return 3;
  return budget ? 4 : 0;
}

json run(const Config& cfg) {
  const int n = cfg.n;
  if (n < 2 || n > kMaxDimension) {
    throw std::invalid_argument("n must be in 2.." + std::to_string(kMaxDimension));
  }
  const int size = cfg.fault_size < 0 ? 4 * n - 5 : cfg.fault_size;
  if (cfg.exhaustive && n != 2) throw std::invalid_argument("exhaustive mode is for n = 2");
  if (cfg.generator == Generator::kLoaded && size != 4 * n - 5) {
    throw std::invalid_argument("the loaded generator always places 4n-5 faults");
  }
  const auto tp = Topology::shared(n);
  const Topology& t = *tp;

  std::vector<Unit> units;
  json generator_failures = json::array();
  if (cfg.exhaustive) {
    std::uint64_t i = 0;
    for (FaultSet& f : all_small_subsets(t, size)) {
      Unit u{i++, 0, std::move(f), {}, {}};
      u.edges = sample_edges(t, u.faults, 0, 0);
      units.push_back(std::move(u));
    }
  } else {
    for (int i = 0; i < cfg.trials; ++i) {
      Unit u;
      u.index = static_cast<std::uint64_t>(i);
      u.seed = mix_seed(cfg.seed, u.index);
      try {
        u.faults = generate(t, cfg.generator, size, u.index, u.seed);
        u.edges = sample_edges(t, u.faults, cfg.edges_per_trial, mix_seed(u.seed, 0xed6e));
      } catch (const std::exception& ex) {
        u.generator_error = ex.what();
        generator_failures.push_back(
            {{"trial", u.index}, {"seed", u.seed}, {"message", ex.what()}});
      }
      units.push_back(std::move(u));
    }
  }

  const std::vector<Outcome> results = run_all(t, units, cfg.construct, cfg.jobs);
  Outcome total;
  for (const Outcome& o : results) {
    total.runs += o.runs;
    total.passed += o.passed;
    for (const auto& f : o.failures) total.failures.push_back(f);
    for (const auto& [k, c] : o.labels) total.labels[k] += c;
    for (const auto& [k, c] : o.top_labels) total.top_labels[k] += c;
    for (const auto& [k, c] : o.depths) total.depths[k] += c;
    add(total.stats, o.stats);
  }

  std::set<std::string> seen;
  for (const auto& [k, c] : total.labels) seen.insert(k);
  json targeted = json::object();
  if (cfg.targets && n >= 3) {
    for (std::string_view label : case_vocabulary()) {
      const std::string key(label);
      if (seen.count(key)) continue;
      auto hit = find_branch_instance(t, label, cfg.seed, cfg.target_attempts, cfg.construct);
      if (!hit) {
        targeted[key] = nullptr;
        continue;
      }
      for (const std::string& l : hit->trace.labels()) seen.insert(l);
      targeted[key] = {{"seed", hit->seed},
                       {"edge", edge_json(hit->edge, n)},
                       {"faults", faults_to_json(hit->faults, hit->seed)["faults"]},
                       {"trace", hit->trace.labels()}};
    }
  }
  json missing = json::array();
  for (std::string_view label : case_vocabulary()) {
    if (!seen.count(std::string(label))) missing.push_back(label);
  }
  json depths = json::object();
  for (const auto& [d, c] : total.depths) depths[std::to_string(d)] = c;

  return {{"n", n},
          {"mode", cfg.exhaustive ? "exhaustive" : "random"},
          {"generator", cfg.exhaustive ? "all_subsets" : to_string(cfg.generator)},
          {"seed", cfg.seed},
          {"fault_sets", units.size()},
          {"fault_size", size},
          {"edges_per_trial", cfg.exhaustive ? 0 : cfg.edges_per_trial},
          {"runs", total.runs},
          {"passed", total.passed},
          {"failed", total.runs - total.passed},
          {"failures", total.failures},
          {"generator_failures", generator_failures},
          {"labels", total.labels},
          {"top_labels", total.top_labels},
          {"depths", depths},
          {"search", stats_json(total.stats)},
          {"targeted", targeted},
          {"missing_labels", missing}};
}

}  // namespace bhc::stress
