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
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bhcycle/construct.hpp"
#include "bhcycle/faults.hpp"
#include "bhcycle/io.hpp"
#include "bhcycle/pathfinder.hpp"
#include "bhcycle/topology.hpp"
#include "bhcycle/verify.hpp"
#include "stress.hpp"

namespace {

using bhc::Edge;
using bhc::FaultSet;
using bhc::Topology;
using bhc::Vertex;
using nlohmann::json;

enum Exit { kOk = 0, kIo = 1, kPrecondition = 2, kVerification = 3, kBudget = 4 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check_n(int n, int lo) {
  if (n < lo || n > bhc::kMaxDimension) {
    throw std::invalid_argument("n must be in " + std::to_string(lo) + ".." +
                                std::to_string(bhc::kMaxDimension));
  }
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << text;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& ex) {
    throw IoError(path + ": " + ex.what());
  }
}

// "a0a1...a{n-1}", inner index first.
Vertex parse_vertex(const std::string& s, int n) {
  if (static_cast<int>(s.size()) != n) {
    throw std::invalid_argument("vertex '" + s + "' needs " + std::to_string(n) + " digits");
  }
  std::vector<int> d;
  for (char c : s) {
    if (c < '0' || c > '3') throw std::invalid_argument("bad digit in vertex '" + s + "'");
    d.push_back(c - '0');
  }
  return Vertex::from_digits(d);
}

std::vector<std::string> fields(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  return out;
}

bhc::LoadedFaults resolve_faults(const Topology& t, const std::string& spec) {
  if (spec.empty() || spec == "none") return {FaultSet(t.dimension()), std::nullopt};
  if (spec.starts_with("random:")) {
    const auto f = fields(spec, ':');
    if (f.size() != 3) throw std::invalid_argument("expected random:SIZE:SEED");
    const std::uint64_t seed = std::stoull(f[2]);
    return {bhc::random_conditional_faults(t, std::stoul(f[1]), seed), seed};
  }
  auto loaded = bhc::faults_from_json(t, load_json(spec));
  return {std::move(loaded.faults), loaded.seed};
}

Edge resolve_edge(const Topology& t, const FaultSet& f, const std::string& spec) {
  if (spec.starts_with("random:")) {
    std::mt19937_64 rng(std::stoull(spec.substr(7)));
    std::vector<Edge> free;
    for (const Edge& e : t.edges()) {
      if (!f.contains(e)) free.push_back(e);
    }
    if (free.empty()) throw std::invalid_argument("every edge is faulty");
    return free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng)];
  }
  const auto uv = fields(spec, ',');
  if (uv.size() != 2) throw std::invalid_argument("expected --edge u,v or random:SEED");
  const int n = t.dimension();
  auto e = t.find_edge(parse_vertex(uv[0], n), parse_vertex(uv[1], n));
  if (!e) throw std::invalid_argument("'" + spec + "' is not an edge of BH_" + std::to_string(n));
  return *e;
}

int cmd_gen(int n, const std::string& def, const std::string& format, const std::string& out) {
  check_n(n, 1);
  if (def == "both") {
    const bhc::Verdict v = bhc::verify_defs_equivalent(n);
    std::cout << "equivalent: " << (v ? "true" : "false") << "\n";
    if (!v) {
      std::cerr << v.reason << "\n";
      return kVerification;
    }
    if (out.empty()) return kOk;
  }
  const Topology t = def == "2" ? Topology::build_def2(n) : Topology::build_def1(n);
  emit(format == "dot" ? bhc::topology_to_dot(t) : bhc::topology_to_json(t).dump(2) + "\n", out);
  return kOk;
}

int cmd_faults(int n, const std::string& gen, int size, std::uint64_t seed, int j,
               const std::string& out) {
  check_n(n, 2);
  const auto t = Topology::shared(n);
  if (size < 0) size = 4 * n - 5;
  FaultSet f;
  switch (bhc::stress::parse_generator(gen)) {
    case bhc::stress::Generator::kRandom:
      f = bhc::random_conditional_faults(*t, static_cast<std::size_t>(size), seed);
      break;
    case bhc::stress::Generator::kClustered:
      f = bhc::clustered_conditional_faults(*t, static_cast<std::size_t>(size), seed);
      break;
    case bhc::stress::Generator::kLoaded:
      f = bhc::component_loaded_faults(*t, j, seed);
      break;
  }
  emit(bhc::faults_to_json(f, seed).dump(2) + "\n", out);
  return kOk;
}

int cmd_construct(int n, const std::string& faults, const std::string& edge,
                  const std::string& mode, const std::string& out) {
  check_n(n, 2);
  const auto tp = Topology::shared(n);
  const Topology& t = *tp;
  const bhc::LoadedFaults lf = resolve_faults(t, faults);
  const Edge e = resolve_edge(t, lf.faults, edge);
  if (lf.faults.contains(e)) throw bhc::PreconditionError("prescribed edge is faulty");

  json doc;
  bhc::HamCycle cycle;
  if (mode == "search") {
    auto r = bhc::ham_cycle_search(t, lf.faults, e, bhc::SearchBudget::from_env());
    if (r.status == bhc::SearchStatus::kBudgetExceeded) {
      std::cerr << "search budget exhausted\n";
      return kBudget;
    }
    if (r.status != bhc::SearchStatus::kFound) {
      std::cerr << "no Hamiltonian cycle through the edge\n";
      return kVerification;
    }
    cycle = std::move(r.cycle);
    doc = bhc::cycle_to_json(n, cycle, e, {});
    doc["mode"] = "search";
    doc["nodes"] = r.stats.nodes;
  } else {
    bhc::Construction c = bhc::construct_ham_cycle(t, lf.faults, e);
    cycle = std::move(c.cycle);
    doc = bhc::cycle_to_json(n, cycle, e, c.trace.labels());
    doc["mode"] = "theorem";
    doc["depth"] = c.trace.depth();
  }
  if (const bhc::Verdict v = bhc::verify_ham_cycle(t, lf.faults, cycle, e); !v) {
    std::cerr << "verification failed: " << v.reason << "\n";
    return kVerification;
  }
  doc["faults"] = bhc::faults_to_json(lf.faults, lf.seed)["faults"];
  doc["seed"] = lf.seed ? json(*lf.seed) : json(nullptr);
  emit(doc.dump(2) + "\n", out);
  std::cerr << "verified cycle of length " << doc["cycle"].size() << "\n";
  return kOk;
}

int cmd_verify(int n, const std::string& cycle_path, const std::string& faults) {
  check_n(n, 1);
  const auto tp = Topology::shared(n);
  const json doc = load_json(cycle_path);
  if (doc.value("n", n) != n) throw std::invalid_argument("cycle file is for another n");
  std::vector<Vertex> cycle;
  for (const auto& v : doc.at("cycle")) cycle.push_back(bhc::vertex_from_json(v, n));
  FaultSet f = faults.empty() && doc.contains("faults")
                   ? bhc::faults_from_json(*tp, {{"n", n}, {"faults", doc["faults"]}}).faults
                   : resolve_faults(*tp, faults).faults;
  std::optional<Edge> through;
  if (doc.contains("through")) {
    through = tp->find_edge(bhc::vertex_from_json(doc["through"]["u"], n),
                            bhc::vertex_from_json(doc["through"]["v"], n));
    if (!through) throw std::invalid_argument("'through' is not an edge");
  }
  const bhc::Verdict v = bhc::verify_ham_cycle(*tp, f, cycle, through);
  json verdict = {{"ok", v.ok}, {"reason", v.reason}};
  std::cout << verdict.dump() << "\n";
  return v ? kOk : kVerification;
}

int cmd_stress(const bhc::stress::Config& cfg, const std::string& report) {
  const json r = bhc::stress::run(cfg);
  emit(r.dump(2) + "\n", report);
  std::cerr << r["passed"] << "/" << r["runs"] << " runs passed";
  if (!r["missing_labels"].empty()) {
    std::cerr << ", labels not reached: " << r["missing_labels"].dump();
  }
  std::cerr << "\n";
  return bhc::stress::exit_code(r);
}

int cmd_counterexample(int n, const std::string& out) {
  if (n < 2) throw bhc::PreconditionError("the theorem is stated for n >= 2");
  check_n(n, 2);
  const auto tp = Topology::shared(n);
  const bhc::Counterexample c = bhc::build_optimality_counterexample(*tp);
  const bool conditional = bhc::is_conditional(*tp, c.faults);
  const bhc::AbsenceReport a = bhc::certify_no_ham_cycle(*tp, c.faults);
  json doc = {{"n", n},
              {"fault_count", c.faults.size()},
              {"is_conditional", conditional},
              {"verdict", bhc::to_string(a.verdict)},
              {"nodes", a.nodes},
              {"faults", bhc::faults_to_json(c.faults)["faults"]}};
  json w = json::array();
  for (Vertex v : a.witness) w.push_back(bhc::vertex_to_json(v, n));
  doc["witness"] = w;
  emit(doc.dump(2) + "\n", out);
  const bool absent = a.verdict == bhc::Absence::kConclusiveAbsent ||
                      a.verdict == bhc::Absence::kStructuralAbsent;
  return conditional && absent ? kOk : kVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fault-free Hamiltonian cycles in balanced hypercubes"};
  app.require_subcommand(1);
  int n = 0;
  std::string out;

  auto* gen = app.add_subcommand("gen", "Write BH_n as JSON or DOT");
  std::string def = "1", format = "json";
  gen->add_option("n", n, "dimension")->required();
  gen->add_option("--def", def, "construction")->check(CLI::IsMember({"1", "2", "both"}));
  gen->add_option("--format", format)->check(CLI::IsMember({"json", "dot"}));
  gen->add_option("--out", out, "output file (default stdout)");

  auto* flt = app.add_subcommand("faults", "Write a seeded conditional fault set");
  std::string generator = "random";
  int size = -1, component_dim = 0;
  std::uint64_t seed = 1;
  flt->add_option("n", n)->required();
  flt->add_option("--generator", generator)
      ->check(CLI::IsMember({"random", "clustered", "loaded"}));
  flt->add_option("--size", size, "number of faults (default 4n-5)");
  flt->add_option("--seed", seed);
  flt->add_option("--dim", component_dim, "split dimension for the loaded generator");
  flt->add_option("--out", out);

  auto* con = app.add_subcommand("construct", "Build a Hamiltonian cycle through an edge");
  std::string faults, edge = "random:0", mode = "theorem";
  con->add_option("n", n)->required();
  con->add_option("--faults", faults, "file | random:SIZE:SEED | none");
  con->add_option("--edge", edge, "u,v (digit strings, inner index first) | random:SEED");
  con->add_option("--mode", mode)->check(CLI::IsMember({"theorem", "search"}));
  con->add_option("--out", out);

  auto* ver = app.add_subcommand("verify", "Check a cycle file");
  std::string cycle_path;
  ver->add_option("n", n)->required();
  ver->add_option("--cycle", cycle_path)->required();
  ver->add_option("--faults", faults, "overrides faults stored in the cycle file");

  auto* st = app.add_subcommand("stress", "Seeded batches of constructions");
  bhc::stress::Config cfg;
  std::string report;
  st->add_option("n", cfg.n)->required();
  st->add_option("--trials", cfg.trials);
  st->add_option("--fault-size", cfg.fault_size, "default 4n-5");
  st->add_option("--edges-per-trial", cfg.edges_per_trial, "0 = every fault-free edge");
  st->add_option("--seed", cfg.seed);
  st->add_option("--generator", generator)->check(CLI::IsMember({"random", "clustered", "loaded"}));
  st->add_option("--jobs", cfg.jobs)
      ->default_val(std::max(1u, std::thread::hardware_concurrency()));
  st->add_flag("--exhaustive", cfg.exhaustive, "n=2: all conditional subsets, all edges");
  st->add_flag("--targets", cfg.targets, "search for labels the trials missed");
  st->add_option("--target-attempts", cfg.target_attempts);
  st->add_option("--report", report, "report file (default stdout)");

  auto* cex = app.add_subcommand("counterexample", "The 4n-4 fault set with no cycle");
  cex->add_option("n", n)->required();
  cex->add_option("--out", out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(n, def, format, out);
    if (*flt) return cmd_faults(n, generator, size, seed, component_dim, out);
    if (*con) return cmd_construct(n, faults, edge, mode, out);
    if (*ver) return cmd_verify(n, cycle_path, faults);
    if (*st) {
      cfg.generator = bhc::stress::parse_generator(generator);
      if (cfg.exhaustive && !st->count("--fault-size")) cfg.fault_size = 3;
      return cmd_stress(cfg, report);
    }
    if (*cex) return cmd_counterexample(n, out);
  } catch (const IoError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kIo;
  } catch (const bhc::BudgetExhausted& ex) {
    std::cerr << "budget exhausted: " << ex.what() << "\n";
    return kBudget;
  } catch (const bhc::OracleFailure& ex) {
    std::cerr << "construction failed: " << ex.what() << "\n";
    for (const auto& l : ex.trace().labels()) std::cerr << "  " << l << "\n";
    return kVerification;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "precondition: " << ex.what() << "\n";
    return kPrecondition;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kVerification;
  }
  return kOk;
}
