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

// Inductive Hamiltonian cycle construction for conditionally faulty
// balanced hypercubes.

#ifndef BHCYCLE_CONSTRUCT_HPP_
#define BHCYCLE_CONSTRUCT_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bhcycle/faults.hpp"
#include "bhcycle/pathfinder.hpp"
#include "bhcycle/paths.hpp"
#include "bhcycle/topology.hpp"

namespace bhc {

struct TraceEntry {
  int level = 0;  // 0 = top-level call
  std::string label;
  int split_dimension = -1;
  // Faults per component in the subcase's own numbering (component 0 holds
  // the prescribed edge, or its exit endpoint for a crossing edge).
  std::array<int, 4> component_faults{};
  int cross_faults = 0;
  int orientation = 1;  // +1 / -1: direction of the ring relative to labels
  int padded = 0;       // virtual faults added to reach 4n-5
};

// Pre-order list of every subproblem solved, one entry per call.
struct CaseTrace {
  std::vector<TraceEntry> entries;

  std::vector<std::string> labels() const;
  std::string top_label() const { return entries.empty() ? "" : entries.front().label; }
  int depth() const;
};

// Every label the constructor can emit.
std::span<const std::string_view> case_vocabulary();
bool in_vocabulary(std::string_view label);

// Checks the component fault counts recorded for a label against the
// branch condition that selects it. `n` is the dimension at that level.
bool guard_holds(const TraceEntry& entry, int n);

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A sub-search the induction guarantees to succeed did not.
class OracleFailure : public std::runtime_error {
 public:
  OracleFailure(const std::string& what, CaseTrace trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const CaseTrace& trace() const { return trace_; }

 private:
  CaseTrace trace_;
};

// Construction failed and at least one sub-search ran out of budget.
class BudgetExhausted : public OracleFailure {
 public:
  using OracleFailure::OracleFailure;
};

class StitchError : public std::runtime_error {
 public:
  enum class Kind { kEndpointMismatch, kCoverageGap, kBadLink };
  StitchError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct ConstructOptions {
  SearchBudget budget = SearchBudget::from_env();
  // Upper bound on alternatives tried at any single choice point.
  int max_alternatives = 64;
};

struct ConstructStats {
  std::uint64_t recursive_calls = 0;
  std::uint64_t path_searches = 0;
  std::uint64_t search_nodes = 0;
  std::uint64_t rejected_alternatives = 0;
  std::uint64_t precondition_misses = 0;  // oracle fault budgets exceeded at a call site
};

struct Construction {
  HamCycle cycle;
  CaseTrace trace;
  ConstructStats stats;
};

// Exhaustive search on BH_2. Throws PreconditionError for |f| > 3, a
// non-conditional f, or a faulty e; OracleFailure if no cycle is found.
HamCycle base_case_bh2(const FaultSet& f, const Edge& e, const SearchBudget& budget = {});

// Throws PreconditionError, BudgetExhausted or OracleFailure. The returned cycle has been
// checked with verify_ham_cycle.
Construction construct_ham_cycle(const Topology& t, const FaultSet& f, const Edge& e,
                                 const ConstructOptions& opt = {});

// Joins segments into one cycle using the links; a one-vertex segment takes
// two links. Throws StitchError.
HamCycle stitch(const Topology& t, const FaultSet& f, std::span<const Path> segments,
                std::span<const Edge> links);

// True when segments with these endpoint pairs and links close into a single
// cycle (no vertex lists needed).
bool forms_single_cycle(std::span<const std::pair<Vertex, Vertex>> segment_ends,
                        std::span<const Edge> links);

// Label of the top-level branch the constructor will enter for (f, e),
// computed from the branch predicates alone. Leaf suffixes that depend on
// intermediate cycles are not included.
std::string predict_branch(const Topology& t, const FaultSet& f, const Edge& e);

struct BranchInstance {
  FaultSet faults;
  Edge edge;
  std::uint64_t seed = 0;  // generator seed that produced `faults`
  CaseTrace trace;
};

// Searches seeded fault sets (component-loaded and clustered) for an
// instance whose top-level trace label is `label` (a vocabulary entry) or
// starts with it (a family prefix such as "1.2"). Returns nullopt
// after `attempts` fault sets.
std::optional<BranchInstance> find_branch_instance(const Topology& t, std::string_view label,
                                                   std::uint64_t seed, int attempts = 2000,
                                                   const ConstructOptions& opt = {});

}  // namespace bhc

#endif  // BHCYCLE_CONSTRUCT_HPP_
