#pragma once

#include "saunf/normal_forms.hpp"
#include "saunf/spec.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <optional>

namespace saunf
{

using Clause = std::vector<Literal>;
/// Clause list; duplicates are kept. An empty clause makes the formula false.
using Cnf = std::vector<Clause>;

/// Clauses of an AND-of-ORs circuit. ⊤ inside an OR drops that clause, ⊥ is
/// skipped. Throws StructuralError on anything else (an OR above an AND).
Cnf cnf_clauses( const Circuit& g );

struct CnfCircuit
{
  Circuit circuit;
  /// leaf[c][k]: leaf of the k-th literal of clause c.
  std::vector<std::vector<LeafId>> leaf;
};

/// One fresh leaf per literal occurrence, clauses in order.
CnfCircuit cnf_circuit( const Cnf& cnf );

struct SubsetResult;

enum class HittingSetMode
{
  greedy,
  exact
};

struct CompileOptions
{
  HittingSetMode hitting_set = HittingSetMode::greedy;
  /// Cap on candidate subsets tried by the exact hitting-set search.
  std::size_t exact_cap = 100000;
  /// GetSubset loop cap per call; on expiry it returns ∅.
  std::size_t subset_max_iterations = 256;
  /// GetSubset wall-clock cap per call in ms (0 = none); on expiry ∅.
  std::uint64_t subset_timeout_ms = 0;
  /// Whole-compilation cap in ms (0 = none); on expiry ResourceError.
  std::uint64_t timeout_ms = 0;
  /// Run the two Shannon branches concurrently.
  bool parallel = false;
  /// Check equivalence and membership of the result.
  bool certify = true;
  /// Sees every GetSubset result before the realizability guard. Called from
  /// worker threads when `parallel` is set.
  std::function<void( const Cnf&, Literal, const SubsetResult& )> on_subset;
};

struct CompileStats
{
  std::atomic<std::size_t> calls{ 0 };
  std::atomic<std::size_t> shannon_splits{ 0 };
  std::atomic<std::size_t> subset_calls{ 0 };
  std::atomic<std::size_t> subset_iterations{ 0 };
  std::atomic<std::size_t> subset_timeouts{ 0 };
  std::atomic<std::size_t> empty_subsets{ 0 };
  std::atomic<std::size_t> max_depth{ 0 };

  std::string summary() const;
};

/// Deterministic literal choice: the output literal labeling the most leaves,
/// ties to the lowest variable, positive first. Throws PreconditionError if
/// no output literal labels a leaf.
Literal choose_literal( const Circuit& g, std::span<const VarId> outputs );

/// A clause subset hitting every member of `all_s` and satisfiable together
/// with lit=⊥, minimal under single removal. nullopt when none is found.
std::optional<std::vector<std::size_t>> satisfiable_hitting_set( const std::vector<std::vector<std::size_t>>& all_s,
                                                                 const Cnf& cnf, Literal lit,
                                                                 const CompileOptions& options = {},
                                                                 const SatOracle& oracle = default_oracle() );

struct SubsetResult
{
  /// Leaves of cnf_circuit(cnf).
  LeafSet set;
  bool timed_out = false;
  /// Realizability witnesses found (|AllS|).
  std::size_t iterations = 0;
};

/// GetSubset on cnf_circuit(cnf).
SubsetResult get_subset( const Cnf& cnf, Literal lit, const CompileOptions& options = {},
                         const SatOracle& oracle = default_oracle() );

struct CompileResult
{
  Spec spec;
  LeafSequence seq;
  std::shared_ptr<CompileStats> stats;
};

/// GetSaunf: a SAUNF circuit equivalent to the CNF spec with its witness.
CompileResult get_saunf( const Spec& cnf_spec, const CompileOptions& options = {},
                         const SatOracle& oracle = default_oracle() );

} // namespace saunf
