#pragma once

#include "saunf/normal_forms.hpp"
#include "saunf/spec.hpp"

#include <map>
#include <optional>

namespace saunf
{

/// One function of the inputs per variable, all rooted in one shared DAG.
struct SkolemVector
{
  SharedCircuit dag;
  std::vector<VarId> vars;
  std::vector<NodeRef> roots;
  /// Auxiliary p_r introduced by SkGen, mapped to its level r (1-based).
  std::map<VarId, std::size_t> aux_level;

  std::optional<std::size_t> position( VarId v ) const;
  bool covers( VarId v ) const { return position( v ).has_value(); }
  /// Standalone copy of the function for `v`.
  Circuit function( VarId v ) const;
  /// Nodes in the shared DAG.
  std::size_t size() const { return dag.size(); }
};

/// Pack standalone circuits into one shared DAG (inputs leaves shared).
SkolemVector make_skolem_vector( std::vector<VarId> vars, const std::vector<Circuit>& functions );

/// Value of every component under an input assignment.
std::map<VarId, bool> evaluate_skolem( const SkolemVector& psi, const Assignment& inputs );

struct TraceLevel
{
  /// Empty when every leaf of S_r was absorbed by earlier simplification.
  std::optional<Literal> lit;
  VarId aux = 0;
  Circuit e;
  Circuit h;
  /// S_r as leaves of the level's input circuit G(r).
  LeafSet set;
};

struct SynthesisTrace
{
  std::vector<TraceLevel> levels;
};

struct SkGenOptions
{
  /// Run check_saunf before synthesis and throw on failure.
  bool verify_witness = true;
};

struct SkGenResult
{
  SkolemVector psi;
  SynthesisTrace trace;
};

/// SkGen. The vector lists spec.outputs in declared order; the
/// terminal level assigns ⊥ to everything. `seq` may be empty when `spec`
/// is independent of its outputs.
SkGenResult skgen( const Spec& spec, const LeafSequence& seq, const SkGenOptions& options = {},
                   const SatOracle& oracle = default_oracle() );

/// E|_{ℓ=⊤,¬ℓ=⊥} with psi_h wired into the remaining non-input leaves.
/// Throws PreconditionError when a non-input variable other than v_ℓ is not
/// covered by psi_h.
Circuit self_substitute( const Circuit& e, Literal lit, const SkolemVector& psi_h, std::span<const VarId> inputs );

/// G with every non-input leaf replaced by its Skolem function (or its
/// negation). Throws PreconditionError on uncovered variables.
Circuit substitute( const Circuit& g, const SkolemVector& psi, std::span<const VarId> inputs );

/// φ_G(X,I) ∧ ¬φ_G(Ψ(I),I) is unsatisfiable. Every non-input variable of the
/// circuit must be covered and every component may only read inputs.
bool verify_skolem( const Spec& spec, const SkolemVector& psi, const SatOracle& oracle = default_oracle() );

/// H = (F ∨ G) ∧ G' with its 2m-set witness over F's output leaves.
struct SaunfWitness
{
  Spec spec;
  LeafSequence seq;
};

SaunfWitness saunf_from_skolem( const Spec& spec, const SkolemVector& psi, const SatOracle& oracle = default_oracle() );

} // namespace saunf
