#pragma once

#include "saunf/circuit.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace saunf
{

/// Rooted Boolean DAG that may contain NOT nodes. Children may be referenced
/// in any order; negation_normalize rejects cycles.
struct RawCircuit
{
  enum class Op : std::uint8_t
  {
    leaf,
    op_not,
    op_and,
    op_or
  };
  struct Node
  {
    Op op = Op::leaf;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    Label label;
  };

  std::vector<Node> nodes;
  std::uint32_t root = 0;

  std::uint32_t add_leaf( Label l );
  std::uint32_t add_literal( Literal lit ) { return add_leaf( Label::of( lit ) ); }
  std::uint32_t add_constant( bool v ) { return add_leaf( Label::constant( v ) ); }
  std::uint32_t add_not( std::uint32_t a );
  std::uint32_t add_and( std::uint32_t a, std::uint32_t b );
  std::uint32_t add_or( std::uint32_t a, std::uint32_t b );
  /// Expands to OR(AND(a, NOT b), AND(NOT a, b)).
  std::uint32_t add_xor( std::uint32_t a, std::uint32_t b );
  std::uint32_t add_xnor( std::uint32_t a, std::uint32_t b ) { return add_not( add_xor( a, b ) ); }
};

/// Push negations to the leaves. Each raw node yields at most one positive and
/// one negative NNF node, so the result has at most twice as many nodes.
Circuit negation_normalize( const RawCircuit& raw );

/// Leaf relabeling request. Literal entries select every leaf carrying that
/// literal in the input circuit; leaf entries are applied afterwards and win.
struct Relabeling
{
  std::vector<std::pair<Literal, Label>> literals;
  std::vector<std::pair<LeafId, Label>> leaves;

  Relabeling& set( Literal lit, Label to )
  {
    literals.emplace_back( lit, to );
    return *this;
  }
  Relabeling& set( LeafId leaf, Label to )
  {
    leaves.emplace_back( leaf, to );
    return *this;
  }
  Relabeling& set( const LeafSet& set_, Label to );
};

Circuit relabel( const Circuit& g, const Relabeling& r );

/// G|_{ℓ=w, ¬ℓ=w'}.
Circuit cofactor( const Circuit& g, Literal lit, bool w, bool w_neg );

/// G|_{L1:⊤,...,Lk:⊤}.
Circuit relabel_true( const Circuit& g, std::span<const LeafSet> sets );

/// Throws PreconditionError if a leaf variable is unassigned.
bool evaluate( const Circuit& g, const Assignment& sigma );

struct SimplifyResult
{
  Circuit circuit;
  /// Indexed by original LeafId: the surviving LeafId or kNoLeaf when the leaf
  /// was absorbed by constant propagation.
  std::vector<LeafId> leaf_map;

  LeafSet map_set( const LeafSet& set ) const;
};

/// Constant propagation. The result either is a single constant leaf or has no
/// constant leaves at all. Structural hashing may merge gates but never leaves.
///
/// A gate whose children are complementary leaves over a variable in
/// `fixed_vars` has a constant output and is replaced by that constant. Only
/// pass variables that no leaf-set relabeling will ever touch (inputs):
/// merging x-leaves of outputs would change realizability, not semantics.
SimplifyResult cprop_simp( const Circuit& g, std::span<const VarId> fixed_vars = {} );

struct PositiveForm
{
  Circuit circuit;
  /// (x, x') pairs for every output x, in the order given.
  std::vector<std::pair<VarId, VarId>> renaming;
};

/// G⁻: every ¬x leaf for x in `outputs` becomes a leaf labeled x'. `fresh`
/// supplies new variable ids.
PositiveForm positive_form( const Circuit& g, std::span<const VarId> outputs, const std::function<VarId()>& fresh );

/// G⁺ = ∧_i ((x'_i ∧ ¬x_i) ∨ (¬x'_i ∧ x_i)).
Circuit polarity_constraint( std::span<const std::pair<VarId, VarId>> renaming );

struct GadgetResult
{
  Circuit circuit;
  /// Indexed by original LeafId: the LeafId in the new circuit holding the
  /// original label (for gadget leaves, the ℓ-leaf of ℓ ∧ p).
  std::vector<LeafId> leaf_map;
  /// Indexed by original LeafId: the p-leaf of its gadget, or kNoLeaf.
  std::vector<LeafId> aux_leaf;
};

/// Replace every leaf in `set` (all labeled ℓ) by AND(ℓ, p).
GadgetResult gadget_conjoin( const Circuit& g, const LeafSet& set, Literal p );

/// Gadgets on several literal-consistent sets at once; each set has its own
/// gadget literal.
GadgetResult gadget_conjoin( const Circuit& g, std::span<const std::pair<LeafSet, Literal>> sets );

/// Copy `g` into `builder`, routing every leaf through `map_leaf`, which
/// returns the builder node standing for that leaf.
NodeRef import_mapped( CircuitBuilder& builder, const Circuit& g, const std::function<NodeRef( LeafId, const Label& )>& map_leaf );

/// Memoized De Morgan dual of nodes inside one builder: negate(n) represents ¬n.
class Negator
{
public:
  /// With `share_leaves`, negated leaves come from CircuitBuilder::shared_leaf.
  explicit Negator( CircuitBuilder& builder, bool share_leaves = false ) : builder_( builder ), share_leaves_( share_leaves ) {}
  NodeRef negate( NodeRef n );

private:
  CircuitBuilder& builder_;
  bool share_leaves_;
  std::vector<NodeRef> memo_;
};

} // namespace saunf
