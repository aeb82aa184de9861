#pragma once

#include "saunf/types.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace saunf
{

/// Index of a node inside a circuit or builder. Children always precede parents.
using NodeRef = std::uint32_t;

enum class Gate : std::uint8_t
{
  leaf,
  conj,
  disj
};

struct Node
{
  Gate gate = Gate::leaf;
  NodeRef lhs = 0;
  NodeRef rhs = 0;
  LeafId leaf = kNoLeaf; // valid iff gate == Gate::leaf

  bool is_leaf() const { return gate == Gate::leaf; }
  friend bool operator==( const Node&, const Node& ) = default;
};

/// Immutable NNF circuit: a rooted DAG of binary AND/OR nodes over labeled leaves.
///
/// Nodes are stored in topological order (children first) and every node is
/// reachable from the root. Leaves carry dense, stable identifiers; distinct
/// leaves may share a label.
class Circuit
{
public:
  /// Single constant-false leaf.
  Circuit();

  std::size_t size() const { return nodes_.size(); }
  std::size_t num_leaves() const { return labels_.size(); }
  NodeRef root() const { return root_; }

  const Node& node( NodeRef n ) const { return nodes_[n]; }
  std::span<const Node> nodes() const { return nodes_; }

  const Label& label( LeafId leaf ) const { return labels_[index( leaf )]; }
  std::span<const Label> labels() const { return labels_; }
  NodeRef leaf_node( LeafId leaf ) const { return leaf_nodes_[index( leaf )]; }
  bool has_leaf( LeafId leaf ) const { return index( leaf ) < labels_.size(); }

  /// Display name; defaults to "L<id>".
  std::string leaf_name( LeafId leaf ) const;
  bool has_custom_names() const { return !names_.empty(); }

  std::vector<LeafId> leaves_labeled( Literal lit ) const;
  /// Sorted, deduplicated variables appearing on leaves.
  std::vector<VarId> variables() const;
  bool mentions( VarId v ) const;

  bool is_constant() const;
  /// Only meaningful when is_constant().
  bool constant_value() const;

  std::size_t num_gates() const { return nodes_.size() - labels_.size(); }

  /// Structural equality: same nodes, labels and root. Names are ignored.
  friend bool operator==( const Circuit& a, const Circuit& b );

  std::size_t structural_hash() const;

private:
  friend class CircuitBuilder;
  friend class SharedCircuit;
  friend Circuit relabel_leaves( const Circuit&, std::span<const Label> );

  std::vector<Node> nodes_;
  std::vector<Label> labels_;
  std::vector<NodeRef> leaf_nodes_;
  std::vector<std::string> names_; // empty, or one per leaf
  NodeRef root_ = 0;
};

/// Same DAG with every leaf label replaced; `labels` is indexed by LeafId.
Circuit relabel_leaves( const Circuit& circuit, std::span<const Label> labels );

/// Several roots over one shared node store (used for Skolem vectors).
class SharedCircuit
{
public:
  SharedCircuit() = default;

  std::size_t size() const { return nodes_.size(); }
  std::span<const Node> nodes() const { return nodes_; }
  const Node& node( NodeRef n ) const { return nodes_[n]; }
  const Label& leaf_label( NodeRef n ) const { return labels_[index( nodes_[n].leaf )]; }
  std::span<const Label> labels() const { return labels_; }

  /// Sub-DAG reachable from `root` as a standalone circuit.
  Circuit cone( NodeRef root ) const;
  std::size_t cone_size( NodeRef root ) const;

private:
  friend class CircuitBuilder;

  std::vector<Node> nodes_;
  std::vector<Label> labels_;
};

struct BuilderOptions
{
  /// Reuse an existing leaf when a new one with the same label is requested.
  /// Off for circuits that carry leaf-set witnesses.
  bool share_leaves = false;
  /// Propagate constants while building gates (T&c -> c, F&c -> F, ...).
  bool fold_constants = false;
};

/// Single-threaded builder with structural hashing of gates.
///
/// Leaves are never merged unless BuilderOptions::share_leaves is set.
class CircuitBuilder
{
public:
  explicit CircuitBuilder( BuilderOptions options = {} );

  NodeRef leaf( Label label, std::string name = {} );
  NodeRef literal( Literal lit ) { return leaf( Label::of( lit ) ); }
  NodeRef constant( bool value ) { return leaf( Label::constant( value ) ); }
  /// Leaf reused by label whatever the options. Leaves made by leaf() with
  /// sharing off are never returned here.
  NodeRef shared_leaf( Label label );

  NodeRef gate( Gate g, NodeRef lhs, NodeRef rhs );
  NodeRef make_and( NodeRef lhs, NodeRef rhs ) { return gate( Gate::conj, lhs, rhs ); }
  NodeRef make_or( NodeRef lhs, NodeRef rhs ) { return gate( Gate::disj, lhs, rhs ); }
  /// Like gate() but always folds constants and x op x, whatever the options.
  NodeRef fold_gate( Gate g, NodeRef lhs, NodeRef rhs );

  /// Balanced binary trees; an empty span yields the neutral constant.
  NodeRef conjunction( std::span<const NodeRef> operands );
  NodeRef disjunction( std::span<const NodeRef> operands );

  /// Copy `circuit` into this builder. `leaf_nodes`, if given, receives the
  /// builder node of every leaf of `circuit` (indexed by LeafId).
  NodeRef import( const Circuit& circuit, std::vector<NodeRef>* leaf_nodes = nullptr );

  std::size_t size() const { return nodes_.size(); }
  const Node& node( NodeRef n ) const { return nodes_[n]; }
  bool is_leaf( NodeRef n ) const { return nodes_[n].is_leaf(); }
  const Label& label( NodeRef leaf_node ) const { return labels_[index( nodes_[leaf_node].leaf )]; }
  bool is_constant( NodeRef n, bool value ) const;

  /// Circuit rooted at `root` with unreachable nodes dropped. Leaves keep
  /// their relative creation order. `leaf_of_node`, if given, maps every
  /// builder node to its LeafId in the result (kNoLeaf otherwise).
  Circuit build( NodeRef root, std::vector<LeafId>* leaf_of_node = nullptr ) const;

  /// Shared store holding everything reachable from `roots`; `roots` is
  /// rewritten in place to the new node indices.
  SharedCircuit build_shared( std::vector<NodeRef>& roots ) const;

private:
  struct GateKey
  {
    Gate gate;
    NodeRef lhs;
    NodeRef rhs;
    friend bool operator==( const GateKey&, const GateKey& ) = default;
  };
  struct GateKeyHash
  {
    std::size_t operator()( const GateKey& k ) const noexcept;
  };

  NodeRef raw_gate( Gate g, NodeRef lhs, NodeRef rhs );
  NodeRef balanced( Gate g, std::span<const NodeRef> operands );
  std::vector<NodeRef> reachable( std::span<const NodeRef> roots ) const;

  BuilderOptions options_;
  std::vector<Node> nodes_;
  std::vector<Label> labels_;
  std::vector<std::string> names_;
  bool any_name_ = false;
  std::unordered_map<GateKey, NodeRef, GateKeyHash> gates_;
  std::unordered_map<std::size_t, std::vector<NodeRef>> shared_leaves_;
};

/// Leaf sets are kept sorted and duplicate-free.
using LeafSet = std::vector<LeafId>;
using LeafSequence = std::vector<LeafSet>;

LeafSet make_leaf_set( std::vector<LeafId> leaves );

/// The literal shared by every leaf of `set`, or nullopt when the set is empty,
/// mixed, or contains constants.
std::optional<Literal> common_literal( const Circuit& circuit, const LeafSet& set );

} // namespace saunf
