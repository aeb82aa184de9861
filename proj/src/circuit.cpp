#include "saunf/circuit.hpp"

#include "saunf/error.hpp"

#include <algorithm>

namespace saunf
{

namespace
{

std::size_t hash_combine( std::size_t seed, std::size_t v )
{
  return seed ^ ( v + 0x9e3779b97f4a7c15ull + ( seed << 6 ) + ( seed >> 2 ) );
}

std::size_t label_key( const Label& l )
{
  if ( l.is_constant() )
  {
    return l.constant_value() ? 1 : 0;
  }
  return 2 + ( std::size_t{ l.literal().var } << 1 ) + ( l.literal().negated ? 1 : 0 );
}

} // namespace

Circuit::Circuit()
{
  nodes_.push_back( Node{ Gate::leaf, 0, 0, leaf_id( 0 ) } );
  labels_.push_back( Label::constant( false ) );
  leaf_nodes_.push_back( 0 );
}

std::string Circuit::leaf_name( LeafId leaf ) const
{
  if ( !names_.empty() && !names_[index( leaf )].empty() )
  {
    return names_[index( leaf )];
  }
  return "L" + std::to_string( index( leaf ) );
}

std::vector<LeafId> Circuit::leaves_labeled( Literal lit ) const
{
  std::vector<LeafId> out;
  for ( std::uint32_t i = 0; i < labels_.size(); ++i )
  {
    if ( labels_[i].is( lit ) )
    {
      out.push_back( leaf_id( i ) );
    }
  }
  return out;
}

std::vector<VarId> Circuit::variables() const
{
  std::vector<VarId> vars;
  for ( const auto& l : labels_ )
  {
    if ( l.is_literal() )
    {
      vars.push_back( l.literal().var );
    }
  }
  std::sort( vars.begin(), vars.end() );
  vars.erase( std::unique( vars.begin(), vars.end() ), vars.end() );
  return vars;
}

bool Circuit::mentions( VarId v ) const
{
  return std::any_of( labels_.begin(), labels_.end(), [v]( const Label& l ) { return l.is_literal() && l.literal().var == v; } );
}

bool Circuit::is_constant() const
{
  return nodes_[root_].is_leaf() && labels_[index( nodes_[root_].leaf )].is_constant();
}

bool Circuit::constant_value() const
{
  return labels_[index( nodes_[root_].leaf )].constant_value();
}

bool operator==( const Circuit& a, const Circuit& b )
{
  return a.root_ == b.root_ && a.nodes_ == b.nodes_ && a.labels_ == b.labels_;
}

std::size_t Circuit::structural_hash() const
{
  std::size_t h = std::hash<std::size_t>{}( root_ );
  for ( const auto& n : nodes_ )
  {
    h = hash_combine( h, static_cast<std::size_t>( n.gate ) );
    h = hash_combine( h, n.is_leaf() ? label_key( labels_[index( n.leaf )] ) : ( std::size_t{ n.lhs } << 32 ) ^ n.rhs );
  }
  return h;
}

Circuit relabel_leaves( const Circuit& circuit, std::span<const Label> labels )
{
  if ( labels.size() != circuit.num_leaves() )
  {
    throw PreconditionError( "relabel: label vector does not match leaf count" );
  }
  Circuit out = circuit;
  out.labels_.assign( labels.begin(), labels.end() );
  return out;
}

Circuit SharedCircuit::cone( NodeRef root ) const
{
  std::vector<char> live( root + 1, 0 );
  live[root] = 1;
  for ( NodeRef n = root + 1; n-- > 0; )
  {
    if ( live[n] && !nodes_[n].is_leaf() )
    {
      live[nodes_[n].lhs] = 1;
      live[nodes_[n].rhs] = 1;
    }
  }

  Circuit out;
  out.nodes_.clear();
  out.labels_.clear();
  out.leaf_nodes_.clear();
  std::vector<NodeRef> remap( root + 1, 0 );
  for ( NodeRef n = 0; n <= root; ++n )
  {
    if ( !live[n] )
    {
      continue;
    }
    remap[n] = static_cast<NodeRef>( out.nodes_.size() );
    const auto& node = nodes_[n];
    if ( node.is_leaf() )
    {
      auto id = leaf_id( static_cast<std::uint32_t>( out.labels_.size() ) );
      out.labels_.push_back( labels_[index( node.leaf )] );
      out.leaf_nodes_.push_back( remap[n] );
      out.nodes_.push_back( Node{ Gate::leaf, 0, 0, id } );
    }
    else
    {
      out.nodes_.push_back( Node{ node.gate, remap[node.lhs], remap[node.rhs], kNoLeaf } );
    }
  }
  out.root_ = remap[root];
  return out;
}

std::size_t SharedCircuit::cone_size( NodeRef root ) const
{
  std::vector<char> live( root + 1, 0 );
  live[root] = 1;
  std::size_t count = 0;
  for ( NodeRef n = root + 1; n-- > 0; )
  {
    if ( live[n] )
    {
      ++count;
      if ( !nodes_[n].is_leaf() )
      {
        live[nodes_[n].lhs] = 1;
        live[nodes_[n].rhs] = 1;
      }
    }
  }
  return count;
}

std::size_t CircuitBuilder::GateKeyHash::operator()( const GateKey& k ) const noexcept
{
  return hash_combine( hash_combine( static_cast<std::size_t>( k.gate ), k.lhs ), k.rhs );
}

CircuitBuilder::CircuitBuilder( BuilderOptions options ) : options_( options ) {}

NodeRef CircuitBuilder::leaf( Label label, std::string name )
{
  if ( options_.share_leaves && name.empty() )
  {
    return shared_leaf( label );
  }
  auto ref = static_cast<NodeRef>( nodes_.size() );
  nodes_.push_back( Node{ Gate::leaf, 0, 0, leaf_id( static_cast<std::uint32_t>( labels_.size() ) ) } );
  labels_.push_back( label );
  any_name_ = any_name_ || !name.empty();
  names_.push_back( std::move( name ) );
  return ref;
}

NodeRef CircuitBuilder::shared_leaf( Label label )
{
  auto& bucket = shared_leaves_[label_key( label )];
  for ( auto n : bucket )
  {
    if ( labels_[index( nodes_[n].leaf )] == label )
    {
      return n;
    }
  }
  auto ref = static_cast<NodeRef>( nodes_.size() );
  nodes_.push_back( Node{ Gate::leaf, 0, 0, leaf_id( static_cast<std::uint32_t>( labels_.size() ) ) } );
  labels_.push_back( label );
  names_.emplace_back();
  shared_leaves_[label_key( label )].push_back( ref );
  return ref;
}

bool CircuitBuilder::is_constant( NodeRef n, bool value ) const
{
  if ( !nodes_[n].is_leaf() )
  {
    return false;
  }
  const auto& l = labels_[index( nodes_[n].leaf )];
  return l.is_constant() && l.constant_value() == value;
}

NodeRef CircuitBuilder::gate( Gate g, NodeRef lhs, NodeRef rhs )
{
  if ( options_.fold_constants )
  {
    return fold_gate( g, lhs, rhs );
  }
  return raw_gate( g, lhs, rhs );
}

NodeRef CircuitBuilder::fold_gate( Gate g, NodeRef lhs, NodeRef rhs )
{
  bool absorbing = g == Gate::disj; // value that dominates the gate
  if ( is_constant( lhs, absorbing ) )
  {
    return lhs;
  }
  if ( is_constant( rhs, absorbing ) )
  {
    return rhs;
  }
  if ( is_constant( lhs, !absorbing ) )
  {
    return rhs;
  }
  if ( is_constant( rhs, !absorbing ) )
  {
    return lhs;
  }
  if ( lhs == rhs )
  {
    return lhs;
  }
  return raw_gate( g, lhs, rhs );
}

NodeRef CircuitBuilder::raw_gate( Gate g, NodeRef lhs, NodeRef rhs )
{
  if ( g == Gate::leaf || lhs >= nodes_.size() || rhs >= nodes_.size() )
  {
    throw StructuralError( "gate references an unknown node" );
  }
  GateKey key{ g, lhs, rhs };
  if ( auto it = gates_.find( key ); it != gates_.end() )
  {
    return it->second;
  }
  auto ref = static_cast<NodeRef>( nodes_.size() );
  nodes_.push_back( Node{ g, lhs, rhs, kNoLeaf } );
  gates_.emplace( key, ref );
  return ref;
}

NodeRef CircuitBuilder::balanced( Gate g, std::span<const NodeRef> operands )
{
  if ( operands.empty() )
  {
    return constant( g == Gate::conj );
  }
  if ( operands.size() == 1 )
  {
    return operands[0];
  }
  auto mid = operands.size() / 2;
  auto l = balanced( g, operands.subspan( 0, mid ) );
  auto r = balanced( g, operands.subspan( mid ) );
  return gate( g, l, r );
}

NodeRef CircuitBuilder::conjunction( std::span<const NodeRef> operands )
{
  return balanced( Gate::conj, operands );
}

NodeRef CircuitBuilder::disjunction( std::span<const NodeRef> operands )
{
  return balanced( Gate::disj, operands );
}

NodeRef CircuitBuilder::import( const Circuit& circuit, std::vector<NodeRef>* leaf_nodes )
{
  std::vector<NodeRef> map( circuit.size() );
  if ( leaf_nodes )
  {
    leaf_nodes->assign( circuit.num_leaves(), 0 );
  }
  for ( NodeRef n = 0; n < circuit.size(); ++n )
  {
    const auto& node = circuit.node( n );
    if ( node.is_leaf() )
    {
      std::string name = circuit.has_custom_names() ? circuit.leaf_name( node.leaf ) : std::string{};
      map[n] = leaf( circuit.label( node.leaf ), std::move( name ) );
      if ( leaf_nodes )
      {
        ( *leaf_nodes )[index( node.leaf )] = map[n];
      }
    }
    else
    {
      map[n] = gate( node.gate, map[node.lhs], map[node.rhs] );
    }
  }
  return map[circuit.root()];
}

std::vector<NodeRef> CircuitBuilder::reachable( std::span<const NodeRef> roots ) const
{
  std::vector<char> live( nodes_.size(), 0 );
  NodeRef top = 0;
  for ( auto r : roots )
  {
    if ( r >= nodes_.size() )
    {
      throw StructuralError( "root references an unknown node" );
    }
    live[r] = 1;
    top = std::max( top, r );
  }
  for ( NodeRef n = top + 1; n-- > 0; )
  {
    if ( live[n] && !nodes_[n].is_leaf() )
    {
      live[nodes_[n].lhs] = 1;
      live[nodes_[n].rhs] = 1;
    }
  }
  std::vector<NodeRef> order;
  for ( NodeRef n = 0; n <= top; ++n )
  {
    if ( live[n] )
    {
      order.push_back( n );
    }
  }
  return order;
}

Circuit CircuitBuilder::build( NodeRef root, std::vector<LeafId>* leaf_of_node ) const
{
  NodeRef roots[] = { root };
  auto order = reachable( roots );

  Circuit out;
  out.nodes_.clear();
  out.labels_.clear();
  out.leaf_nodes_.clear();
  if ( leaf_of_node )
  {
    leaf_of_node->assign( nodes_.size(), kNoLeaf );
  }
  std::vector<NodeRef> remap( nodes_.size(), 0 );
  for ( auto n : order )
  {
    remap[n] = static_cast<NodeRef>( out.nodes_.size() );
    const auto& node = nodes_[n];
    if ( node.is_leaf() )
    {
      auto id = leaf_id( static_cast<std::uint32_t>( out.labels_.size() ) );
      out.labels_.push_back( labels_[index( node.leaf )] );
      out.leaf_nodes_.push_back( remap[n] );
      if ( any_name_ )
      {
        out.names_.push_back( names_[index( node.leaf )] );
      }
      out.nodes_.push_back( Node{ Gate::leaf, 0, 0, id } );
      if ( leaf_of_node )
      {
        ( *leaf_of_node )[n] = id;
      }
    }
    else
    {
      out.nodes_.push_back( Node{ node.gate, remap[node.lhs], remap[node.rhs], kNoLeaf } );
    }
  }
  out.root_ = remap[root];
  return out;
}

SharedCircuit CircuitBuilder::build_shared( std::vector<NodeRef>& roots ) const
{
  SharedCircuit out;
  if ( roots.empty() )
  {
    return out;
  }
  auto order = reachable( roots );
  std::vector<NodeRef> remap( nodes_.size(), 0 );
  for ( auto n : order )
  {
    remap[n] = static_cast<NodeRef>( out.nodes_.size() );
    const auto& node = nodes_[n];
    if ( node.is_leaf() )
    {
      auto id = leaf_id( static_cast<std::uint32_t>( out.labels_.size() ) );
      out.labels_.push_back( labels_[index( node.leaf )] );
      out.nodes_.push_back( Node{ Gate::leaf, 0, 0, id } );
    }
    else
    {
      out.nodes_.push_back( Node{ node.gate, remap[node.lhs], remap[node.rhs], kNoLeaf } );
    }
  }
  for ( auto& r : roots )
  {
    r = remap[r];
  }
  return out;
}

LeafSet make_leaf_set( std::vector<LeafId> leaves )
{
  std::sort( leaves.begin(), leaves.end() );
  leaves.erase( std::unique( leaves.begin(), leaves.end() ), leaves.end() );
  return leaves;
}

std::optional<Literal> common_literal( const Circuit& circuit, const LeafSet& set )
{
  if ( set.empty() )
  {
    return std::nullopt;
  }
  const auto& first = circuit.label( set.front() );
  if ( !first.is_literal() )
  {
    return std::nullopt;
  }
  for ( auto leaf : set )
  {
    if ( !( circuit.label( leaf ) == first ) )
    {
      return std::nullopt;
    }
  }
  return first.literal();
}

} // namespace saunf
