#include "saunf/transforms.hpp"

#include "saunf/error.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <optional>

namespace saunf
{

std::uint32_t RawCircuit::add_leaf( Label l )
{
  nodes.push_back( Node{ Op::leaf, 0, 0, l } );
  return static_cast<std::uint32_t>( nodes.size() - 1 );
}

std::uint32_t RawCircuit::add_not( std::uint32_t a )
{
  nodes.push_back( Node{ Op::op_not, a, 0, {} } );
  return static_cast<std::uint32_t>( nodes.size() - 1 );
}

std::uint32_t RawCircuit::add_and( std::uint32_t a, std::uint32_t b )
{
  nodes.push_back( Node{ Op::op_and, a, b, {} } );
  return static_cast<std::uint32_t>( nodes.size() - 1 );
}

std::uint32_t RawCircuit::add_or( std::uint32_t a, std::uint32_t b )
{
  nodes.push_back( Node{ Op::op_or, a, b, {} } );
  return static_cast<std::uint32_t>( nodes.size() - 1 );
}

std::uint32_t RawCircuit::add_xor( std::uint32_t a, std::uint32_t b )
{
  return add_or( add_and( a, add_not( b ) ), add_and( add_not( a ), b ) );
}

namespace
{

Label negate_label( const Label& l )
{
  return l.is_constant() ? Label::constant( !l.constant_value() ) : Label::of( ~l.literal() );
}

// Post-order of the nodes reachable from the root; throws on cycles.
std::vector<std::uint32_t> raw_postorder( const RawCircuit& raw )
{
  if ( raw.root >= raw.nodes.size() )
  {
    throw StructuralError( "raw circuit root out of range" );
  }
  std::vector<std::uint8_t> state( raw.nodes.size(), 0 );
  std::vector<std::uint32_t> order;
  std::vector<std::pair<std::uint32_t, int>> stack{ { raw.root, 0 } };
  state[raw.root] = 1;
  while ( !stack.empty() )
  {
    auto& [n, next] = stack.back();
    const auto& node = raw.nodes[n];
    int arity = node.op == RawCircuit::Op::leaf ? 0 : node.op == RawCircuit::Op::op_not ? 1 : 2;
    if ( next < arity )
    {
      auto child = next == 0 ? node.a : node.b;
      ++next;
      if ( child >= raw.nodes.size() )
      {
        throw StructuralError( "raw circuit references an unknown node" );
      }
      if ( state[child] == 1 )
      {
        throw StructuralError( "raw circuit contains a cycle" );
      }
      if ( state[child] == 0 )
      {
        state[child] = 1;
        stack.emplace_back( child, 0 );
      }
      continue;
    }
    state[n] = 2;
    order.push_back( n );
    stack.pop_back();
  }
  return order;
}

} // namespace

Circuit negation_normalize( const RawCircuit& raw )
{
  using Op = RawCircuit::Op;
  auto order = raw_postorder( raw );

  // need[n][0]: positive form used, need[n][1]: negative form used
  std::vector<std::array<bool, 2>> need( raw.nodes.size(), { false, false } );
  need[raw.root][0] = true;
  for ( auto it = order.rbegin(); it != order.rend(); ++it )
  {
    const auto& node = raw.nodes[*it];
    for ( int p = 0; p < 2; ++p )
    {
      if ( !need[*it][p] )
      {
        continue;
      }
      if ( node.op == Op::op_not )
      {
        need[node.a][1 - p] = true;
      }
      else if ( node.op != Op::leaf )
      {
        need[node.a][p] = true;
        need[node.b][p] = true;
      }
    }
  }

  CircuitBuilder builder;
  std::vector<std::array<NodeRef, 2>> res( raw.nodes.size() );
  for ( auto n : order )
  {
    const auto& node = raw.nodes[n];
    for ( int p = 0; p < 2; ++p )
    {
      if ( !need[n][p] )
      {
        continue;
      }
      switch ( node.op )
      {
      case Op::leaf:
        res[n][p] = builder.leaf( p == 0 ? node.label : negate_label( node.label ) );
        break;
      case Op::op_not:
        res[n][p] = res[node.a][1 - p];
        break;
      case Op::op_and:
        res[n][p] = builder.gate( p == 0 ? Gate::conj : Gate::disj, res[node.a][p], res[node.b][p] );
        break;
      case Op::op_or:
        res[n][p] = builder.gate( p == 0 ? Gate::disj : Gate::conj, res[node.a][p], res[node.b][p] );
        break;
      }
    }
  }
  return builder.build( res[raw.root][0] );
}

Relabeling& Relabeling::set( const LeafSet& set_, Label to )
{
  for ( auto leaf : set_ )
  {
    leaves.emplace_back( leaf, to );
  }
  return *this;
}

Circuit relabel( const Circuit& g, const Relabeling& r )
{
  std::vector<Label> labels( g.labels().begin(), g.labels().end() );
  for ( const auto& [lit, to] : r.literals )
  {
    for ( std::size_t i = 0; i < labels.size(); ++i )
    {
      if ( g.labels()[i].is( lit ) )
      {
        labels[i] = to;
      }
    }
  }
  for ( const auto& [leaf, to] : r.leaves )
  {
    if ( !g.has_leaf( leaf ) )
    {
      throw PreconditionError( "relabel: unknown leaf " + std::to_string( index( leaf ) ) );
    }
    labels[index( leaf )] = to;
  }
  return relabel_leaves( g, labels );
}

Circuit cofactor( const Circuit& g, Literal lit, bool w, bool w_neg )
{
  Relabeling r;
  r.set( lit, Label::constant( w ) ).set( ~lit, Label::constant( w_neg ) );
  return relabel( g, r );
}

Circuit relabel_true( const Circuit& g, std::span<const LeafSet> sets )
{
  Relabeling r;
  for ( const auto& s : sets )
  {
    r.set( s, Label::constant( true ) );
  }
  return relabel( g, r );
}

bool evaluate( const Circuit& g, const Assignment& sigma )
{
  std::vector<char> value( g.size() );
  for ( NodeRef n = 0; n < g.size(); ++n )
  {
    const auto& node = g.node( n );
    switch ( node.gate )
    {
    case Gate::leaf:
    {
      const auto& l = g.label( node.leaf );
      value[n] = l.is_constant() ? l.constant_value() : sigma.value_of( l.literal() );
      break;
    }
    case Gate::conj:
      value[n] = value[node.lhs] && value[node.rhs];
      break;
    case Gate::disj:
      value[n] = value[node.lhs] || value[node.rhs];
      break;
    }
  }
  return value[g.root()];
}

LeafSet SimplifyResult::map_set( const LeafSet& set ) const
{
  LeafSet out;
  for ( auto leaf : set )
  {
    if ( index( leaf ) < leaf_map.size() && leaf_map[index( leaf )] != kNoLeaf )
    {
      out.push_back( leaf_map[index( leaf )] );
    }
  }
  return make_leaf_set( std::move( out ) );
}

SimplifyResult cprop_simp( const Circuit& g, std::span<const VarId> fixed_vars )
{
  CircuitBuilder builder( { .share_leaves = false, .fold_constants = true } );
  std::vector<NodeRef> leaf_nodes( g.num_leaves() );
  std::vector<NodeRef> map( g.size() );
  auto complementary = [&]( NodeRef a, NodeRef b ) {
    if ( fixed_vars.empty() || !builder.is_leaf( a ) || !builder.is_leaf( b ) )
    {
      return false;
    }
    const auto& la = builder.label( a );
    const auto& lb = builder.label( b );
    return la.is_literal() && lb.is( ~la.literal() ) &&
           std::find( fixed_vars.begin(), fixed_vars.end(), la.literal().var ) != fixed_vars.end();
  };
  for ( NodeRef n = 0; n < g.size(); ++n )
  {
    const auto& node = g.node( n );
    if ( node.is_leaf() )
    {
      std::string name = g.has_custom_names() ? g.leaf_name( node.leaf ) : std::string{};
      map[n] = leaf_nodes[index( node.leaf )] = builder.leaf( g.label( node.leaf ), std::move( name ) );
    }
    else if ( complementary( map[node.lhs], map[node.rhs] ) )
    {
      map[n] = builder.constant( node.gate == Gate::disj );
    }
    else
    {
      map[n] = builder.gate( node.gate, map[node.lhs], map[node.rhs] );
    }
  }
  auto root = map[g.root()];
  std::vector<LeafId> leaf_of_node;
  SimplifyResult result{ builder.build( root, &leaf_of_node ), {} };
  result.leaf_map.resize( g.num_leaves(), kNoLeaf );
  for ( std::size_t i = 0; i < leaf_nodes.size(); ++i )
  {
    result.leaf_map[i] = leaf_of_node[leaf_nodes[i]];
  }
  return result;
}

PositiveForm positive_form( const Circuit& g, std::span<const VarId> outputs, const std::function<VarId()>& fresh )
{
  PositiveForm out;
  Relabeling r;
  for ( auto x : outputs )
  {
    if ( g.leaves_labeled( Literal::neg( x ) ).empty() )
    {
      continue;
    }
    auto xp = fresh();
    out.renaming.emplace_back( x, xp );
    r.set( Literal::neg( x ), Label::of( Literal::pos( xp ) ) );
  }
  out.circuit = relabel( g, r );
  return out;
}

Circuit polarity_constraint( std::span<const std::pair<VarId, VarId>> renaming )
{
  CircuitBuilder b;
  std::vector<NodeRef> terms;
  for ( const auto& [x, xp] : renaming )
  {
    auto a = b.literal( Literal::pos( xp ) );
    auto c = b.literal( Literal::neg( x ) );
    auto left = b.make_and( a, c );
    auto d = b.literal( Literal::neg( xp ) );
    auto e = b.literal( Literal::pos( x ) );
    auto right = b.make_and( d, e );
    terms.push_back( b.make_or( left, right ) );
  }
  return b.build( b.conjunction( terms ) );
}

GadgetResult gadget_conjoin( const Circuit& g, const LeafSet& set, Literal p )
{
  std::pair<LeafSet, Literal> one[] = { { set, p } };
  return gadget_conjoin( g, one );
}

GadgetResult gadget_conjoin( const Circuit& g, std::span<const std::pair<LeafSet, Literal>> sets )
{
  std::vector<std::optional<Literal>> gadget( g.num_leaves() );
  for ( const auto& [set, p] : sets )
  {
    for ( auto leaf : set )
    {
      if ( !g.has_leaf( leaf ) )
      {
        throw PreconditionError( "gadget: unknown leaf " + std::to_string( index( leaf ) ) );
      }
      if ( gadget[index( leaf )] )
      {
        throw PreconditionError( "gadget: leaf sets overlap" );
      }
      gadget[index( leaf )] = p;
    }
    if ( !set.empty() && !common_literal( g, set ) )
    {
      throw PreconditionError( "gadget: leaf set is not literal-consistent" );
    }
  }

  CircuitBuilder b;
  std::vector<NodeRef> lit_node( g.num_leaves() ), aux_node( g.num_leaves(), 0 );
  auto root = import_mapped( b, g, [&]( LeafId leaf, const Label& label ) {
    auto i = index( leaf );
    std::string name = g.has_custom_names() ? g.leaf_name( leaf ) : std::string{};
    lit_node[i] = b.leaf( label, std::move( name ) );
    if ( !gadget[i] )
    {
      return lit_node[i];
    }
    aux_node[i] = b.literal( *gadget[i] );
    return b.make_and( lit_node[i], aux_node[i] );
  } );

  std::vector<LeafId> leaf_of_node;
  GadgetResult out{ b.build( root, &leaf_of_node ), {}, {} };
  out.leaf_map.resize( g.num_leaves() );
  out.aux_leaf.assign( g.num_leaves(), kNoLeaf );
  for ( std::size_t i = 0; i < g.num_leaves(); ++i )
  {
    out.leaf_map[i] = leaf_of_node[lit_node[i]];
    if ( gadget[i] )
    {
      out.aux_leaf[i] = leaf_of_node[aux_node[i]];
    }
  }
  return out;
}

NodeRef import_mapped( CircuitBuilder& builder, const Circuit& g, const std::function<NodeRef( LeafId, const Label& )>& map_leaf )
{
  std::vector<NodeRef> map( g.size() );
  for ( NodeRef n = 0; n < g.size(); ++n )
  {
    const auto& node = g.node( n );
    map[n] = node.is_leaf() ? map_leaf( node.leaf, g.label( node.leaf ) ) : builder.gate( node.gate, map[node.lhs], map[node.rhs] );
  }
  return map[g.root()];
}

NodeRef Negator::negate( NodeRef n )
{
  constexpr NodeRef unset = std::numeric_limits<NodeRef>::max();
  std::vector<NodeRef> stack{ n };
  while ( !stack.empty() )
  {
    auto m = stack.back();
    if ( memo_.size() < builder_.size() )
    {
      memo_.resize( builder_.size(), unset );
    }
    if ( memo_[m] != unset )
    {
      stack.pop_back();
      continue;
    }
    const auto node = builder_.node( m );
    if ( node.is_leaf() )
    {
      auto label = negate_label( builder_.label( m ) );
      auto neg = share_leaves_ ? builder_.shared_leaf( label ) : builder_.leaf( label );
      memo_.resize( std::max<std::size_t>( memo_.size(), builder_.size() ), unset );
      memo_[m] = neg;
      if ( memo_[neg] == unset )
      {
        memo_[neg] = m;
      }
      stack.pop_back();
      continue;
    }
    bool ready = true;
    for ( auto c : { node.lhs, node.rhs } )
    {
      if ( memo_[c] == unset )
      {
        stack.push_back( c );
        ready = false;
      }
    }
    if ( !ready )
    {
      continue;
    }
    auto dual = node.gate == Gate::conj ? Gate::disj : Gate::conj;
    auto neg = builder_.gate( dual, memo_[node.lhs], memo_[node.rhs] );
    memo_.resize( std::max<std::size_t>( memo_.size(), builder_.size() ), unset );
    memo_[m] = neg;
    if ( memo_[neg] == unset )
    {
      memo_[neg] = m;
    }
    stack.pop_back();
  }
  return memo_[n];
}

} // namespace saunf
