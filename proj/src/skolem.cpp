#include "saunf/skolem.hpp"

#include "saunf/error.hpp"
#include "saunf/transforms.hpp"
#include "saunf/tseitin.hpp"

#include <algorithm>
#include <set>

namespace saunf
{

std::optional<std::size_t> SkolemVector::position( VarId v ) const
{
  auto it = std::find( vars.begin(), vars.end(), v );
  if ( it == vars.end() )
  {
    return std::nullopt;
  }
  return static_cast<std::size_t>( it - vars.begin() );
}

Circuit SkolemVector::function( VarId v ) const
{
  auto pos = position( v );
  if ( !pos )
  {
    throw PreconditionError( "no Skolem function for v" + std::to_string( v ) );
  }
  return dag.cone( roots[*pos] );
}

namespace
{

using VarNodes = std::map<VarId, NodeRef>;

/// Copy every node of a shared DAG into `b`; leaves go through b.leaf().
std::vector<NodeRef> import_dag( CircuitBuilder& b, const SharedCircuit& dag )
{
  std::vector<NodeRef> map( dag.size() );
  for ( NodeRef n = 0; n < dag.size(); ++n )
  {
    const auto& node = dag.node( n );
    map[n] = node.is_leaf() ? b.leaf( dag.leaf_label( n ) ) : b.gate( node.gate, map[node.lhs], map[node.rhs] );
  }
  return map;
}

VarNodes import_vector( CircuitBuilder& b, const SkolemVector& psi )
{
  auto map = import_dag( b, psi.dag );
  VarNodes out;
  for ( std::size_t k = 0; k < psi.vars.size(); ++k )
  {
    out[psi.vars[k]] = map[psi.roots[k]];
  }
  return out;
}

/// Copy `g` into a folding builder, wiring non-input leaves to `funcs`.
/// `missing` decides what an uncovered variable becomes.
NodeRef wire( CircuitBuilder& b, Negator& neg, const Circuit& g, const VarNodes& funcs, const std::set<VarId>& inputs,
              const std::function<NodeRef( VarId )>& missing )
{
  std::vector<NodeRef> map( g.size() );
  for ( NodeRef n = 0; n < g.size(); ++n )
  {
    const auto& node = g.node( n );
    if ( !node.is_leaf() )
    {
      map[n] = b.fold_gate( node.gate, map[node.lhs], map[node.rhs] );
      continue;
    }
    const auto& label = g.label( node.leaf );
    if ( label.is_constant() || inputs.count( label.literal().var ) )
    {
      map[n] = b.shared_leaf( label );
      continue;
    }
    auto lit = label.literal();
    auto it = funcs.find( lit.var );
    auto f = it != funcs.end() ? it->second : missing( lit.var );
    map[n] = lit.negated ? neg.negate( f ) : f;
  }
  return map[g.root()];
}

std::set<VarId> input_set( std::span<const VarId> inputs )
{
  return { inputs.begin(), inputs.end() };
}

} // namespace

SkolemVector make_skolem_vector( std::vector<VarId> vars, const std::vector<Circuit>& functions )
{
  if ( vars.size() != functions.size() )
  {
    throw PreconditionError( "Skolem vector: variable and function counts differ" );
  }
  CircuitBuilder b( { .share_leaves = true, .fold_constants = false } );
  std::vector<NodeRef> roots;
  for ( const auto& f : functions )
  {
    roots.push_back( b.import( f ) );
  }
  SkolemVector psi;
  psi.dag = b.build_shared( roots );
  psi.vars = std::move( vars );
  psi.roots = std::move( roots );
  return psi;
}

std::map<VarId, bool> evaluate_skolem( const SkolemVector& psi, const Assignment& inputs )
{
  std::vector<char> value( psi.dag.size() );
  for ( NodeRef n = 0; n < psi.dag.size(); ++n )
  {
    const auto& node = psi.dag.node( n );
    if ( node.is_leaf() )
    {
      const auto& l = psi.dag.leaf_label( n );
      value[n] = l.is_constant() ? l.constant_value() : inputs.value_of( l.literal() );
    }
    else if ( node.gate == Gate::conj )
    {
      value[n] = value[node.lhs] && value[node.rhs];
    }
    else
    {
      value[n] = value[node.lhs] || value[node.rhs];
    }
  }
  std::map<VarId, bool> out;
  for ( std::size_t k = 0; k < psi.vars.size(); ++k )
  {
    out[psi.vars[k]] = value[psi.roots[k]];
  }
  return out;
}

Circuit self_substitute( const Circuit& e, Literal lit, const SkolemVector& psi_h, std::span<const VarId> inputs )
{
  CircuitBuilder b( { .share_leaves = true, .fold_constants = true } );
  Negator neg( b, true );
  auto funcs = import_vector( b, psi_h );
  auto pinned = cofactor( e, lit, true, false );
  auto root = wire( b, neg, pinned, funcs, input_set( inputs ), []( VarId v ) -> NodeRef {
    throw PreconditionError( "self-substitution: v" + std::to_string( v ) + " is not covered" );
  } );
  return b.build( root );
}

Circuit substitute( const Circuit& g, const SkolemVector& psi, std::span<const VarId> inputs )
{
  CircuitBuilder b( { .share_leaves = true, .fold_constants = true } );
  Negator neg( b, true );
  auto funcs = import_vector( b, psi );
  auto root = wire( b, neg, g, funcs, input_set( inputs ), []( VarId v ) -> NodeRef {
    throw PreconditionError( "substitution: v" + std::to_string( v ) + " is not covered" );
  } );
  return b.build( root );
}

SkGenResult skgen( const Spec& spec, const LeafSequence& seq, const SkGenOptions& options, const SatOracle& oracle )
{
  if ( options.verify_witness )
  {
    auto v = check_saunf( spec, seq, oracle );
    if ( !v.accepted() )
    {
      throw PreconditionError( "witness is not in SAUNF: " + v.describe() );
    }
  }

  auto inputs = input_set( spec.inputs );
  auto vars = spec.vars;
  SkGenResult out;
  auto& levels = out.trace.levels;

  // Descent: build E(r) and H(r), carrying the remaining sets along.
  auto g = spec.circuit;
  auto rest = seq;
  for ( std::size_t r = 0; r < rest.size(); ++r )
  {
    TraceLevel level;
    level.set = rest[r];
    if ( level.set.empty() )
    {
      level.e = g;
      level.h = g;
      levels.push_back( std::move( level ) );
      continue;
    }
    auto lit = common_literal( g, level.set );
    if ( !lit )
    {
      throw PreconditionError( "SkGen: set " + std::to_string( r + 1 ) + " is not literal-consistent" );
    }
    level.lit = *lit;
    level.aux = vars.fresh( VarKind::auxiliary, "p" + std::to_string( r + 1 ) );
    out.psi.aux_level[level.aux] = r + 1;

    LeafSet others;
    for ( auto leaf : g.leaves_labeled( *lit ) )
    {
      if ( !std::binary_search( level.set.begin(), level.set.end(), leaf ) )
      {
        others.push_back( leaf );
      }
    }
    std::pair<LeafSet, Literal> gadgets[] = { { others, Literal::pos( level.aux ) },
                                               { g.leaves_labeled( ~*lit ), Literal::neg( level.aux ) } };
    auto gadget = gadget_conjoin( g, gadgets );
    level.e = gadget.circuit;

    Relabeling top;
    top.set( *lit, Label::constant( true ) ).set( ~*lit, Label::constant( true ) );
    auto simp = cprop_simp( relabel( level.e, top ), spec.inputs );
    level.h = simp.circuit;

    // later sets follow their leaves: gadget leaves move to the p_r leaf
    for ( std::size_t j = r + 1; j < rest.size(); ++j )
    {
      LeafSet moved;
      for ( auto leaf : rest[j] )
      {
        auto i = index( leaf );
        auto in_e = gadget.aux_leaf[i] != kNoLeaf ? gadget.aux_leaf[i] : gadget.leaf_map[i];
        auto in_h = simp.leaf_map[index( in_e )];
        if ( in_h != kNoLeaf )
        {
          moved.push_back( in_h );
        }
      }
      rest[j] = make_leaf_set( std::move( moved ) );
    }
    g = level.h;
    levels.push_back( std::move( level ) );
  }

  // Ascent: terminal vector is all ⊥; each level self-substitutes into E.
  CircuitBuilder b( { .share_leaves = true, .fold_constants = true } );
  Negator neg( b, true );
  VarNodes psi;
  auto bottom = [&]( VarId ) { return b.constant( false ); };
  std::map<VarId, NodeRef> aux_funcs;
  for ( auto r = levels.size(); r-- > 0; )
  {
    const auto& level = levels[r];
    if ( !level.lit )
    {
      continue;
    }
    auto pinned = cofactor( level.e, *level.lit, true, false );
    auto f = wire( b, neg, pinned, psi, inputs, bottom );
    auto v = level.lit->var;
    psi[v] = level.lit->negated ? neg.negate( f ) : f;
    auto it = psi.find( level.aux );
    if ( it != psi.end() )
    {
      aux_funcs[level.aux] = it->second;
      psi.erase( it );
    }
  }

  std::vector<NodeRef> roots;
  for ( auto x : spec.outputs )
  {
    auto it = psi.find( x );
    roots.push_back( it != psi.end() ? it->second : b.constant( false ) );
  }
  out.psi.dag = b.build_shared( roots );
  out.psi.vars = spec.outputs;
  out.psi.roots = std::move( roots );
  return out;
}

namespace
{

void require_input_only( const Spec& spec, const SkolemVector& psi )
{
  for ( const auto& l : psi.dag.labels() )
  {
    if ( l.is_literal() && !spec.is_input( l.literal().var ) )
    {
      throw PreconditionError( "Skolem function reads non-input v" + std::to_string( l.literal().var ) );
    }
  }
}

} // namespace

bool verify_skolem( const Spec& spec, const SkolemVector& psi, const SatOracle& oracle )
{
  require_input_only( spec, psi );
  auto g_psi = substitute( spec.circuit, psi, spec.inputs );
  TseitinEncoder enc;
  auto a = enc.encode( spec.circuit );
  auto b = enc.encode( g_psi );
  int assumptions[] = { a, -b };
  return !oracle.solve( enc.cnf(), assumptions ).is_sat();
}

SaunfWitness saunf_from_skolem( const Spec& spec, const SkolemVector& psi, const SatOracle& oracle )
{
  for ( auto v : spec.circuit.variables() )
  {
    if ( !spec.is_input( v ) && !spec.is_output( v ) )
    {
      throw PreconditionError( "saunf_from_skolem: auxiliary v" + std::to_string( v ) + " in the specification" );
    }
  }
  if ( !verify_skolem( spec, psi, oracle ) )
  {
    throw PreconditionError( "saunf_from_skolem: not a Skolem vector" );
  }

  auto inputs = input_set( spec.inputs );
  CircuitBuilder b;
  Negator neg( b, true );

  // Ψ and G share input leaves; only F's output leaves are distinct.
  std::vector<NodeRef> dag_map( psi.dag.size() );
  for ( NodeRef n = 0; n < psi.dag.size(); ++n )
  {
    const auto& node = psi.dag.node( n );
    dag_map[n] = node.is_leaf() ? b.shared_leaf( psi.dag.leaf_label( n ) )
                                : b.fold_gate( node.gate, dag_map[node.lhs], dag_map[node.rhs] );
  }
  VarNodes funcs;
  for ( std::size_t k = 0; k < psi.vars.size(); ++k )
  {
    funcs[psi.vars[k]] = dag_map[psi.roots[k]];
  }

  std::vector<NodeRef> clauses;
  std::vector<std::pair<NodeRef, NodeRef>> f_leaves;
  for ( auto x : spec.outputs )
  {
    auto it = funcs.find( x );
    if ( it == funcs.end() )
    {
      throw PreconditionError( "saunf_from_skolem: v" + std::to_string( x ) + " is not covered" );
    }
    auto pos = b.literal( Literal::pos( x ) );
    auto pos_and = b.gate( Gate::conj, pos, it->second );
    auto negl = b.literal( Literal::neg( x ) );
    auto neg_and = b.gate( Gate::conj, negl, neg.negate( it->second ) );
    clauses.push_back( b.gate( Gate::disj, pos_and, neg_and ) );
    f_leaves.emplace_back( pos, negl );
  }
  auto f = b.conjunction( clauses );

  std::vector<NodeRef> g_map( spec.circuit.size() );
  for ( NodeRef n = 0; n < spec.circuit.size(); ++n )
  {
    const auto& node = spec.circuit.node( n );
    g_map[n] = node.is_leaf() ? b.shared_leaf( spec.circuit.label( node.leaf ) )
                              : b.fold_gate( node.gate, g_map[node.lhs], g_map[node.rhs] );
  }
  auto g = g_map[spec.circuit.root()];
  auto g_psi = wire( b, neg, spec.circuit, funcs, inputs, []( VarId v ) -> NodeRef {
    throw PreconditionError( "saunf_from_skolem: v" + std::to_string( v ) + " is not covered" );
  } );

  // plain gates on top so F's leaves survive even when G' is constant
  auto f_or_g = b.gate( Gate::disj, f, g );
  auto root = b.gate( Gate::conj, f_or_g, g_psi );

  std::vector<LeafId> leaf_of_node;
  SaunfWitness out{ spec.with_circuit( b.build( root, &leaf_of_node ) ), {} };
  for ( auto [pos, negl] : f_leaves )
  {
    out.seq.push_back( { leaf_of_node[pos] } );
    out.seq.push_back( { leaf_of_node[negl] } );
  }
  return out;
}

} // namespace saunf
