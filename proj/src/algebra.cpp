#include "saunf/algebra.hpp"

#include "saunf/error.hpp"
#include "saunf/transforms.hpp"

#include <algorithm>
#include <set>

namespace saunf
{

namespace
{

std::set<VarId> as_set( const std::vector<VarId>& v ) { return { v.begin(), v.end() }; }

void require_same_partition( const Spec& a, const Spec& b )
{
  if ( as_set( a.inputs ) != as_set( b.inputs ) || as_set( a.outputs ) != as_set( b.outputs ) )
  {
    throw PreconditionError( "witnesses differ in their input/output partition" );
  }
}

VarTable merged_vars( const Spec& a, const Spec& b )
{
  VarTable t = a.vars;
  for ( const auto& info : b.vars.all() )
  {
    if ( !t.contains( info.id ) )
    {
      t.declare( info.id, info.kind, info.name );
    }
  }
  return t;
}

SaunfWitness combine( const SaunfWitness& a, const SaunfWitness& b, Gate gate )
{
  CircuitBuilder builder;
  std::vector<NodeRef> leaves_a, leaves_b;
  auto ra = builder.import( a.spec.circuit, &leaves_a );
  auto rb = builder.import( b.spec.circuit, &leaves_b );
  std::vector<LeafId> leaf_of_node;
  auto c = builder.build( builder.gate( gate, ra, rb ), &leaf_of_node );

  SaunfWitness out{ a.spec.with_circuit( std::move( c ) ), {} };
  out.spec.vars = merged_vars( a.spec, b.spec );
  auto map_seq = [&]( const LeafSequence& seq, const std::vector<NodeRef>& leaves ) {
    for ( const auto& s : seq )
    {
      LeafSet m;
      for ( auto l : s )
      {
        m.push_back( leaf_of_node[leaves[index( l )]] );
      }
      out.seq.push_back( make_leaf_set( std::move( m ) ) );
    }
  };
  map_seq( a.seq, leaves_a );
  map_seq( b.seq, leaves_b );
  return out;
}

} // namespace

std::optional<PolarityClash> polarity_scan( const Circuit& g, const Circuit& h, std::span<const VarId> outputs )
{
  auto outs = std::set<VarId>( outputs.begin(), outputs.end() );
  // bit 0: positive leaf present, bit 1: negative leaf present
  auto polarities = [&]( const Circuit& c ) {
    std::map<VarId, int> m;
    for ( const auto& l : c.labels() )
    {
      if ( l.is_literal() && outs.count( l.literal().var ) )
      {
        m[l.literal().var] |= l.literal().negated ? 2 : 1;
      }
    }
    return m;
  };
  auto pg = polarities( g );
  auto ph = polarities( h );
  for ( auto [v, mask] : pg )
  {
    auto it = ph.find( v );
    if ( it == ph.end() )
    {
      continue;
    }
    if ( ( mask & 1 ) && ( it->second & 2 ) )
    {
      return PolarityClash{ Literal::pos( v ) };
    }
    if ( ( mask & 2 ) && ( it->second & 1 ) )
    {
      return PolarityClash{ Literal::neg( v ) };
    }
  }
  return std::nullopt;
}

SaunfWitness disjoin( const SaunfWitness& a, const SaunfWitness& b )
{
  require_same_partition( a.spec, b.spec );
  return combine( a, b, Gate::disj );
}

std::variant<SaunfWitness, PolarityClash> conjoin( const SaunfWitness& a, const SaunfWitness& b )
{
  require_same_partition( a.spec, b.spec );
  if ( auto clash = polarity_scan( a.spec.circuit, b.spec.circuit, a.spec.outputs ) )
  {
    return *clash;
  }
  return combine( a, b, Gate::conj );
}

Circuit existential_project( const SaunfWitness& w )
{
  // G|S:⊤ no longer depends on X, so any consistent value of the leftover
  // X-leaves gives the same function; use x=⊥.
  Relabeling r;
  const auto& labels = w.spec.circuit.labels();
  for ( std::size_t k = 0; k < labels.size(); ++k )
  {
    if ( labels[k].is_literal() && !w.spec.is_input( labels[k].literal().var ) )
    {
      r.set( leaf_id( static_cast<std::uint32_t>( k ) ), Label::constant( labels[k].literal().negated ) );
    }
  }
  for ( const auto& s : w.seq )
  {
    r.set( s, Label::constant( true ) );
  }
  return cprop_simp( relabel( w.spec.circuit, r ), w.spec.inputs ).circuit;
}

namespace
{

/// Definitional clauses of `g`; gate variables are drawn from `fresh`.
void tseitin_clauses( const Circuit& g, Cnf& out, const std::function<VarId()>& fresh )
{
  std::vector<Literal> lit( g.size() );
  std::optional<Literal> t_const;
  for ( NodeRef n = 0; n < g.size(); ++n )
  {
    const auto& node = g.node( n );
    if ( node.is_leaf() )
    {
      const auto& l = g.label( node.leaf );
      if ( l.is_literal() )
      {
        lit[n] = l.literal();
        continue;
      }
      if ( !t_const )
      {
        t_const = Literal::pos( fresh() );
        out.push_back( { *t_const } );
      }
      lit[n] = l.constant_value() ? *t_const : ~*t_const;
      continue;
    }
    auto t = Literal::pos( fresh() );
    auto a = lit[node.lhs];
    auto b = lit[node.rhs];
    if ( node.gate == Gate::conj )
    {
      out.push_back( { ~t, a } );
      out.push_back( { ~t, b } );
      out.push_back( { t, ~a, ~b } );
    }
    else
    {
      out.push_back( { t, ~a } );
      out.push_back( { t, ~b } );
      out.push_back( { ~t, a, b } );
    }
    lit[n] = t;
  }
  out.push_back( { lit[g.root()] } );
}

std::optional<Cnf> try_clauses( const Circuit& g )
{
  try
  {
    return cnf_clauses( g );
  }
  catch ( const StructuralError& )
  {
    return std::nullopt;
  }
}

} // namespace

CompileResult recompile_conjunction( const SaunfWitness& a, const SaunfWitness& b, const CompileOptions& options,
                                     const SatOracle& oracle )
{
  require_same_partition( a.spec, b.spec );
  auto vars = merged_vars( a.spec, b.spec );
  auto outputs = a.spec.outputs;

  Cnf cnf;
  auto ca = try_clauses( a.spec.circuit );
  auto cb = try_clauses( b.spec.circuit );
  if ( ca && cb )
  {
    cnf = std::move( *ca );
    cnf.insert( cnf.end(), cb->begin(), cb->end() );
  }
  else
  {
    std::size_t k = 0;
    auto fresh = [&] {
      auto v = vars.fresh( VarKind::output, "t" + std::to_string( k++ ) );
      outputs.push_back( v );
      return v;
    };
    tseitin_clauses( a.spec.circuit, cnf, fresh );
    tseitin_clauses( b.spec.circuit, cnf, fresh );
  }

  Spec spec = a.spec.with_circuit( cnf_circuit( cnf ).circuit );
  spec.vars = std::move( vars );
  spec.outputs = std::move( outputs );
  spec.validate();
  return get_saunf( spec, options, oracle );
}

} // namespace saunf
