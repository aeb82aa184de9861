#include "saunf/realizability.hpp"

#include "saunf/error.hpp"
#include "saunf/transforms.hpp"
#include "saunf/tseitin.hpp"

namespace saunf
{

namespace
{

bool labels_literal( const Circuit& g, Literal lit )
{
  for ( const auto& l : g.labels() )
  {
    if ( l.is( lit ) )
    {
      return true;
    }
  }
  return false;
}

} // namespace

bool replay_realizability( const Circuit& g, Literal lit, const Assignment& sigma )
{
  for ( int w = 0; w < 2; ++w )
  {
    for ( int wn = 0; wn < 2; ++wn )
    {
      if ( evaluate( cofactor( g, lit, w, wn ), sigma ) != ( w && wn ) )
      {
        return false;
      }
    }
  }
  return true;
}

Realizability check_literal_realizable( const Circuit& g, Literal lit, const SatOracle& oracle )
{
  // Without both polarities on leaves the function cannot depend on w and w'.
  if ( !labels_literal( g, lit ) || !labels_literal( g, ~lit ) )
  {
    return {};
  }

  TseitinEncoder enc;
  auto c11 = enc.encode( cofactor( g, lit, true, true ) );
  auto c10 = enc.encode( cofactor( g, lit, true, false ) );
  auto c01 = enc.encode( cofactor( g, lit, false, true ) );
  auto c00 = enc.encode( cofactor( g, lit, false, false ) );
  int assumptions[] = { c11, -c10, -c01, -c00 };
  auto result = oracle.solve( enc.cnf(), assumptions );
  if ( !result.is_sat() )
  {
    return {};
  }

  Realizability out{ true, {} };
  for ( auto v : g.variables() )
  {
    if ( v == lit.var )
    {
      continue;
    }
    auto x = enc.find_var( v );
    // variables absent from every cofactor are unconstrained
    out.sigma.set( v, x ? result.value( *x ) : false );
  }
  if ( !replay_realizability( g, lit, out.sigma ) )
  {
    throw std::logic_error( "realizability witness failed replay" );
  }
  return out;
}

Realizability check_subset_realizable( const Circuit& g, const LeafSet& set, const SatOracle& oracle )
{
  for ( auto leaf : set )
  {
    if ( !g.has_leaf( leaf ) )
    {
      throw PreconditionError( "unknown leaf " + std::to_string( index( leaf ) ) );
    }
  }
  auto lit = common_literal( g, set );
  if ( !lit )
  {
    throw PreconditionError( "leaf set is empty or not literal-consistent" );
  }
  Relabeling r;
  for ( auto leaf : g.leaves_labeled( *lit ) )
  {
    if ( !std::binary_search( set.begin(), set.end(), leaf ) )
    {
      r.set( leaf, Label::constant( false ) );
    }
  }
  return check_literal_realizable( relabel( g, r ), *lit, oracle );
}

bool check_independent( const Circuit& g, std::span<const VarId> vars, const SatOracle& oracle, VarId* dependent )
{
  for ( auto v : vars )
  {
    if ( !g.mentions( v ) )
    {
      continue;
    }
    auto pos = cofactor( g, Literal::pos( v ), true, false );
    auto neg = cofactor( g, Literal::pos( v ), false, true );
    if ( !check_equivalent( pos, neg, oracle ) )
    {
      if ( dependent )
      {
        *dependent = v;
      }
      return false;
    }
  }
  return true;
}

} // namespace saunf
