#include "saunf/tseitin.hpp"

namespace saunf
{

int TseitinEncoder::var_of( VarId v )
{
  auto it = vars_.find( v );
  if ( it != vars_.end() )
  {
    return it->second;
  }
  auto x = cnf_.new_var();
  vars_.emplace( v, x );
  return x;
}

std::optional<int> TseitinEncoder::find_var( VarId v ) const
{
  auto it = vars_.find( v );
  if ( it == vars_.end() )
  {
    return std::nullopt;
  }
  return it->second;
}

int TseitinEncoder::constant( bool value )
{
  if ( true_var_ == 0 )
  {
    true_var_ = cnf_.new_var();
    cnf_.add_clause( { true_var_ } );
  }
  return value ? true_var_ : -true_var_;
}

int TseitinEncoder::encode( const Circuit& g )
{
  std::vector<int> lit( g.size() );
  for ( NodeRef n = 0; n < g.size(); ++n )
  {
    const auto& node = g.node( n );
    if ( node.is_leaf() )
    {
      const auto& l = g.label( node.leaf );
      if ( l.is_constant() )
      {
        lit[n] = constant( l.constant_value() );
      }
      else
      {
        auto x = var_of( l.literal().var );
        lit[n] = l.literal().negated ? -x : x;
      }
      continue;
    }
    int a = lit[node.lhs], b = lit[node.rhs];
    int t = cnf_.new_var();
    if ( node.gate == Gate::conj )
    {
      cnf_.add_clause( { -t, a } );
      cnf_.add_clause( { -t, b } );
      cnf_.add_clause( { t, -a, -b } );
    }
    else
    {
      cnf_.add_clause( { -t, a, b } );
      cnf_.add_clause( { t, -a } );
      cnf_.add_clause( { t, -b } );
    }
    lit[n] = t;
  }
  return lit[g.root()];
}

Assignment TseitinEncoder::decode( const SatResult& result ) const
{
  Assignment sigma;
  for ( const auto& [v, x] : vars_ )
  {
    sigma.set( v, result.value( x ) );
  }
  return sigma;
}

std::optional<Assignment> find_model( const Circuit& g, const SatOracle& oracle )
{
  TseitinEncoder enc;
  auto root = enc.encode( g );
  enc.cnf().add_clause( { root } );
  auto result = oracle.solve( enc.cnf() );
  if ( !result.is_sat() )
  {
    return std::nullopt;
  }
  return enc.decode( result );
}

std::optional<Assignment> find_difference( const Circuit& g, const Circuit& h, const SatOracle& oracle )
{
  TseitinEncoder enc;
  auto a = enc.encode( g );
  auto b = enc.encode( h );
  enc.cnf().add_clause( { a, b } );
  enc.cnf().add_clause( { -a, -b } );
  auto result = oracle.solve( enc.cnf() );
  if ( !result.is_sat() )
  {
    return std::nullopt;
  }
  return enc.decode( result );
}

bool check_equivalent( const Circuit& g, const Circuit& h, const SatOracle& oracle )
{
  return !find_difference( g, h, oracle ).has_value();
}

} // namespace saunf
