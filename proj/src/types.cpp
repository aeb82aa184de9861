#include "saunf/types.hpp"

#include "saunf/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace saunf
{

std::string to_string( VarKind kind )
{
  switch ( kind )
  {
  case VarKind::input:
    return "input";
  case VarKind::output:
    return "output";
  case VarKind::auxiliary:
    return "aux";
  }
  return "?";
}

Literal Literal::from_int( int lit )
{
  if ( lit == 0 )
  {
    throw PreconditionError( "literal 0 is not a variable" );
  }
  return { static_cast<VarId>( std::abs( lit ) ), lit < 0 };
}

std::string to_string( const Literal& lit )
{
  return ( lit.negated ? "-" : "+" ) + std::to_string( lit.var );
}

std::string to_string( const Label& label )
{
  switch ( label.kind() )
  {
  case Label::Kind::constant_false:
    return "F";
  case Label::Kind::constant_true:
    return "T";
  case Label::Kind::literal:
    return to_string( label.literal() );
  }
  return "?";
}

void Assignment::set( VarId v, bool value )
{
  if ( v == 0 )
  {
    throw PreconditionError( "variable id 0 is reserved" );
  }
  if ( values_.size() <= v )
  {
    values_.resize( v + 1, -1 );
  }
  values_[v] = value ? 1 : 0;
}

void Assignment::unset( VarId v )
{
  if ( v < values_.size() )
  {
    values_[v] = -1;
  }
}

std::optional<bool> Assignment::get( VarId v ) const
{
  if ( v >= values_.size() || values_[v] < 0 )
  {
    return std::nullopt;
  }
  return values_[v] == 1;
}

bool Assignment::value_of( Literal lit ) const
{
  auto v = get( lit.var );
  if ( !v )
  {
    throw PreconditionError( "variable " + std::to_string( lit.var ) + " is unassigned" );
  }
  return *v != lit.negated;
}

std::vector<VarId> Assignment::variables() const
{
  std::vector<VarId> vars;
  for ( VarId v = 1; v < values_.size(); ++v )
  {
    if ( values_[v] >= 0 )
    {
      vars.push_back( v );
    }
  }
  return vars;
}

std::size_t Assignment::size() const
{
  std::size_t n = 0;
  for ( auto x : values_ )
  {
    n += x >= 0 ? 1 : 0;
  }
  return n;
}

bool operator==( const Assignment& a, const Assignment& b )
{
  auto n = std::max( a.values_.size(), b.values_.size() );
  for ( std::size_t v = 0; v < n; ++v )
  {
    auto x = v < a.values_.size() ? a.values_[v] : std::int8_t{ -1 };
    auto y = v < b.values_.size() ? b.values_[v] : std::int8_t{ -1 };
    if ( x != y )
    {
      return false;
    }
  }
  return true;
}

std::string to_string( const Assignment& sigma, const std::function<std::string( VarId )>& name )
{
  std::ostringstream out;
  bool first = true;
  for ( auto v : sigma.variables() )
  {
    out << ( first ? "" : " " ) << ( name ? name( v ) : std::to_string( v ) ) << "=" << ( *sigma.get( v ) ? "T" : "F" );
    first = false;
  }
  return out.str();
}

} // namespace saunf
