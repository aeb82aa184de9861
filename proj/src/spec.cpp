#include "saunf/spec.hpp"

#include "saunf/error.hpp"

#include <algorithm>

namespace saunf
{

void VarTable::declare( VarId id, VarKind kind, std::string name )
{
  if ( id == 0 )
  {
    throw PreconditionError( "variable id 0 is reserved" );
  }
  auto [it, inserted] = vars_.emplace( id, VarInfo{ id, kind, std::move( name ) } );
  if ( !inserted && it->second.kind != kind )
  {
    throw PreconditionError( "variable " + std::to_string( id ) + " redeclared with a different kind" );
  }
}

VarId VarTable::fresh( VarKind kind, std::string name )
{
  auto id = max_id() + 1;
  declare( id, kind, std::move( name ) );
  return id;
}

const VarInfo& VarTable::info( VarId id ) const
{
  auto it = vars_.find( id );
  if ( it == vars_.end() )
  {
    throw PreconditionError( "undeclared variable " + std::to_string( id ) );
  }
  return it->second;
}

std::string VarTable::name( VarId id ) const
{
  auto it = vars_.find( id );
  if ( it == vars_.end() || it->second.name.empty() )
  {
    return "v" + std::to_string( id );
  }
  return it->second.name;
}

std::vector<VarInfo> VarTable::all() const
{
  std::vector<VarInfo> out;
  for ( const auto& [id, info] : vars_ )
  {
    out.push_back( info );
  }
  return out;
}

std::vector<VarId> VarTable::of_kind( VarKind kind ) const
{
  std::vector<VarId> out;
  for ( const auto& [id, info] : vars_ )
  {
    if ( info.kind == kind )
    {
      out.push_back( id );
    }
  }
  return out;
}

bool Spec::is_input( VarId v ) const
{
  return std::find( inputs.begin(), inputs.end(), v ) != inputs.end();
}

bool Spec::is_output( VarId v ) const
{
  return std::find( outputs.begin(), outputs.end(), v ) != outputs.end();
}

void Spec::validate() const
{
  for ( auto v : inputs )
  {
    if ( is_output( v ) )
    {
      throw PreconditionError( "variable " + std::to_string( v ) + " is both input and output" );
    }
  }
  for ( auto v : circuit.variables() )
  {
    if ( !vars.contains( v ) )
    {
      throw PreconditionError( "leaf uses undeclared variable " + std::to_string( v ) );
    }
  }
}

Spec Spec::with_circuit( Circuit c ) const
{
  Spec s = *this;
  s.circuit = std::move( c );
  return s;
}

Spec make_spec( Circuit circuit, std::vector<VarId> inputs, std::vector<VarId> outputs )
{
  Spec s;
  s.circuit = std::move( circuit );
  for ( auto v : inputs )
  {
    s.vars.declare( v, VarKind::input );
  }
  for ( auto v : outputs )
  {
    s.vars.declare( v, VarKind::output );
  }
  for ( auto v : s.circuit.variables() )
  {
    if ( !s.vars.contains( v ) )
    {
      s.vars.declare( v, VarKind::auxiliary );
    }
  }
  s.inputs = std::move( inputs );
  s.outputs = std::move( outputs );
  s.validate();
  return s;
}

} // namespace saunf
