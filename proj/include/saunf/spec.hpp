#pragma once

#include "saunf/circuit.hpp"

#include <map>
#include <string>
#include <vector>

namespace saunf
{

struct VarInfo
{
  VarId id = 0;
  VarKind kind = VarKind::input;
  std::string name;
};

/// Declared variables of a specification. Ids are unique, kinds fixed.
class VarTable
{
public:
  void declare( VarId id, VarKind kind, std::string name = {} );
  /// New variable with the smallest id above every declared one.
  VarId fresh( VarKind kind, std::string name = {} );

  bool contains( VarId id ) const { return vars_.count( id ) != 0; }
  const VarInfo& info( VarId id ) const;
  VarKind kind( VarId id ) const { return info( id ).kind; }
  /// Declared name, or "v<id>".
  std::string name( VarId id ) const;
  VarId max_id() const { return vars_.empty() ? 0 : vars_.rbegin()->first; }
  std::vector<VarInfo> all() const;
  std::vector<VarId> of_kind( VarKind kind ) const;

private:
  std::map<VarId, VarInfo> vars_;
};

/// Relational specification: a circuit over inputs I and outputs X.
struct Spec
{
  Circuit circuit;
  VarTable vars;
  std::vector<VarId> inputs;
  std::vector<VarId> outputs;

  bool is_input( VarId v ) const;
  bool is_output( VarId v ) const;
  /// Throws PreconditionError when I and X overlap or a leaf uses an undeclared variable.
  void validate() const;
  /// Same partition and variable table over another circuit.
  Spec with_circuit( Circuit c ) const;
  std::string var_name( VarId v ) const { return vars.name( v ); }
};

/// Leaf variables outside `inputs` and `outputs` are declared auxiliary.
Spec make_spec( Circuit circuit, std::vector<VarId> inputs, std::vector<VarId> outputs );

} // namespace saunf
