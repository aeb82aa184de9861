#pragma once

#include "saunf/circuit.hpp"
#include "saunf/sat.hpp"

#include <optional>
#include <unordered_map>

namespace saunf
{

/// Tseitin encoding of NNF circuits into one CnfFormula. Circuit variables get
/// one CNF variable each, shared by every circuit encoded with the same
/// encoder; each gate gets a fresh variable with full (two-sided) definition.
class TseitinEncoder
{
public:
  TseitinEncoder() = default;

  /// Literal equivalent to the root of `g`.
  int encode( const Circuit& g );
  int var_of( VarId v );
  std::optional<int> find_var( VarId v ) const;
  int constant( bool value );

  CnfFormula& cnf() { return cnf_; }
  const CnfFormula& cnf() const { return cnf_; }
  const std::unordered_map<VarId, int>& var_map() const { return vars_; }

  /// Values of the circuit variables in a model of cnf().
  Assignment decode( const SatResult& result ) const;

private:
  CnfFormula cnf_;
  std::unordered_map<VarId, int> vars_;
  int true_var_ = 0;
};

/// Satisfying assignment of `g` over its variables, or nullopt.
std::optional<Assignment> find_model( const Circuit& g, const SatOracle& oracle = default_oracle() );

/// ⟦g⟧ = ⟦h⟧, decided by UNSAT of the miter.
bool check_equivalent( const Circuit& g, const Circuit& h, const SatOracle& oracle = default_oracle() );

/// Distinguishing assignment over the variables of both circuits, or nullopt
/// when they are equivalent.
std::optional<Assignment> find_difference( const Circuit& g, const Circuit& h, const SatOracle& oracle = default_oracle() );

} // namespace saunf
