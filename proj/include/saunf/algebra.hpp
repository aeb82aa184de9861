#pragma once

#include "saunf/compiler.hpp"
#include "saunf/skolem.hpp"

#include <variant>

namespace saunf
{

/// G has a `lit` leaf while H has a ¬lit leaf.
struct PolarityClash
{
  Literal lit;
};

/// First clashing output literal, scanning variables in ascending order and
/// the positive polarity first.
std::optional<PolarityClash> polarity_scan( const Circuit& g, const Circuit& h, std::span<const VarId> outputs );

/// OR of both circuits with sequence (S^A, S^B). Throws PreconditionError
/// when the input or output sets differ.
SaunfWitness disjoin( const SaunfWitness& a, const SaunfWitness& b );

/// AND of both circuits with sequence (S^A, S^B), or the clash that rules
/// the construction out.
std::variant<SaunfWitness, PolarityClash> conjoin( const SaunfWitness& a, const SaunfWitness& b );

/// ∃X G as G|S:⊤ with the remaining non-input leaves fixed at x=⊥, simplified.
/// The witness is trusted.
Circuit existential_project( const SaunfWitness& w );

/// A ∧ B through the compiler. CNF-shaped operands are concatenated as is;
/// otherwise both are Tseitin-encoded and the gate variables join the outputs
/// as t0, t1, ... Worst-case exponential.
CompileResult recompile_conjunction( const SaunfWitness& a, const SaunfWitness& b, const CompileOptions& options = {},
                                     const SatOracle& oracle = default_oracle() );

} // namespace saunf
