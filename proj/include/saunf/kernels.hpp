#pragma once

#include "saunf/skolem.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace saunf
{

enum class Exec
{
  serial,
  parallel
};

/// Bit-sliced truth table over `vars`: bit (a mod 64) of word a/64 is the
/// value of `g` under the assignment giving vars[k] the k-th bit of a.
/// Every leaf variable of `g` must appear in `vars`; at most 30 variables.
std::vector<std::uint64_t> truth_table( const Circuit& g, std::span<const VarId> vars, Exec exec = Exec::parallel );

/// verify_skolem by enumeration of all input and output assignments.
bool verify_skolem_exhaustive( const Spec& spec, const SkolemVector& psi, Exec exec );

} // namespace saunf
