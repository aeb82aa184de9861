#pragma once

#include "saunf/skolem.hpp"
#include "saunf/spec.hpp"
#include "saunf/transforms.hpp"

namespace saunf
{

// Bit k (1-based, least significant first) of each word lives at:
//   x_k = k, y_k = n + k, i_k = 2n + k   (i has 2n bits)
struct BitLayout
{
  std::uint32_t n = 1;

  VarId x( std::uint32_t k ) const { return k; }
  VarId y( std::uint32_t k ) const { return n + k; }
  VarId i( std::uint32_t k ) const { return 2 * n + k; }
};

/// Low `bits` bits of a × b as nodes of `raw`; nullopt stands for ⊥.
/// Array multiplier: one ripple-carry row per bit of `a`.
std::vector<std::optional<std::uint32_t>> multiply( RawCircuit& raw, std::span<const std::uint32_t> a,
                                                    std::span<const std::uint32_t> b, std::size_t bits );

struct Multiplier
{
  RawCircuit raw;
  /// 2n product bits, nullopt = ⊥.
  std::vector<std::optional<std::uint32_t>> product;

  /// NNF circuit of product bit k (1-based).
  Circuit bit( std::uint32_t k ) const;
};

/// x ×_[n] y over the variables of BitLayout{n}.
Multiplier build_multiplier( std::uint32_t n );

/// Bits l..j of x × y equal i_l..i_j. Inputs are all 2n bits of i, outputs
/// the bits of x and y. Throws PreconditionError unless 1 ≤ l ≤ j ≤ 2n.
Spec build_rlj( std::uint32_t n, std::uint32_t l, std::uint32_t j );

/// The closed-form vector: x = 2^(l-1), y = i_{l..j} when l ≤ n; otherwise
/// x = 2^(n-1), y = 2^(l-n) ×_[n] i_{l..j}. Throws PreconditionError unless
/// j - l < n. Note that for j = 2n the second case drops a bit (see README).
SkolemVector skolem_for_rlj( std::uint32_t n, std::uint32_t l, std::uint32_t j );

SaunfWitness saunf_for_rlj( std::uint32_t n, std::uint32_t l, std::uint32_t j,
                            const SatOracle& oracle = default_oracle() );

/// x × y = i over 2n bits with i_1 ∧ y_1 conjoined; inputs i and y, outputs x.
Spec build_odd_division( std::uint32_t n );

/// ψ^{x_1} = ⊤, ψ^{x_k} = i_k ⊕ (x_{1..k-1} × y_{1..k})_k.
SkolemVector odd_division_skolem( std::uint32_t n );

/// Full product match ∧ (x ≠ 1) ∧ (y ≠ 1); no SAUNF construction exists for it.
Spec build_factorization( std::uint32_t n );

} // namespace saunf
