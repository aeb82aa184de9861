#pragma once

#include "saunf/circuit.hpp"
#include "saunf/sat.hpp"

#include <optional>
#include <span>

namespace saunf
{

/// Outcome of an ∧-realizability query. When realizable, `sigma` assigns every
/// leaf variable of the queried circuit except v_ℓ such that the four cofactors
/// G|_{ℓ=w,¬ℓ=w'} evaluate to exactly w ∧ w'.
struct Realizability
{
  bool realizable = false;
  Assignment sigma;

  explicit operator bool() const { return realizable; }
};

/// ∧-realizability of a literal, as one SAT query over four cofactor copies sharing σ.
Realizability check_literal_realizable( const Circuit& g, Literal lit, const SatOracle& oracle = default_oracle() );

/// ∧-realizability of a leaf subset: ℓ-leaves outside `set` are relabeled ⊥ first. `set` must be a
/// nonempty literal-consistent set of leaves of `g`.
Realizability check_subset_realizable( const Circuit& g, const LeafSet& set, const SatOracle& oracle = default_oracle() );

/// True iff G|_{v=⊤,¬v=⊥} ≡ G|_{v=⊥,¬v=⊤} for every v in `vars`. When
/// `dependent` is given and the answer is false, it receives the first
/// variable the circuit depends on.
bool check_independent( const Circuit& g, std::span<const VarId> vars, const SatOracle& oracle = default_oracle(),
                        VarId* dependent = nullptr );

/// Replays a witness: the four cofactor values under σ are (⊤,⊥,⊥,⊥).
bool replay_realizability( const Circuit& g, Literal lit, const Assignment& sigma );

} // namespace saunf
