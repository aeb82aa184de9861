#pragma once

#include "saunf/realizability.hpp"
#include "saunf/spec.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

namespace saunf
{

struct SaunfVerdict
{
  enum class Status
  {
    pass,
    fail,
    /// Empty sequence over a circuit already independent of X. Witness
    /// sequences are nonempty, so this is reported separately.
    independent
  };

  Status status = Status::fail;
  /// First violated condition (1..5); 0 for an empty sequence over a
  /// circuit that depends on X.
  int condition = 0;
  /// 0-based position of the offending set (conditions 1 to 4).
  std::size_t set_index = 0;
  /// Realizability witness for conditions 3 and 4.
  Assignment sigma;
  /// Output the relabeled circuit still depends on (condition 5 or 0).
  VarId dependent = 0;

  bool passed() const { return status == Status::pass; }
  /// Pass or independent.
  bool accepted() const { return status != Status::fail; }
  std::string describe() const;
};

/// Memoizes membership verdicts by (circuit, outputs, sequence).
class SaunfCache
{
public:
  std::optional<SaunfVerdict> find( const Spec& spec, const LeafSequence& seq ) const;
  void store( const Spec& spec, const LeafSequence& seq, const SaunfVerdict& v );
  std::size_t size() const;
  std::size_t hits() const;

private:
  struct Entry
  {
    Circuit circuit;
    std::vector<VarId> outputs;
    LeafSequence seq;
    SaunfVerdict verdict;
  };
  mutable std::mutex mutex_;
  std::multimap<std::size_t, Entry> entries_;
  mutable std::size_t hits_ = 0;
};

/// Membership check. Throws PreconditionError on an empty set in `seq` and
/// on leaf ids outside the circuit.
SaunfVerdict check_saunf( const Spec& spec, const LeafSequence& seq, const SatOracle& oracle = default_oracle(),
                          SaunfCache* cache = nullptr );

/// `order` must be a permutation of spec.outputs.
bool check_synnnf( const Spec& spec, std::span<const VarId> order, const SatOracle& oracle = default_oracle() );

/// All x-leaves then all ¬x-leaves for each output in `order`. Empty sets are
/// left out, so a circuit without output leaves yields an empty sequence.
LeafSequence synnnf_to_saunf_sequence( const Spec& spec, std::span<const VarId> order,
                                       const SatOracle& oracle = default_oracle() );

/// When no output labels leaves in both polarities, the full per-literal leaf
/// sets in output order (x before ¬x). Otherwise nullopt.
std::optional<LeafSequence> single_polarity_witness( const Spec& spec, const SatOracle& oracle = default_oracle() );

} // namespace saunf
