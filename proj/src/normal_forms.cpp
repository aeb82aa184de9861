#include "saunf/normal_forms.hpp"

#include "saunf/error.hpp"
#include "saunf/transforms.hpp"

#include <algorithm>
#include <set>

namespace saunf
{

std::string SaunfVerdict::describe() const
{
  switch ( status )
  {
  case Status::pass:
    return "PASS";
  case Status::independent:
    return "INDEPENDENT";
  case Status::fail:
    break;
  }
  auto s = "FAIL(condition " + std::to_string( condition ) + ")";
  if ( condition >= 1 && condition <= 4 )
  {
    s += " at set " + std::to_string( set_index + 1 );
  }
  if ( condition == 5 || condition == 0 )
  {
    s += " depends on v" + std::to_string( dependent );
  }
  return s;
}

std::optional<SaunfVerdict> SaunfCache::find( const Spec& spec, const LeafSequence& seq ) const
{
  std::lock_guard lock( mutex_ );
  auto [lo, hi] = entries_.equal_range( spec.circuit.structural_hash() );
  for ( auto it = lo; it != hi; ++it )
  {
    const auto& e = it->second;
    if ( e.seq == seq && e.outputs == spec.outputs && e.circuit == spec.circuit )
    {
      ++hits_;
      return e.verdict;
    }
  }
  return std::nullopt;
}

void SaunfCache::store( const Spec& spec, const LeafSequence& seq, const SaunfVerdict& v )
{
  std::lock_guard lock( mutex_ );
  entries_.emplace( spec.circuit.structural_hash(), Entry{ spec.circuit, spec.outputs, seq, v } );
}

std::size_t SaunfCache::size() const
{
  std::lock_guard lock( mutex_ );
  return entries_.size();
}

std::size_t SaunfCache::hits() const
{
  std::lock_guard lock( mutex_ );
  return hits_;
}

namespace
{

SaunfVerdict fail( int condition, std::size_t j )
{
  SaunfVerdict v;
  v.condition = condition;
  v.set_index = j;
  return v;
}

SaunfVerdict check_uncached( const Spec& spec, const LeafSequence& seq, const SatOracle& oracle )
{
  const auto& g = spec.circuit;
  for ( const auto& set : seq )
  {
    if ( set.empty() )
    {
      throw PreconditionError( "empty leaf set in sequence" );
    }
    for ( auto leaf : set )
    {
      if ( !g.has_leaf( leaf ) )
      {
        throw PreconditionError( "unknown leaf " + std::to_string( index( leaf ) ) );
      }
    }
  }

  if ( seq.empty() )
  {
    SaunfVerdict v;
    if ( check_independent( g, spec.outputs, oracle, &v.dependent ) )
    {
      v.status = SaunfVerdict::Status::independent;
    }
    return v;
  }

  // condition 1
  std::set<LeafId> seen;
  for ( std::size_t j = 0; j < seq.size(); ++j )
  {
    for ( auto leaf : seq[j] )
    {
      if ( !seen.insert( leaf ).second )
      {
        return fail( 1, j );
      }
    }
  }

  // condition 2
  for ( std::size_t j = 0; j < seq.size(); ++j )
  {
    auto lit = common_literal( g, seq[j] );
    if ( !lit || !spec.is_output( lit->var ) )
    {
      return fail( 2, j );
    }
  }

  // conditions 3 and 4
  auto current = g;
  for ( std::size_t j = 0; j < seq.size(); ++j )
  {
    if ( j > 0 )
    {
      current = relabel( current, Relabeling{}.set( seq[j - 1], Label::constant( true ) ) );
    }
    auto r = check_subset_realizable( current, seq[j], oracle );
    if ( r )
    {
      auto v = fail( j == 0 ? 3 : 4, j );
      v.sigma = std::move( r.sigma );
      return v;
    }
  }

  // condition 5
  current = relabel( current, Relabeling{}.set( seq.back(), Label::constant( true ) ) );
  SaunfVerdict v;
  if ( !check_independent( current, spec.outputs, oracle, &v.dependent ) )
  {
    v.condition = 5;
    v.set_index = seq.size();
    return v;
  }
  v.status = SaunfVerdict::Status::pass;
  return v;
}

void require_permutation( const Spec& spec, std::span<const VarId> order )
{
  std::vector<VarId> a( order.begin(), order.end() );
  std::vector<VarId> b = spec.outputs;
  std::sort( a.begin(), a.end() );
  std::sort( b.begin(), b.end() );
  if ( a != b )
  {
    throw PreconditionError( "order is not a permutation of the outputs" );
  }
}

} // namespace

SaunfVerdict check_saunf( const Spec& spec, const LeafSequence& seq, const SatOracle& oracle, SaunfCache* cache )
{
  if ( cache )
  {
    if ( auto hit = cache->find( spec, seq ) )
    {
      return *hit;
    }
  }
  auto v = check_uncached( spec, seq, oracle );
  if ( cache )
  {
    cache->store( spec, seq, v );
  }
  return v;
}

bool check_synnnf( const Spec& spec, std::span<const VarId> order, const SatOracle& oracle )
{
  require_permutation( spec, order );
  auto current = spec.circuit;
  for ( auto x : order )
  {
    if ( check_literal_realizable( current, Literal::pos( x ), oracle ) )
    {
      return false;
    }
    Relabeling r;
    r.set( Literal::pos( x ), Label::constant( true ) );
    r.set( Literal::neg( x ), Label::constant( true ) );
    current = relabel( current, r );
  }
  return true;
}

LeafSequence synnnf_to_saunf_sequence( const Spec& spec, std::span<const VarId> order, const SatOracle& oracle )
{
  if ( !check_synnnf( spec, order, oracle ) )
  {
    throw PreconditionError( "circuit is not in SynNNF for the given order" );
  }
  LeafSequence seq;
  for ( auto x : order )
  {
    for ( auto lit : { Literal::pos( x ), Literal::neg( x ) } )
    {
      auto set = spec.circuit.leaves_labeled( lit );
      if ( !set.empty() )
      {
        seq.push_back( std::move( set ) );
      }
    }
  }
  return seq;
}

std::optional<LeafSequence> single_polarity_witness( const Spec& spec, const SatOracle& oracle )
{
  LeafSequence seq;
  for ( auto x : spec.outputs )
  {
    auto pos = spec.circuit.leaves_labeled( Literal::pos( x ) );
    auto neg = spec.circuit.leaves_labeled( Literal::neg( x ) );
    if ( !pos.empty() && !neg.empty() )
    {
      return std::nullopt;
    }
    if ( !pos.empty() )
    {
      seq.push_back( std::move( pos ) );
    }
    if ( !neg.empty() )
    {
      seq.push_back( std::move( neg ) );
    }
  }
  // Every output leaf is relabeled ⊤, so this holds by construction.
  auto rest = relabel_true( spec.circuit, seq );
  if ( !check_independent( rest, spec.outputs, oracle ) )
  {
    throw std::logic_error( "single-polarity residue depends on outputs" );
  }
  return seq;
}

} // namespace saunf
