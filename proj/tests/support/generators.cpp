#include "generators.hpp"

#include <algorithm>
#include <numeric>

namespace gen
{

using namespace saunf;

Spec running_example()
{
  CircuitBuilder b;
  auto lit = [&]( VarId v, bool neg ) { return b.leaf( Label::of( { v, neg } ) ); };
  auto term = [&]( NodeRef a, NodeRef c ) { return b.make_and( a, c ); };

  auto l0 = lit( kI, false ), l1 = lit( kX1, true );
  auto a0 = term( l0, l1 );
  auto l2 = lit( kI, true ), l3 = lit( kX1, false );
  auto a1 = term( l2, l3 );
  auto o0 = b.make_or( a0, a1 );
  auto l4 = lit( kI, false ), l5 = lit( kX2, true );
  auto a2 = term( l4, l5 );
  auto l6 = lit( kI, true ), l7 = lit( kX2, false );
  auto a3 = term( l6, l7 );
  auto o1 = b.make_or( a2, a3 );
  auto g1 = b.make_and( o0, o1 );

  auto l8 = lit( kI, false ), l9 = lit( kX2, true );
  auto a4 = term( l8, l9 );
  auto l10 = lit( kX1, false ), l11 = lit( kX2, true );
  auto a5 = term( l10, l11 );
  auto o2 = b.make_or( a4, a5 );
  auto l12 = lit( kI, false ), l13 = lit( kX2, false );
  auto a6 = term( l12, l13 );
  auto l14 = lit( kX1, true ), l15 = lit( kX2, true );
  auto a7 = term( l14, l15 );
  auto o3 = b.make_or( a6, a7 );
  auto g2 = b.make_and( o2, o3 );

  Spec s;
  s.circuit = b.build( b.make_or( g1, g2 ) );
  s.vars.declare( kI, VarKind::input, "i" );
  s.vars.declare( kX1, VarKind::output, "x1" );
  s.vars.declare( kX2, VarKind::output, "x2" );
  s.inputs = { kI };
  s.outputs = { kX1, kX2 };
  return s;
}

LeafSequence seq( std::initializer_list<std::initializer_list<std::uint32_t>> sets )
{
  LeafSequence out;
  for ( const auto& s : sets )
  {
    LeafSet set;
    for ( auto i : s )
    {
      set.push_back( leaf_id( i ) );
    }
    out.push_back( make_leaf_set( set ) );
  }
  return out;
}

Circuit random_circuit( std::mt19937& rng, const RandomCircuitOptions& options )
{
  std::uniform_real_distribution<double> coin( 0.0, 1.0 );
  std::uniform_int_distribution<std::uint32_t> var( 1, options.num_vars );
  std::uniform_int_distribution<std::uint32_t> nleaves( 1, options.max_leaves );

  CircuitBuilder b;
  std::vector<NodeRef> pool, all;
  auto count = nleaves( rng );
  for ( std::uint32_t k = 0; k < count; ++k )
  {
    NodeRef n;
    if ( coin( rng ) < options.constant_prob )
    {
      n = b.constant( coin( rng ) < 0.5 );
    }
    else
    {
      n = b.literal( { var( rng ), coin( rng ) < 0.5 } );
    }
    pool.push_back( n );
    all.push_back( n );
  }
  std::shuffle( pool.begin(), pool.end(), rng );
  while ( pool.size() > 1 )
  {
    std::uniform_int_distribution<std::size_t> pick( 0, pool.size() - 1 );
    auto i = pick( rng );
    auto a = pool[i];
    pool.erase( pool.begin() + static_cast<std::ptrdiff_t>( i ) );
    NodeRef c;
    if ( coin( rng ) < options.share_prob && !all.empty() )
    {
      std::uniform_int_distribution<std::size_t> any( 0, all.size() - 1 );
      c = all[any( rng )];
      if ( c == a )
      {
        pool.push_back( a );
        continue;
      }
      // keep the other pool entries alive: only reuse, do not consume
      auto g = b.gate( coin( rng ) < 0.5 ? Gate::conj : Gate::disj, a, c );
      pool.push_back( g );
      all.push_back( g );
      continue;
    }
    std::uniform_int_distribution<std::size_t> pick2( 0, pool.size() - 1 );
    auto j = pick2( rng );
    c = pool[j];
    pool.erase( pool.begin() + static_cast<std::ptrdiff_t>( j ) );
    auto g = b.gate( coin( rng ) < 0.5 ? Gate::conj : Gate::disj, a, c );
    pool.push_back( g );
    all.push_back( g );
  }
  return b.build( pool.front() );
}

Circuit random_cnf( std::mt19937& rng, std::uint32_t num_vars, std::uint32_t num_clauses, std::uint32_t width )
{
  std::uniform_int_distribution<std::uint32_t> var( 1, num_vars );
  std::bernoulli_distribution sign( 0.5 );
  CircuitBuilder b;
  std::vector<NodeRef> clauses;
  for ( std::uint32_t c = 0; c < num_clauses; ++c )
  {
    std::vector<VarId> vs;
    while ( vs.size() < std::min( width, num_vars ) )
    {
      auto v = var( rng );
      if ( std::find( vs.begin(), vs.end(), v ) == vs.end() )
      {
        vs.push_back( v );
      }
    }
    std::vector<NodeRef> lits;
    for ( auto v : vs )
    {
      lits.push_back( b.literal( { v, sign( rng ) } ) );
    }
    clauses.push_back( b.disjunction( lits ) );
  }
  return b.build( b.conjunction( clauses ) );
}

Spec random_partition( std::mt19937& rng, Circuit c, std::uint32_t num_vars, std::uint32_t num_outputs )
{
  std::vector<VarId> vars( num_vars );
  std::iota( vars.begin(), vars.end(), 1u );
  std::shuffle( vars.begin(), vars.end(), rng );
  std::vector<VarId> outputs( vars.begin(), vars.begin() + num_outputs );
  std::vector<VarId> inputs( vars.begin() + num_outputs, vars.end() );
  std::sort( outputs.begin(), outputs.end() );
  std::sort( inputs.begin(), inputs.end() );
  return make_spec( std::move( c ), inputs, outputs );
}

} // namespace gen

namespace gen
{

saunf::LeafSequence random_sequence( std::mt19937& rng, const saunf::Spec& spec, double corrupt )
{
  using namespace saunf;
  std::vector<Literal> lits;
  for ( auto x : spec.outputs )
  {
    lits.push_back( Literal::pos( x ) );
    lits.push_back( Literal::neg( x ) );
  }
  std::shuffle( lits.begin(), lits.end(), rng );
  std::uniform_real_distribution<double> coin( 0.0, 1.0 );

  std::vector<bool> used( spec.circuit.num_leaves() );
  LeafSequence seq;
  for ( auto lit : lits )
  {
    std::vector<LeafId> pool;
    for ( auto leaf : spec.circuit.leaves_labeled( lit ) )
    {
      if ( !used[index( leaf )] )
      {
        pool.push_back( leaf );
      }
    }
    // split the literal's leaves into up to two sets, at random positions
    while ( !pool.empty() && coin( rng ) < 0.8 )
    {
      std::shuffle( pool.begin(), pool.end(), rng );
      auto take = 1 + rng() % pool.size();
      LeafSet set( pool.begin(), pool.begin() + take );
      pool.erase( pool.begin(), pool.begin() + take );
      std::sort( set.begin(), set.end() );
      for ( auto leaf : set )
      {
        used[index( leaf )] = true;
      }
      seq.push_back( std::move( set ) );
    }
  }
  std::shuffle( seq.begin(), seq.end(), rng );

  if ( !seq.empty() && coin( rng ) < corrupt )
  {
    auto& victim = seq[rng() % seq.size()];
    auto extra = leaf_id( rng() % spec.circuit.num_leaves() );
    if ( !std::binary_search( victim.begin(), victim.end(), extra ) )
    {
      victim.push_back( extra );
      std::sort( victim.begin(), victim.end() );
    }
  }
  return seq;
}

} // namespace gen
