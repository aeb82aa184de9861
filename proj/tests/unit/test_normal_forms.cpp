#include "../support/brute_force.hpp"
#include "../support/generators.hpp"

#include <saunf/error.hpp>
#include <saunf/normal_forms.hpp>
#include <saunf/transforms.hpp>

#include <doctest.h>

#include <random>

using namespace saunf;
using gen::kI;
using gen::kX1;
using gen::kX2;

namespace
{

int bf_code( const SaunfVerdict& v )
{
  return v.passed() ? 0 : v.condition;
}

} // namespace

TEST_CASE( "running example membership" )
{
  auto spec = gen::running_example();
  auto ok = check_saunf( spec, gen::seq( { { 3 }, { 7 }, { 5 }, { 1 } } ) );
  CHECK( ok.passed() );
  CHECK( ok.describe() == "PASS" );

  auto bad = check_saunf( spec, gen::seq( { { 10 }, { 7 }, { 5 }, { 1 } } ) );
  CHECK( !bad.passed() );
  CHECK( bad.condition == 3 );
  CHECK( bad.sigma.get( kI ) == false );
  CHECK( bad.sigma.get( kX2 ) == false );

  // prefix of the witness: the residue still depends on X
  auto prefix = check_saunf( spec, gen::seq( { { 3 }, { 7 } } ) );
  CHECK( prefix.condition == 5 );

  CHECK( check_saunf( spec, gen::seq( { { 3 }, { 3 } } ) ).condition == 1 );
  CHECK( check_saunf( spec, gen::seq( { { 3, 5 } } ) ).condition == 2 );
  // input literal
  CHECK( check_saunf( spec, gen::seq( { { 0 } } ) ).condition == 2 );

  CHECK_THROWS_AS( check_saunf( spec, { LeafSet{} } ), PreconditionError );
  CHECK_THROWS_AS( check_saunf( spec, gen::seq( { { 42 } } ) ), PreconditionError );

  auto empty = check_saunf( spec, {} );
  CHECK( !empty.accepted() );
  CHECK( empty.condition == 0 );
}

TEST_CASE( "empty sequence over an independent circuit" )
{
  CircuitBuilder b;
  auto l = gen::pair2( b, Gate::disj, Label::of( Literal::pos( 2 ) ), Label::of( Literal::neg( 2 ) ) );
  auto r = b.literal( Literal::pos( 1 ) );
  auto g = b.build( b.make_and( l, r ) );
  auto spec = make_spec( g, { 1 }, { 2 } );
  auto v = check_saunf( spec, {} );
  CHECK( v.status == SaunfVerdict::Status::independent );
  CHECK( v.accepted() );
  CHECK( !v.passed() );
}

TEST_CASE( "running example is not in SynNNF" )
{
  auto spec = gen::running_example();
  VarId a[] = { kX1, kX2 };
  VarId b[] = { kX2, kX1 };
  CHECK( !check_synnnf( spec, a ) );
  CHECK( !check_synnnf( spec, b ) );
  CHECK_THROWS_AS( synnnf_to_saunf_sequence( spec, a ), PreconditionError );
  VarId bad[] = { kX1 };
  CHECK_THROWS_AS( check_synnnf( spec, bad ), PreconditionError );
  CHECK( !single_polarity_witness( spec ) );
}

TEST_CASE( "single polarity CNF" )
{
  // (¬x1 ∨ i1) ∧ (¬x2 ∨ ¬x1 ∨ i2) ∧ (¬x2 ∨ ¬i1)
  CircuitBuilder b;
  auto c1 = gen::pair2( b, Gate::disj, Label::of( Literal::neg( 3 ) ), Label::of( Literal::pos( 1 ) ) );
  auto c2a = gen::pair2( b, Gate::disj, Label::of( Literal::neg( 4 ) ), Label::of( Literal::neg( 3 ) ) );
  auto c2b = b.literal( Literal::pos( 2 ) );
  auto c2 = b.make_or( c2a, c2b );
  auto c3 = gen::pair2( b, Gate::disj, Label::of( Literal::neg( 4 ) ), Label::of( Literal::neg( 1 ) ) );
  auto c12 = b.make_and( c1, c2 );
  auto g = b.build( b.make_and( c12, c3 ) );
  auto spec = make_spec( g, { 1, 2 }, { 3, 4 } );

  auto w = single_polarity_witness( spec );
  REQUIRE( w );
  CHECK( w->size() == 2 );
  CHECK( check_saunf( spec, *w ).passed() );
  VarId order[] = { 4, 3 };
  CHECK( check_synnnf( spec, order ) );
  auto s = synnnf_to_saunf_sequence( spec, order );
  CHECK( s.size() == 2 );
  CHECK( check_saunf( spec, s ).passed() );
}

TEST_CASE( "verdict cache" )
{
  auto spec = gen::running_example();
  SaunfCache cache;
  auto s = gen::seq( { { 3 }, { 7 }, { 5 }, { 1 } } );
  CHECK( check_saunf( spec, s, default_oracle(), &cache ).passed() );
  CHECK( check_saunf( spec, s, default_oracle(), &cache ).passed() );
  CHECK( cache.size() == 1 );
  CHECK( cache.hits() == 1 );
  auto other = spec;
  other.outputs = { kX1 };
  check_saunf( other, s, default_oracle(), &cache );
  CHECK( cache.size() == 2 );
}

TEST_CASE( "membership agrees with enumeration on random circuits" )
{
  std::mt19937 rng( 11 );
  gen::RandomCircuitOptions opt;
  opt.num_vars = 6;
  opt.max_leaves = 12;
  int passes = 0;
  int by_condition[6] = {};
  for ( int t = 0; t < 300; ++t )
  {
    auto g = gen::random_circuit( rng, opt );
    auto spec = gen::random_partition( rng, g, opt.num_vars, 1 + rng() % 3 );
    auto seq = gen::random_sequence( rng, spec );
    if ( seq.empty() )
    {
      continue;
    }
    auto got = check_saunf( spec, seq );
    auto want = bf::check_saunf( spec.circuit, spec.outputs, seq );
    REQUIRE( bf_code( got ) == want );
    ++by_condition[want];
    passes += got.passed();
  }
  CHECK( passes >= 10 );
  CHECK( by_condition[3] > 0 );
  CHECK( by_condition[4] > 0 );
  CHECK( by_condition[5] > 0 );
}

TEST_CASE( "SynNNF implies SAUNF on random circuits" )
{
  std::mt19937 rng( 5 );
  gen::RandomCircuitOptions opt;
  opt.num_vars = 5;
  opt.max_leaves = 10;
  int synnnf = 0;
  for ( int t = 0; t < 300; ++t )
  {
    auto g = gen::random_circuit( rng, opt );
    auto spec = gen::random_partition( rng, g, opt.num_vars, 2 );
    auto order = spec.outputs;
    std::shuffle( order.begin(), order.end(), rng );
    if ( !check_synnnf( spec, order ) )
    {
      continue;
    }
    ++synnnf;
    auto seq = synnnf_to_saunf_sequence( spec, order );
    if ( seq.empty() )
    {
      CHECK( check_saunf( spec, seq ).status == SaunfVerdict::Status::independent );
      continue;
    }
    CHECK( check_saunf( spec, seq ).passed() );
    CHECK( bf::check_saunf( spec.circuit, spec.outputs, seq ) == 0 );
  }
  CHECK( synnnf >= 20 );
}
