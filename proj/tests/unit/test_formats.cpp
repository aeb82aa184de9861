#include "../support/brute_force.hpp"
#include "../support/generators.hpp"

#include <saunf/compiler.hpp>
#include <saunf/error.hpp>
#include <saunf/formats.hpp>
#include <saunf/skolem.hpp>
#include <saunf/tseitin.hpp>

#include <doctest.h>

#include <random>
#include <sstream>

using namespace saunf;
using gen::kI;

namespace
{

std::string circuit_text( const Spec& spec, std::span<const LeafSequence> seqs = {} )
{
  std::ostringstream os;
  write_circuit( os, spec, seqs );
  return os.str();
}

CircuitDocument parse( const std::string& text )
{
  std::istringstream is( text );
  return read_circuit( is );
}

std::size_t parse_error_line( const std::string& text )
{
  try
  {
    parse( text );
  }
  catch ( const ParseError& e )
  {
    return e.line();
  }
  return static_cast<std::size_t>( -1 );
}

} // namespace

TEST_CASE( "running example document round trip" )
{
  auto spec = gen::running_example();
  LeafSequence s = gen::seq( { { 3 }, { 7 }, { 5 }, { 1 } } );
  auto text = circuit_text( spec, { &s, 1 } );
  CHECK( text.find( "leaf L15 -3" ) != std::string::npos );
  CHECK( text.find( "seq 4 : {L3} ; {L7} ; {L5} ; {L1}" ) != std::string::npos );

  auto doc = parse( text );
  CHECK( doc.spec.circuit == spec.circuit );
  CHECK( doc.spec.inputs == spec.inputs );
  CHECK( doc.spec.outputs == spec.outputs );
  CHECK( doc.spec.var_name( kI ) == "i" );
  REQUIRE( doc.sequences.size() == 1 );
  CHECK( doc.sequences[0] == s );
  CHECK( circuit_text( doc.spec, doc.sequences ) == text );
}

TEST_CASE( "single leaf and custom names" )
{
  auto doc = parse( "saunf circuit 1\nvar 1 input\nleaf a +1 # only leaf\nroot a\n" );
  CHECK( doc.spec.circuit.size() == 1 );
  CHECK( doc.spec.circuit.leaf_name( leaf_id( 0 ) ) == "a" );
  auto text = circuit_text( doc.spec );
  CHECK( text == "saunf circuit 1\nvar 1 input\nleaf a +1\nroot a\n" );

  // node lines may precede their operands
  auto fwd = parse( "saunf circuit 1\nvar 1 output\nvar 2 input\nnode g OR L0 L1\nleaf L0 -1\nleaf L1 T\nroot g\n" );
  CHECK( fwd.spec.circuit.num_gates() == 1 );
}

TEST_CASE( "circuit parse errors carry line numbers" )
{
  CHECK( parse_error_line( "saunf circuit 1\nvar 1 input\nleaf a +1\nroot b\n" ) == 4 );
  CHECK( parse_error_line( "saunf circuit 1\nvar 1 input\nleaf a +1\nleaf a -1\nroot a\n" ) == 4 );
  CHECK( parse_error_line( "saunf circuit 1\nvar 1 input\nleaf a +1\nnode g AND a h\nnode h OR g a\nroot g\n" ) >= 4 );
  CHECK( parse_error_line( "saunf circuit 1\nvar 1 input\nleaf a +1\nnode g AND a zz\nroot g\n" ) == 4 );
  CHECK( parse_error_line( "saunf circuit 2\n" ) == 1 );
  CHECK( parse_error_line( "saunf circuit 1\nleaf a *1\nroot a\n" ) == 2 );
  CHECK( parse_error_line( "saunf circuit 1\nvar 1 input\nleaf a +1\nroot a\nseq 2 : {a}\n" ) == 5 );
  CHECK( parse_error_line( "saunf circuit 1\nvar 1 input\nleaf a +1\nroot a\nseq 1 : {b}\n" ) == 5 );
  CHECK_THROWS_AS( parse( "saunf circuit 1\nleaf a +1\nroot a\n" ), ParseError ); // undeclared variable
}

TEST_CASE( "witness documents" )
{
  auto spec = gen::running_example();
  auto s = gen::seq( { { 10 }, { 7 }, { 5 }, { 1 } } );
  std::ostringstream os;
  write_witness( os, spec.circuit, s );
  CHECK( os.str() == "saunf witness 1\nseq 4 : {L10} ; {L7} ; {L5} ; {L1}\n" );
  std::istringstream is( os.str() );
  CHECK( read_witness( is, spec.circuit ) == s );

  std::istringstream bad( "saunf witness 1\nseq 1 : {L99}\n" );
  CHECK_THROWS_AS( read_witness( bad, spec.circuit ), ParseError );
}

TEST_CASE( "Skolem documents" )
{
  CircuitBuilder b;
  auto not_i = b.build( b.literal( Literal::neg( kI ) ) );
  auto psi = make_skolem_vector( { gen::kX1, gen::kX2 }, { not_i, not_i } );
  auto example = gen::running_example();
  std::ostringstream os;
  write_skolem( os, psi, &example.vars );
  auto text = os.str();
  // one shared ¬i leaf, two roots
  CHECK( text.find( "leaf L0 -1" ) != std::string::npos );
  CHECK( text.find( "leaf L1" ) == std::string::npos );
  CHECK( text.find( "skolem 2 -> L0" ) != std::string::npos );
  CHECK( text.find( "skolem 3 -> L0" ) != std::string::npos );

  std::istringstream is( text );
  auto back = read_skolem( is );
  CHECK( back.vars == psi.vars );
  CHECK( verify_skolem( gen::running_example(), back ) );
  std::ostringstream again;
  write_skolem( again, back, &example.vars );
  CHECK( again.str() == text );

  // all-⊥ vector
  CircuitBuilder c;
  auto f = c.build( c.constant( false ) );
  auto zero = make_skolem_vector( { 2, 3 }, { f, f } );
  std::ostringstream oz;
  write_skolem( oz, zero );
  CHECK( oz.str().find( "leaf L0 F" ) != std::string::npos );

  // synthesized vector round trip
  auto spec = gen::running_example();
  auto r = skgen( spec, gen::seq( { { 3 }, { 7 }, { 5 }, { 1 } } ) );
  std::ostringstream os2;
  write_skolem( os2, r.psi, &spec.vars );
  std::istringstream is2( os2.str() );
  CHECK( verify_skolem( spec, read_skolem( is2 ) ) );
}

TEST_CASE( "QDIMACS" )
{
  std::istringstream is( "c example\np cnf 2 2\na 1 0\ne 2 0\n2 1 0\n-2 -1 0\n" );
  auto spec = read_qdimacs( is );
  CHECK( spec.inputs == std::vector<VarId>{ 1 } );
  CHECK( spec.outputs == std::vector<VarId>{ 2 } );
  CHECK( spec.circuit.num_leaves() == 4 );
  auto cnf = cnf_clauses( spec.circuit );
  REQUIRE( cnf.size() == 2 );
  CHECK( cnf[0] == Clause{ Literal::pos( 2 ), Literal::pos( 1 ) } );
  CHECK( cnf[1] == Clause{ Literal::neg( 2 ), Literal::neg( 1 ) } );

  std::istringstream free( "p cnf 3 1\n1 -3 0\n" );
  auto f = read_qdimacs( free );
  CHECK( f.inputs == std::vector<VarId>{ 1, 2, 3 } );
  CHECK( f.outputs.empty() );

  std::istringstream three( "p cnf 3 3\ne 1 2 3 0\n1 2 0\n2 3 0\n1 3 0\n" );
  auto t = read_qdimacs( three );
  CHECK( t.circuit.num_gates() == 5 ); // 3 ORs, 2 ANDs
  CHECK( t.circuit.num_leaves() == 6 );

  auto err_line = []( const std::string& text ) {
    std::istringstream s( text );
    try
    {
      read_qdimacs( s );
    }
    catch ( const ParseError& e )
    {
      return e.line();
    }
    return std::size_t( 0 );
  };
  CHECK( err_line( "p cnf x 1\n" ) == 1 );
  CHECK( err_line( "p cnf 2 1\n1 3 0\n" ) == 2 );
  CHECK( err_line( "p cnf 2 1\n1 2\n" ) == 2 );
  CHECK( err_line( "1 2 0\n" ) == 1 );
}

TEST_CASE( "QDIMACS agrees with a clause evaluator" )
{
  std::mt19937 rng( 3 );
  for ( int trial = 0; trial < 50; ++trial )
  {
    int n = 2 + rng() % 5;
    int m = 1 + rng() % 6;
    std::vector<std::vector<int>> clauses;
    std::ostringstream os;
    os << "p cnf " << n << ' ' << m << "\n";
    for ( int c = 0; c < m; ++c )
    {
      std::vector<int> cl;
      int w = 1 + rng() % 3;
      for ( int k = 0; k < w; ++k )
      {
        int v = 1 + rng() % n;
        cl.push_back( rng() % 2 ? v : -v );
        os << cl.back() << ' ';
      }
      os << "0\n";
      clauses.push_back( cl );
    }
    std::istringstream is( os.str() );
    auto spec = read_qdimacs( is );
    for ( int a = 0; a < ( 1 << n ); ++a )
    {
      bf::Values v;
      for ( int k = 1; k <= n; ++k )
        v[k] = ( a >> ( k - 1 ) ) & 1;
      bool expected = true;
      for ( const auto& cl : clauses )
      {
        bool sat = false;
        for ( int l : cl )
          sat = sat || ( v[std::abs( l )] == ( l > 0 ) );
        expected = expected && sat;
      }
      CHECK( bf::eval( spec.circuit, v ) == expected );
    }

    std::ostringstream back;
    write_qdimacs( back, spec );
    std::istringstream again( back.str() );
    CHECK( read_qdimacs( again ).circuit == spec.circuit );
  }
}

TEST_CASE( "compiled witnesses round trip" )
{
  std::mt19937 rng( 8 );
  for ( int trial = 0; trial < 30; ++trial )
  {
    auto g = gen::random_cnf( rng, 5, 2 + rng() % 6, 2 );
    auto spec = gen::random_partition( rng, g, 5, 2 );
    auto r = get_saunf( spec );
    auto text = circuit_text( r.spec, { &r.seq, 1 } );
    auto doc = parse( text );
    CHECK( doc.spec.circuit == r.spec.circuit );
    REQUIRE( doc.sequences.size() == 1 );
    CHECK( doc.sequences[0] == r.seq );
    CHECK( circuit_text( doc.spec, doc.sequences ) == text );
  }
}
