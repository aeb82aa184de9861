// One PASS/FAIL line per acceptance criterion. Exit status is 0 iff the set
// of failing criteria equals the --expect-fail list (empty by default).

#include "../support/brute_force.hpp"
#include "../support/generators.hpp"

#include <saunf/algebra.hpp>
#include <saunf/arithmetic.hpp>
#include <saunf/compiler.hpp>
#include <saunf/error.hpp>
#include <saunf/kernels.hpp>
#include <saunf/skolem.hpp>
#include <saunf/tseitin.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <iostream>
#include <set>

using namespace saunf;
using gen::kI;
using gen::kX1;
using gen::kX2;

namespace
{

// ---- pinned tolerances ----
constexpr double kExampleSecondsMax = 1.0;
constexpr int kOracleInstances = 500;
constexpr std::uint32_t kOracleMaxVars = 8;
constexpr std::uint32_t kOracleMaxLeaves = 12;
constexpr double kOracleSecondsMax = 60.0;
constexpr int kCorpusSize = 100;
constexpr std::uint32_t kCorpusMaxVars = 10;
constexpr std::uint32_t kCorpusMaxClauses = 18;
constexpr int kWitnessesWanted = 100;
constexpr int kWitnessAttemptsMax = 200;
constexpr std::uint64_t kCompileBudgetMs = 10000;
constexpr double kCompletedFractionMin = 0.95;
constexpr std::size_t kSizeSlackPerOutput = 12;
constexpr std::size_t kSizeSlackConstant = 8;
constexpr int kClosurePairs = 200;
constexpr int kClosureCaseMin = 20; // each of clash / no clash must occur this often
constexpr std::uint32_t kCorpusSeed = 2024;

using Clock = std::chrono::steady_clock;

double seconds_since( Clock::time_point start )
{
  return std::chrono::duration<double>( Clock::now() - start ).count();
}

struct Outcome
{
  bool pass = true;
  std::vector<std::string> notes;

  void require( bool ok, const std::string& what )
  {
    if ( !ok )
    {
      pass = false;
      notes.push_back( "failed: " + what );
    }
  }
  void note( const std::string& s ) { notes.push_back( s ); }
};

const std::vector<std::optional<Label>> kNone;

/// Membership by enumeration; an empty sequence is accepted iff the circuit
/// is independent of the outputs.
bool bf_accepts( const Spec& spec, const LeafSequence& seq )
{
  if ( seq.empty() )
    return bf::independent( spec.circuit, kNone, spec.outputs );
  return bf::check_saunf( spec.circuit, spec.outputs, seq ) == 0;
}

bool bf_equivalent_to( const Circuit& g, const std::function<bool( const bf::Values& )>& f,
                       const std::vector<VarId>& vars )
{
  bool same = true;
  bf::for_each_assignment( vars, [&]( const bf::Values& v ) { same = same && bf::eval( g, v ) == f( v ); } );
  return same;
}

std::vector<Circuit> components( const SkolemVector& psi )
{
  std::vector<Circuit> out;
  for ( auto v : psi.vars )
    out.push_back( psi.function( v ) );
  return out;
}

// ---- criterion 1 ----

/// The four cofactor values of `lit` under σ, computed by leaf overrides.
bool replay_by_overrides( const Circuit& g, Literal lit, const bf::Values& sigma )
{
  for ( int w = 0; w < 2; ++w )
  {
    for ( int w2 = 0; w2 < 2; ++w2 )
    {
      std::vector<std::optional<Label>> ov( g.num_leaves() );
      for ( std::uint32_t k = 0; k < g.num_leaves(); ++k )
      {
        const auto& l = g.label( leaf_id( k ) );
        if ( l.is( lit ) )
          ov[k] = Label::constant( w );
        else if ( l.is( ~lit ) )
          ov[k] = Label::constant( w2 );
      }
      auto v = sigma;
      v[lit.var] = false; // no leaf reads it any more
      if ( bf::eval( g, ov, v ) != ( w && w2 ) )
        return false;
    }
  }
  return true;
}

Outcome criterion1()
{
  Outcome o;
  auto start = Clock::now();
  auto spec = gen::running_example();
  auto s = gen::seq( { { 3 }, { 7 }, { 5 }, { 1 } } );
  auto s10 = gen::seq( { { 10 }, { 7 }, { 5 }, { 1 } } );

  auto v = check_saunf( spec, s );
  o.require( v.passed(), "S is in SAUNF" );
  auto v10 = check_saunf( spec, s10 );
  o.require( !v10.accepted() && v10.condition == 3, "S' fails condition 3 (got " + v10.describe() + ")" );

  VarId ab[] = { kX1, kX2 };
  VarId ba[] = { kX2, kX1 };
  o.require( !check_synnnf( spec, ab ), "not SynNNF for (x1,x2)" );
  o.require( !check_synnnf( spec, ba ), "not SynNNF for (x2,x1)" );

  auto r = check_literal_realizable( spec.circuit, Literal::pos( kX1 ) );
  o.require( r.realizable, "x1 realizable" );
  o.require( replay_realizability( spec.circuit, Literal::pos( kX1 ), r.sigma ), "oracle witness replays" );
  Assignment sigma;
  sigma.set( kI, false );
  sigma.set( kX2, false );
  o.require( replay_realizability( spec.circuit, Literal::pos( kX1 ), sigma ), "sigma(i)=sigma(x2)=F replays" );
  double elapsed = seconds_since( start );

  // independent cross-checks, outside the timed section
  o.require( bf::check_saunf( spec.circuit, spec.outputs, s ) == 0, "enumeration accepts S" );
  o.require( bf::check_saunf( spec.circuit, spec.outputs, s10 ) == 3, "enumeration rejects S' at condition 3" );
  o.require( replay_by_overrides( spec.circuit, Literal::pos( kX1 ), { { kI, false }, { kX2, false } } ),
             "sigma(i)=sigma(x2)=F replays by enumeration" );
  o.require( elapsed < kExampleSecondsMax, fmt::format( "under {} s", kExampleSecondsMax ) );
  o.note( fmt::format( "verdicts {} / {}, sigma {}, {:.3f} s", v.describe(), v10.describe(),
                       to_string( r.sigma, [&]( VarId x ) { return spec.var_name( x ); } ), elapsed ) );
  return o;
}

// ---- criterion 2 ----

Outcome criterion2()
{
  Outcome o;
  auto spec = gen::running_example();
  auto r = skgen( spec, gen::seq( { { 3 }, { 7 }, { 5 }, { 1 } } ) );
  const auto& lv = r.trace.levels;
  o.require( lv.size() == 4, "four levels" );
  if ( lv.size() == 4 )
    o.require( lv[3].h.is_constant() && lv[3].h.constant_value(), "level-4 residual is constant T" );

  o.require( verify_skolem( spec, r.psi ), "synthesized vector passes SAT verification" );
  o.require( verify_skolem_exhaustive( spec, r.psi, Exec::serial ), "synthesized vector passes exhaustive check" );
  o.require( bf::skolem_ok( spec.circuit, spec.inputs, spec.outputs, components( r.psi ) ),
             "synthesized vector passes enumeration for both values of i" );

  CircuitBuilder b;
  auto ni = b.build( b.literal( Literal::neg( kI ) ) );
  auto pi = b.build( b.literal( Literal::pos( kI ) ) );
  auto psi_ni = make_skolem_vector( { kX1, kX2 }, { ni, ni } );
  auto psi_pi = make_skolem_vector( { kX1, kX2 }, { pi, pi } );
  o.require( verify_skolem( spec, psi_ni ), "(-i,-i) accepted" );
  o.require( !verify_skolem( spec, psi_pi ), "(i,i) rejected" );
  o.require( bf::skolem_ok( spec.circuit, spec.inputs, spec.outputs, { ni, ni } ), "(-i,-i) accepted by enumeration" );
  o.require( !bf::skolem_ok( spec.circuit, spec.inputs, spec.outputs, { pi, pi } ), "(i,i) rejected by enumeration" );
  o.note( fmt::format( "{} levels, |Psi| = {}", lv.size(), r.psi.size() ) );
  return o;
}

// ---- criterion 3 ----

Outcome criterion3()
{
  Outcome o;
  auto start = Clock::now();
  std::mt19937 rng( kCorpusSeed + 3 );
  std::size_t checks = 0, disagreements = 0;
  int saunf_pass = 0;
  for ( int t = 0; t < kOracleInstances; ++t )
  {
    gen::RandomCircuitOptions opt;
    opt.num_vars = 2 + rng() % ( kOracleMaxVars - 1 );
    opt.max_leaves = 2 + rng() % ( kOracleMaxLeaves - 1 );
    auto g = gen::random_circuit( rng, opt );
    auto lit = Literal{ VarId( 1 + rng() % opt.num_vars ), bool( rng() % 2 ) };

    auto lr = check_literal_realizable( g, lit );
    ++checks;
    disagreements += lr.realizable != bf::literal_realizable( g, kNone, lit ).has_value();

    LeafSet set;
    for ( auto leaf : g.leaves_labeled( lit ) )
      if ( rng() % 2 )
        set.push_back( leaf );
    std::sort( set.begin(), set.end() );
    if ( !set.empty() )
    {
      ++checks;
      disagreements += check_subset_realizable( g, set ).realizable != bf::subset_realizable( g, kNone, set ).has_value();
    }

    auto spec = gen::random_partition( rng, g, opt.num_vars, 1 + rng() % std::min<std::uint32_t>( 3, opt.num_vars ) );
    auto seq = gen::random_sequence( rng, spec );
    if ( !seq.empty() )
    {
      ++checks;
      auto v = check_saunf( spec, seq );
      disagreements += ( v.passed() ? 0 : v.condition ) != bf::check_saunf( spec.circuit, spec.outputs, seq );
      saunf_pass += v.passed();
    }
  }
  double elapsed = seconds_since( start );
  o.require( disagreements == 0, fmt::format( "{} disagreements", disagreements ) );
  o.require( elapsed < kOracleSecondsMax, fmt::format( "under {} s", kOracleSecondsMax ) );
  o.note( fmt::format( "{} circuits, {} verdicts compared, {} disagreements, {} SAUNF passes, {:.1f} s", kOracleInstances,
                       checks, disagreements, saunf_pass, elapsed ) );
  return o;
}

// ---- shared random 3-CNF corpus (criteria 4 and 5) ----

Spec corpus_instance( int k )
{
  std::mt19937 rng( kCorpusSeed * 1000 + k );
  std::uint32_t nv = 3 + rng() % ( kCorpusMaxVars - 2 );
  std::uint32_t nc = 1 + rng() % kCorpusMaxClauses;
  auto g = gen::random_cnf( rng, nv, nc, 3 );
  return gen::random_partition( rng, g, nv, 1 + rng() % ( nv - 1 ) );
}

struct SubsetReturn
{
  Cnf cnf;
  LeafSet set;
};

struct Compiled
{
  Spec input;
  std::optional<CompileResult> result;
  std::vector<SubsetReturn> subsets;
  bool timed_out = false;
};

Compiled compile_instance( int k )
{
  Compiled c{ corpus_instance( k ) };
  CompileOptions options;
  options.timeout_ms = kCompileBudgetMs;
  options.on_subset = [&]( const Cnf& cnf, Literal, const SubsetResult& r ) { c.subsets.push_back( { cnf, r.set } ); };
  try
  {
    c.result = get_saunf( c.input, options );
  }
  catch ( const ResourceError& )
  {
    c.timed_out = true;
  }
  return c;
}

std::map<int, Compiled>& corpus_cache()
{
  static std::map<int, Compiled> cache;
  return cache;
}

const Compiled& compiled( int k )
{
  auto& cache = corpus_cache();
  auto it = cache.find( k );
  if ( it == cache.end() )
    it = cache.emplace( k, compile_instance( k ) ).first;
  return it->second;
}

// ---- criterion 4 ----

Outcome criterion4()
{
  Outcome o;
  int witnesses = 0;
  int attempts = 0;
  std::size_t failures = 0;
  std::ptrdiff_t min_slack = std::numeric_limits<std::ptrdiff_t>::max();
  for ( ; witnesses < kWitnessesWanted && attempts < kWitnessAttemptsMax; ++attempts )
  {
    const auto& c = compiled( attempts );
    if ( !c.result )
      continue;
    ++witnesses;
    const auto& w = *c.result;
    auto psi = skgen( w.spec, w.seq ).psi;
    auto h = saunf_from_skolem( w.spec, psi );
    auto m = w.spec.outputs.size();
    auto bound = w.spec.circuit.size() + psi.size() + kSizeSlackPerOutput * m + kSizeSlackConstant;
    min_slack = std::min<std::ptrdiff_t>( min_slack, std::ptrdiff_t( bound ) - std::ptrdiff_t( h.spec.circuit.size() ) );

    bool ok = check_equivalent( h.spec.circuit, w.spec.circuit );
    ok = ok && check_saunf( h.spec, h.seq ).passed();
    ok = ok && bf::equivalent( h.spec.circuit, w.spec.circuit );
    ok = ok && bf::check_saunf( h.spec.circuit, h.spec.outputs, h.seq ) == 0;
    ok = ok && h.spec.circuit.size() <= bound;
    if ( !ok )
    {
      ++failures;
      o.note( fmt::format( "instance {}: |H|={} bound={}", attempts, h.spec.circuit.size(), bound ) );
    }
  }
  o.require( witnesses == kWitnessesWanted, fmt::format( "{} of {} witnesses compiled", witnesses, kWitnessesWanted ) );
  o.require( failures == 0, fmt::format( "{} round trips failed", failures ) );
  o.note( fmt::format( "{} witnesses from {} instances, {} failures, min size slack {}", witnesses, attempts, failures,
                       min_slack ) );
  return o;
}

// ---- criterion 5 ----

Outcome criterion5()
{
  Outcome o;
  int completed = 0;
  std::size_t bad_outputs = 0, subset_returns = 0, empty_returns = 0, realizable_returns = 0;
  for ( int k = 0; k < kCorpusSize; ++k )
  {
    const auto& c = compiled( k );
    for ( const auto& s : c.subsets )
    {
      ++subset_returns;
      if ( s.set.empty() )
      {
        ++empty_returns;
        continue;
      }
      auto view = cnf_circuit( s.cnf ).circuit;
      auto set = s.set;
      std::sort( set.begin(), set.end() );
      if ( check_subset_realizable( view, set ).realizable || bf::subset_realizable( view, kNone, set ) )
        ++realizable_returns;
    }
    if ( !c.result )
      continue;
    ++completed;
    const auto& r = *c.result;
    bool ok = check_equivalent( r.spec.circuit, c.input.circuit ) && bf::equivalent( r.spec.circuit, c.input.circuit );
    auto v = check_saunf( r.spec, r.seq );
    ok = ok && v.accepted() && bf_accepts( r.spec, r.seq );
    bad_outputs += !ok;
  }
  double fraction = double( completed ) / kCorpusSize;
  o.require( fraction >= kCompletedFractionMin, fmt::format( "completed fraction {:.2f}", fraction ) );
  o.require( bad_outputs == 0, fmt::format( "{} outputs failed certification", bad_outputs ) );
  o.require( realizable_returns == 0, fmt::format( "{} subset returns were realizable", realizable_returns ) );
  o.note( fmt::format( "{}/{} completed within {} ms, {} subset returns ({} empty), {} realizable", completed,
                       kCorpusSize, kCompileBudgetMs, subset_returns, empty_returns, realizable_returns ) );
  return o;
}

// ---- criterion 6 ----

/// Clause list over 1..nv where output v only appears with sign[v] when
/// `sign` is given.
Cnf random_clauses( std::mt19937& rng, std::uint32_t nv, const std::map<VarId, bool>* sign )
{
  Cnf cnf( 2 + rng() % 4 );
  for ( auto& clause : cnf )
  {
    auto width = 1 + rng() % 3;
    for ( std::uint32_t k = 0; k < width; ++k )
    {
      VarId v = 1 + rng() % nv;
      bool neg = rng() % 2;
      if ( sign && sign->count( v ) )
        neg = sign->at( v );
      clause.push_back( Literal{ v, neg } );
    }
  }
  return cnf;
}

SaunfWitness compiled_witness( const Cnf& cnf, const std::vector<VarId>& inputs, const std::vector<VarId>& outputs )
{
  auto spec = make_spec( cnf_circuit( cnf ).circuit, inputs, outputs );
  for ( VarId v = 1; v <= inputs.size() + outputs.size(); ++v )
    if ( !spec.vars.contains( v ) )
      spec.vars.declare( v, std::count( inputs.begin(), inputs.end(), v ) ? VarKind::input : VarKind::output );
  auto r = get_saunf( spec );
  return { r.spec, r.seq };
}

/// First output literal with an occurrence in g and its negation in h,
/// found by listing every leaf label of both circuits.
std::optional<Literal> leaf_label_audit( const Circuit& g, const Circuit& h, const std::vector<VarId>& outputs )
{
  std::set<std::pair<VarId, bool>> in_g, in_h;
  for ( const auto& l : g.labels() )
    if ( l.is_literal() )
      in_g.insert( { l.literal().var, l.literal().negated } );
  for ( const auto& l : h.labels() )
    if ( l.is_literal() )
      in_h.insert( { l.literal().var, l.literal().negated } );
  auto sorted = outputs;
  std::sort( sorted.begin(), sorted.end() );
  for ( auto v : sorted )
    for ( bool neg : { false, true } )
      if ( in_g.count( { v, neg } ) && in_h.count( { v, !neg } ) )
        return Literal{ v, neg };
  return std::nullopt;
}

Outcome criterion6()
{
  Outcome o;
  std::mt19937 rng( kCorpusSeed + 6 );
  int clash = 0, no_clash = 0;
  std::size_t disjoin_bad = 0, conjoin_bad = 0, audit_bad = 0;
  for ( int t = 0; t < kClosurePairs; ++t )
  {
    std::uint32_t nv = 3 + rng() % 4;
    std::uint32_t no = 1 + rng() % ( nv - 1 );
    std::vector<VarId> inputs, outputs;
    for ( VarId v = 1; v <= nv; ++v )
      ( v <= no ? outputs : inputs ).push_back( v );

    // half the pairs keep each output in one shared polarity
    std::map<VarId, bool> sign;
    for ( auto v : outputs )
      sign[v] = rng() % 2;
    bool shared = rng() % 2;
    auto a = compiled_witness( random_clauses( rng, nv, shared ? &sign : nullptr ), inputs, outputs );
    auto b = compiled_witness( random_clauses( rng, nv, shared ? &sign : nullptr ), inputs, outputs );

    auto vars = inputs;
    vars.insert( vars.end(), outputs.begin(), outputs.end() );
    auto eval_a = [&]( const bf::Values& v ) { return bf::eval( a.spec.circuit, v ); };
    auto eval_b = [&]( const bf::Values& v ) { return bf::eval( b.spec.circuit, v ); };

    auto d = disjoin( a, b );
    bool d_ok = bf_equivalent_to( d.spec.circuit, [&]( const bf::Values& v ) { return eval_a( v ) || eval_b( v ); }, vars );
    d_ok = d_ok && bf_accepts( d.spec, d.seq ) && check_saunf( d.spec, d.seq ).accepted();
    disjoin_bad += !d_ok;

    auto scan = polarity_scan( a.spec.circuit, b.spec.circuit, outputs );
    auto audit = leaf_label_audit( a.spec.circuit, b.spec.circuit, outputs );
    audit_bad += scan.has_value() != audit.has_value() || ( scan && !( scan->lit == *audit ) );

    auto c = conjoin( a, b );
    auto* w = std::get_if<SaunfWitness>( &c );
    if ( scan )
    {
      ++clash;
      conjoin_bad += w != nullptr;
    }
    else
    {
      ++no_clash;
      bool c_ok = w != nullptr;
      c_ok = c_ok && bf_equivalent_to( w->spec.circuit,
                                       [&]( const bf::Values& v ) { return eval_a( v ) && eval_b( v ); }, vars );
      c_ok = c_ok && bf_accepts( w->spec, w->seq ) && check_saunf( w->spec, w->seq ).accepted();
      conjoin_bad += !c_ok;
    }
  }
  o.require( disjoin_bad == 0, fmt::format( "{} disjunctions failed", disjoin_bad ) );
  o.require( conjoin_bad == 0, fmt::format( "{} conjunctions disagreed with the scan", conjoin_bad ) );
  o.require( audit_bad == 0, fmt::format( "{} scans disagreed with the audit", audit_bad ) );
  o.require( clash >= kClosureCaseMin && no_clash >= kClosureCaseMin, "both scan outcomes exercised" );
  o.note( fmt::format( "{} pairs: {} clash, {} no clash; failures disjoin {}, conjoin {}, audit {}", kClosurePairs, clash,
                       no_clash, disjoin_bad, conjoin_bad, audit_bad ) );
  return o;
}

// ---- criterion 7 ----

/// Closed-form vector against integer arithmetic: for every i whose slice
/// l..j is reachable by some x × y, Ψ(i) must reach it.
bool rlj_ok_by_arithmetic( std::uint32_t n, std::uint32_t l, std::uint32_t j, const SkolemVector& psi )
{
  BitLayout w{ n };
  std::uint64_t words = 1ull << n;
  std::uint64_t mask = ( ( 1ull << ( j - l + 1 ) ) - 1 ) << ( l - 1 );
  std::set<std::uint64_t> reachable;
  for ( std::uint64_t x = 0; x < words; ++x )
    for ( std::uint64_t y = 0; y < words; ++y )
      reachable.insert( ( x * y ) & mask );
  for ( std::uint64_t i = 0; i < ( 1ull << ( 2 * n ) ); ++i )
  {
    if ( !reachable.count( i & mask ) )
      continue;
    Assignment in;
    for ( std::uint32_t k = 1; k <= 2 * n; ++k )
      in.set( w.i( k ), ( i >> ( k - 1 ) ) & 1 );
    auto out = evaluate_skolem( psi, in );
    std::uint64_t x = 0, y = 0;
    for ( std::uint32_t k = 1; k <= n; ++k )
    {
      x |= std::uint64_t( out.at( w.x( k ) ) ) << ( k - 1 );
      y |= std::uint64_t( out.at( w.y( k ) ) ) << ( k - 1 );
    }
    if ( ( ( x * y ) & mask ) != ( i & mask ) )
      return false;
  }
  return true;
}

bool division_ok_by_arithmetic( std::uint32_t n )
{
  BitLayout w{ n };
  auto psi = odd_division_skolem( n );
  std::uint64_t words = 1ull << n;
  std::uint64_t mod = 1ull << ( 2 * n );
  for ( std::uint64_t x = 1; x < words; x += 2 )
    for ( std::uint64_t y = 1; y < words; y += 2 )
    {
      auto i = ( x * y ) % mod;
      Assignment in;
      for ( std::uint32_t k = 1; k <= n; ++k )
        in.set( w.y( k ), ( y >> ( k - 1 ) ) & 1 );
      for ( std::uint32_t k = 1; k <= 2 * n; ++k )
        in.set( w.i( k ), ( i >> ( k - 1 ) ) & 1 );
      auto out = evaluate_skolem( psi, in );
      std::uint64_t got = 0;
      for ( std::uint32_t k = 1; k <= n; ++k )
        got |= std::uint64_t( out.at( w.x( k ) ) ) << ( k - 1 );
      if ( got % words != x )
        return false;
    }
  return true;
}

Outcome criterion7()
{
  Outcome o;
  std::vector<std::string> failed;
  int slices = 0;
  for ( std::uint32_t n = 2; n <= 6; ++n )
  {
    for ( std::uint32_t l = 1; l <= 2 * n; ++l )
    {
      for ( std::uint32_t j = l; j <= 2 * n && j - l < n; ++j )
      {
        ++slices;
        auto spec = build_rlj( n, l, j );
        auto psi = skolem_for_rlj( n, l, j );
        bool ok;
        if ( n <= 3 )
        {
          ok = rlj_ok_by_arithmetic( n, l, j, psi ) && verify_skolem_exhaustive( spec, psi, Exec::parallel );
          if ( ok )
          {
            auto h = saunf_from_skolem( spec, psi );
            ok = check_saunf( h.spec, h.seq ).passed();
          }
        }
        else
        {
          ok = verify_skolem( spec, psi );
        }
        if ( !ok )
          failed.push_back( fmt::format( "({},{},{})", n, l, j ) );
      }
    }
  }
  std::string list;
  for ( const auto& f : failed )
    list += ( list.empty() ? "" : " " ) + f;
  o.require( failed.empty(), fmt::format( "{} of {} slices: {}", failed.size(), slices, list ) );

  for ( std::uint32_t n = 1; n <= 3; ++n )
    o.require( division_ok_by_arithmetic( n ), fmt::format( "odd division n={}", n ) );
  o.require( verify_skolem_exhaustive( build_odd_division( 3 ), odd_division_skolem( 3 ), Exec::parallel ),
             "odd division n=3 exhaustive" );
  {
    // n=2, Y=3, I=9 gives X=3
    BitLayout w{ 2 };
    Assignment in;
    in.set( w.y( 1 ), true );
    in.set( w.y( 2 ), true );
    for ( std::uint32_t k = 1; k <= 4; ++k )
      in.set( w.i( k ), ( 9 >> ( k - 1 ) ) & 1 );
    auto out = evaluate_skolem( odd_division_skolem( 2 ), in );
    o.require( out.at( w.x( 1 ) ) && out.at( w.x( 2 ) ), "n=2, Y=3, I=9 gives X=3" );
  }

  // polynomial size witness: |H(R_1^n)| <= C n^2 with C fixed by the n=2 case
  std::vector<std::size_t> sizes;
  for ( std::uint32_t n = 2; n <= 6; ++n )
    sizes.push_back( saunf_for_rlj( n, 1, n ).spec.circuit.size() );
  double c = double( sizes[0] ) / 4.0;
  std::string trend;
  for ( std::uint32_t n = 2; n <= 6; ++n )
  {
    auto s = sizes[n - 2];
    o.require( double( s ) <= c * n * n, fmt::format( "|H(R_1^{})| = {} exceeds {:.2f} n^2", n, s, c ) );
    trend += fmt::format( "{}{}", trend.empty() ? "" : ",", s );
  }
  o.note( fmt::format( "{} slices, {} failed; R_1^n sizes n=2..6: {} (C = {:.2f})", slices, failed.size(), trend, c ) );
  return o;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "acceptance criteria" };
  std::vector<int> expect_fail;
  std::vector<int> only;
  app.add_option( "--expect-fail", expect_fail, "criteria known to fail" )->delimiter( ',' );
  app.add_option( "--only", only, "run a subset" )->delimiter( ',' );
  CLI11_PARSE( app, argc, argv );

  std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      { 1, criterion1 }, { 2, criterion2 }, { 3, criterion3 }, { 4, criterion4 },
      { 5, criterion5 }, { 6, criterion6 }, { 7, criterion7 } };

  std::set<int> failed;
  for ( auto& [id, run] : criteria )
  {
    if ( !only.empty() && std::find( only.begin(), only.end(), id ) == only.end() )
      continue;
    auto start = Clock::now();
    Outcome o;
    try
    {
      o = run();
    }
    catch ( const std::exception& e )
    {
      o.require( false, std::string( "exception: " ) + e.what() );
    }
    if ( !o.pass )
      failed.insert( id );
    std::cout << fmt::format( "criterion {}: {} ({:.1f} s)\n", id, o.pass ? "PASS" : "FAIL", seconds_since( start ) );
    for ( const auto& n : o.notes )
      std::cout << "  " << n << "\n";
    std::cout.flush();
  }
  std::cout << "criterion 8: excluded (not reproducible at desk scale)\n";

  std::set<int> expected;
  for ( int id : expect_fail )
    if ( only.empty() || std::find( only.begin(), only.end(), id ) != only.end() )
      expected.insert( id );
  if ( failed != expected )
  {
    std::cout << "unexpected outcome: failing set differs from --expect-fail\n";
    return 1;
  }
  return 0;
}
