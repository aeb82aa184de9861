#include <saunf/arithmetic.hpp>
#include <saunf/kernels.hpp>

#include <benchmark/benchmark.h>

using namespace saunf;

namespace
{

// middle product bit of an n-bit multiplier, over all 2n operand bits
void bm_truth_table( benchmark::State& state, Exec exec )
{
  auto n = static_cast<std::uint32_t>( state.range( 0 ) );
  auto g = build_multiplier( n ).bit( n );
  BitLayout w{ n };
  std::vector<VarId> vars;
  for ( std::uint32_t k = 1; k <= n; ++k )
  {
    vars.push_back( w.x( k ) );
    vars.push_back( w.y( k ) );
  }
  for ( auto _ : state )
    benchmark::DoNotOptimize( truth_table( g, vars, exec ) );
  state.counters["assignments"] = benchmark::Counter( double( 1ull << vars.size() ),
                                                      benchmark::Counter::kIsIterationInvariantRate );
}

void bm_verify_exhaustive( benchmark::State& state, Exec exec )
{
  auto n = static_cast<std::uint32_t>( state.range( 0 ) );
  auto spec = build_odd_division( n );
  auto psi = odd_division_skolem( n );
  for ( auto _ : state )
  {
    bool ok = verify_skolem_exhaustive( spec, psi, exec );
    if ( !ok )
      state.SkipWithError( "vector rejected" );
    benchmark::DoNotOptimize( ok );
  }
}

} // namespace

BENCHMARK_CAPTURE( bm_truth_table, serial, Exec::serial )->DenseRange( 6, 10, 2 )->Unit( benchmark::kMillisecond );
BENCHMARK_CAPTURE( bm_truth_table, parallel, Exec::parallel )->DenseRange( 6, 10, 2 )->Unit( benchmark::kMillisecond );
BENCHMARK_CAPTURE( bm_verify_exhaustive, serial, Exec::serial )->DenseRange( 3, 5 )->Unit( benchmark::kMillisecond );
BENCHMARK_CAPTURE( bm_verify_exhaustive, parallel, Exec::parallel )->DenseRange( 3, 5 )->Unit( benchmark::kMillisecond );

BENCHMARK_MAIN();
