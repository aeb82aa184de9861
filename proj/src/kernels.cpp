#include "saunf/kernels.hpp"

#include "saunf/error.hpp"

#include <algorithm>
#include <map>

#include <omp.h>

namespace saunf
{

namespace
{

constexpr std::size_t kMaxVars = 30;

// Values of the first six variables across the 64 lanes of a word.
constexpr std::uint64_t kLane[6] = { 0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
                                     0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull };

struct Program
{
  // per node: leaf column (-1 constant, -2 gate), negated flag or constant value
  std::vector<int> column;
  std::vector<char> flag;
  const Circuit* g;
};

Program compile( const Circuit& g, std::span<const VarId> vars )
{
  std::map<VarId, int> col;
  for ( std::size_t k = 0; k < vars.size(); ++k )
  {
    col[vars[k]] = static_cast<int>( k );
  }
  Program p{ std::vector<int>( g.size(), -2 ), std::vector<char>( g.size(), 0 ), &g };
  for ( NodeRef n = 0; n < g.size(); ++n )
  {
    const auto& node = g.node( n );
    if ( !node.is_leaf() )
    {
      continue;
    }
    const auto& l = g.label( node.leaf );
    if ( l.is_constant() )
    {
      p.column[n] = -1;
      p.flag[n] = l.constant_value();
      continue;
    }
    auto it = col.find( l.literal().var );
    if ( it == col.end() )
    {
      throw PreconditionError( "truth table: v" + std::to_string( l.literal().var ) + " not enumerated" );
    }
    p.column[n] = it->second;
    p.flag[n] = l.literal().negated;
  }
  return p;
}

std::uint64_t eval_word( const Program& p, std::uint64_t word, std::vector<std::uint64_t>& scratch )
{
  const auto& g = *p.g;
  scratch.resize( g.size() );
  for ( NodeRef n = 0; n < g.size(); ++n )
  {
    const auto& node = g.node( n );
    auto c = p.column[n];
    std::uint64_t v;
    if ( c == -2 )
    {
      v = node.gate == Gate::conj ? scratch[node.lhs] & scratch[node.rhs] : scratch[node.lhs] | scratch[node.rhs];
    }
    else if ( c == -1 )
    {
      v = p.flag[n] ? ~0ull : 0ull;
    }
    else
    {
      v = c < 6 ? kLane[c] : ( ( word >> ( c - 6 ) ) & 1 ? ~0ull : 0ull );
      if ( p.flag[n] )
      {
        v = ~v;
      }
    }
    scratch[n] = v;
  }
  return scratch[g.root()];
}

std::uint64_t used_mask( std::size_t num_vars )
{
  return num_vars >= 6 ? ~0ull : ( ( 1ull << ( 1u << num_vars ) ) - 1 );
}

} // namespace

std::vector<std::uint64_t> truth_table( const Circuit& g, std::span<const VarId> vars, Exec exec )
{
  if ( vars.size() > kMaxVars )
  {
    throw PreconditionError( "truth table: too many variables" );
  }
  auto prog = compile( g, vars );
  const std::int64_t words = vars.size() > 6 ? std::int64_t{ 1 } << ( vars.size() - 6 ) : 1;
  std::vector<std::uint64_t> table( words );
  auto mask = used_mask( vars.size() );

  if ( exec == Exec::serial )
  {
    std::vector<std::uint64_t> scratch;
    for ( std::int64_t w = 0; w < words; ++w )
    {
      table[w] = eval_word( prog, w, scratch ) & mask;
    }
    return table;
  }

#pragma omp parallel
  {
    std::vector<std::uint64_t> scratch;
#pragma omp for schedule( static )
    for ( std::int64_t w = 0; w < words; ++w )
    {
      table[w] = eval_word( prog, w, scratch ) & mask;
    }
  }
  return table;
}

bool verify_skolem_exhaustive( const Spec& spec, const SkolemVector& psi, Exec exec )
{
  // inputs occupy the low bits so each input assignment is a column of the
  // table that repeats for every output assignment
  std::vector<VarId> ins = spec.inputs;
  std::vector<VarId> outs;
  for ( auto v : spec.circuit.variables() )
  {
    if ( !spec.is_input( v ) )
    {
      outs.push_back( v );
    }
  }
  auto g_psi = substitute( spec.circuit, psi, spec.inputs );
  std::vector<VarId> all = ins;
  all.insert( all.end(), outs.begin(), outs.end() );

  auto full = truth_table( spec.circuit, all, exec );
  auto subst = truth_table( g_psi, ins, exec );

  const std::size_t n_in = std::size_t{ 1 } << ins.size();
  const std::size_t n_out = std::size_t{ 1 } << outs.size();
  auto bit = []( const std::vector<std::uint64_t>& t, std::size_t a ) { return ( t[a >> 6] >> ( a & 63 ) ) & 1; };

  const std::int64_t inputs_total = static_cast<std::int64_t>( n_in );
  bool ok = true;
#pragma omp parallel for reduction( && : ok ) if ( exec == Exec::parallel )
  for ( std::int64_t i = 0; i < inputs_total; ++i )
  {
    if ( bit( subst, i ) )
    {
      continue;
    }
    for ( std::size_t x = 0; x < n_out; ++x )
    {
      if ( bit( full, i + x * n_in ) )
      {
        ok = false;
        break;
      }
    }
  }
  return ok;
}

} // namespace saunf
