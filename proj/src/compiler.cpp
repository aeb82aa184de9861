#include "saunf/compiler.hpp"

#include "saunf/error.hpp"
#include "saunf/realizability.hpp"
#include "saunf/tseitin.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <set>

namespace saunf
{

std::string CompileStats::summary() const
{
  return "calls=" + std::to_string( calls.load() ) + " splits=" + std::to_string( shannon_splits.load() ) +
         " subsets=" + std::to_string( subset_calls.load() ) + " subset_iterations=" +
         std::to_string( subset_iterations.load() ) + " subset_timeouts=" + std::to_string( subset_timeouts.load() ) +
         " empty_subsets=" + std::to_string( empty_subsets.load() ) + " max_depth=" + std::to_string( max_depth.load() );
}

Cnf cnf_clauses( const Circuit& g )
{
  Cnf out;
  // collect OR-trees under the top AND-tree
  std::vector<NodeRef> clause_roots;
  std::vector<NodeRef> stack{ g.root() };
  while ( !stack.empty() )
  {
    auto n = stack.back();
    stack.pop_back();
    const auto& node = g.node( n );
    if ( node.gate == Gate::conj )
    {
      stack.push_back( node.rhs );
      stack.push_back( node.lhs );
    }
    else
    {
      clause_roots.push_back( n );
    }
  }
  for ( auto root : clause_roots )
  {
    Clause clause;
    bool satisfied = false;
    std::vector<NodeRef> st{ root };
    while ( !st.empty() )
    {
      auto n = st.back();
      st.pop_back();
      const auto& node = g.node( n );
      if ( node.gate == Gate::conj )
      {
        throw StructuralError( "not a CNF circuit: AND below OR" );
      }
      if ( node.gate == Gate::disj )
      {
        st.push_back( node.rhs );
        st.push_back( node.lhs );
        continue;
      }
      const auto& l = g.label( node.leaf );
      if ( l.is_constant() )
      {
        satisfied = satisfied || l.constant_value();
        continue;
      }
      clause.push_back( l.literal() );
    }
    if ( !satisfied )
    {
      out.push_back( std::move( clause ) );
    }
  }
  return out;
}

CnfCircuit cnf_circuit( const Cnf& cnf )
{
  CircuitBuilder b;
  std::vector<std::vector<NodeRef>> nodes( cnf.size() );
  std::vector<NodeRef> clause_nodes;
  for ( std::size_t c = 0; c < cnf.size(); ++c )
  {
    for ( auto lit : cnf[c] )
    {
      nodes[c].push_back( b.literal( lit ) );
    }
    clause_nodes.push_back( cnf[c].empty() ? b.constant( false ) : b.disjunction( nodes[c] ) );
  }
  auto root = clause_nodes.empty() ? b.constant( true ) : b.conjunction( clause_nodes );
  std::vector<LeafId> leaf_of_node;
  CnfCircuit out{ b.build( root, &leaf_of_node ), {} };
  out.leaf.resize( cnf.size() );
  for ( std::size_t c = 0; c < cnf.size(); ++c )
  {
    for ( auto n : nodes[c] )
    {
      out.leaf[c].push_back( leaf_of_node[n] );
    }
  }
  return out;
}

Literal choose_literal( const Circuit& g, std::span<const VarId> outputs )
{
  std::set<VarId> outs( outputs.begin(), outputs.end() );
  std::map<std::pair<VarId, bool>, std::size_t> count;
  for ( const auto& l : g.labels() )
  {
    if ( l.is_literal() && outs.count( l.literal().var ) )
    {
      ++count[{ l.literal().var, l.literal().negated }];
    }
  }
  if ( count.empty() )
  {
    throw PreconditionError( "choose_literal: no output literal labels a leaf" );
  }
  // map order is (var, positive first), so the first maximum wins ties
  auto best = count.begin();
  for ( auto it = count.begin(); it != count.end(); ++it )
  {
    if ( it->second > best->second )
    {
      best = it;
    }
  }
  return Literal{ best->first.first, best->first.second };
}

namespace
{

bool contains( const Clause& c, Literal lit )
{
  return std::find( c.begin(), c.end(), lit ) != c.end();
}

/// The chosen clauses with lit=⊥ are jointly satisfiable.
bool feasible( const Cnf& cnf, const std::vector<std::size_t>& chosen, Literal lit, const SatOracle& oracle )
{
  CnfFormula f;
  for ( auto c : chosen )
  {
    std::vector<int> clause;
    for ( auto l : cnf[c] )
    {
      clause.push_back( l.to_int() );
    }
    f.add_clause( std::move( clause ) );
  }
  if ( f.num_vars < static_cast<int>( lit.var ) )
  {
    f.num_vars = static_cast<int>( lit.var );
  }
  int assumption[] = { ( ~lit ).to_int() };
  return oracle.solve( f, assumption ).is_sat();
}

bool hits_all( const std::vector<std::vector<std::size_t>>& all_s, const std::vector<std::size_t>& chosen )
{
  for ( const auto& s : all_s )
  {
    bool hit = std::any_of( s.begin(), s.end(), [&]( auto c ) {
      return std::find( chosen.begin(), chosen.end(), c ) != chosen.end();
    } );
    if ( !hit )
    {
      return false;
    }
  }
  return true;
}

std::optional<std::vector<std::size_t>> greedy_hitting_set( const std::vector<std::vector<std::size_t>>& all_s,
                                                            const Cnf& cnf, Literal lit, const SatOracle& oracle )
{
  std::vector<std::size_t> chosen;
  std::vector<bool> hit( all_s.size() );
  std::set<std::size_t> rejected;
  while ( true )
  {
    std::map<std::size_t, std::size_t> freq;
    for ( std::size_t k = 0; k < all_s.size(); ++k )
    {
      if ( !hit[k] )
      {
        for ( auto c : all_s[k] )
        {
          if ( !rejected.count( c ) )
          {
            ++freq[c];
          }
        }
      }
    }
    if ( std::all_of( hit.begin(), hit.end(), []( bool h ) { return h; } ) )
    {
      return chosen;
    }
    if ( freq.empty() )
    {
      return std::nullopt;
    }
    // most frequent, lowest clause id on ties
    auto best = freq.begin();
    for ( auto it = freq.begin(); it != freq.end(); ++it )
    {
      if ( it->second > best->second )
      {
        best = it;
      }
    }
    auto trial = chosen;
    trial.push_back( best->first );
    if ( !feasible( cnf, trial, lit, oracle ) )
    {
      rejected.insert( best->first );
      continue;
    }
    chosen = std::move( trial );
    for ( std::size_t k = 0; k < all_s.size(); ++k )
    {
      hit[k] = hit[k] || std::find( all_s[k].begin(), all_s[k].end(), best->first ) != all_s[k].end();
    }
  }
}

std::optional<std::vector<std::size_t>> exact_hitting_set( const std::vector<std::vector<std::size_t>>& all_s,
                                                           const Cnf& cnf, Literal lit, std::size_t cap,
                                                           const SatOracle& oracle )
{
  std::set<std::size_t> universe;
  for ( const auto& s : all_s )
  {
    universe.insert( s.begin(), s.end() );
  }
  std::vector<std::size_t> cand( universe.begin(), universe.end() );
  std::size_t tried = 0;
  for ( std::size_t k = 1; k <= cand.size(); ++k )
  {
    // lexicographic k-combinations of cand
    std::vector<std::size_t> idx( k );
    for ( std::size_t i = 0; i < k; ++i )
    {
      idx[i] = i;
    }
    while ( true )
    {
      if ( ++tried > cap )
      {
        return std::nullopt;
      }
      std::vector<std::size_t> chosen;
      for ( auto i : idx )
      {
        chosen.push_back( cand[i] );
      }
      if ( hits_all( all_s, chosen ) && feasible( cnf, chosen, lit, oracle ) )
      {
        return chosen;
      }
      std::size_t i = k;
      while ( i > 0 && idx[i - 1] == cand.size() - k + i - 1 )
      {
        --i;
      }
      if ( i == 0 )
      {
        break;
      }
      ++idx[i - 1];
      for ( auto j = i; j < k; ++j )
      {
        idx[j] = idx[j - 1] + 1;
      }
    }
  }
  return std::nullopt;
}

} // namespace

std::optional<std::vector<std::size_t>> satisfiable_hitting_set( const std::vector<std::vector<std::size_t>>& all_s,
                                                                 const Cnf& cnf, Literal lit,
                                                                 const CompileOptions& options,
                                                                 const SatOracle& oracle )
{
  if ( all_s.empty() )
  {
    return std::vector<std::size_t>{};
  }
  std::optional<std::vector<std::size_t>> found;
  if ( options.hitting_set == HittingSetMode::greedy )
  {
    found = greedy_hitting_set( all_s, cnf, lit, oracle );
  }
  // greedy can get stuck on an infeasible pick order; the exact search settles it
  if ( !found )
  {
    found = exact_hitting_set( all_s, cnf, lit, options.exact_cap, oracle );
  }
  if ( !found )
  {
    return std::nullopt;
  }
  // drop elements that are not needed for hitting
  auto chosen = *found;
  for ( std::size_t k = chosen.size(); k-- > 0; )
  {
    auto trial = chosen;
    trial.erase( trial.begin() + static_cast<std::ptrdiff_t>( k ) );
    if ( hits_all( all_s, trial ) )
    {
      chosen = std::move( trial );
    }
  }
  std::sort( chosen.begin(), chosen.end() );
  return chosen;
}

SubsetResult get_subset( const Cnf& cnf, Literal lit, const CompileOptions& options, const SatOracle& oracle )
{
  auto view = cnf_circuit( cnf );
  SubsetResult out;
  std::vector<std::size_t> with_lit;
  for ( std::size_t c = 0; c < cnf.size(); ++c )
  {
    if ( contains( cnf[c], lit ) )
    {
      with_lit.push_back( c );
    }
  }
  if ( with_lit.empty() )
  {
    return out;
  }

  auto start = std::chrono::steady_clock::now();
  auto expired = [&] {
    if ( out.iterations >= options.subset_max_iterations )
    {
      return true;
    }
    if ( options.subset_timeout_ms == 0 )
    {
      return false;
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>( std::chrono::steady_clock::now() - start ).count();
    return static_cast<std::uint64_t>( ms ) >= options.subset_timeout_ms;
  };

  Cnf d = cnf;
  std::vector<std::vector<std::size_t>> all_s;
  while ( true )
  {
    auto r = check_literal_realizable( cnf_circuit( d ).circuit, lit, oracle );
    if ( !r )
    {
      break;
    }
    if ( expired() )
    {
      out.timed_out = true;
      return { {}, true, out.iterations };
    }
    ++out.iterations;
    std::vector<std::size_t> curr;
    Clause blocking;
    for ( auto c : with_lit )
    {
      bool top = contains( cnf[c], ~lit );
      for ( auto l : cnf[c] )
      {
        if ( l.var != lit.var && r.sigma.contains( l.var ) && r.sigma.value_of( l ) )
        {
          top = true;
        }
      }
      if ( top )
      {
        continue;
      }
      curr.push_back( c );
      for ( auto l : cnf[c] )
      {
        if ( l != lit )
        {
          blocking.push_back( l );
        }
      }
    }
    if ( curr.empty() )
    {
      throw std::logic_error( "get_subset: realizable without a live clause" );
    }
    all_s.push_back( curr );
    d.push_back( std::move( blocking ) );
  }

  auto hit = satisfiable_hitting_set( all_s, cnf, lit, options, oracle );
  if ( !hit )
  {
    return out;
  }
  for ( auto c : with_lit )
  {
    if ( std::binary_search( hit->begin(), hit->end(), c ) )
    {
      continue;
    }
    for ( std::size_t k = 0; k < cnf[c].size(); ++k )
    {
      if ( cnf[c][k] == lit )
      {
        out.set.push_back( view.leaf[c][k] );
      }
    }
  }
  out.set = make_leaf_set( std::move( out.set ) );
  return out;
}

namespace
{

struct Partial
{
  Circuit f;
  LeafSequence seq;
};

Cnf cofactor_cnf( const Cnf& cnf, Literal lit )
{
  // lit = ⊤
  Cnf out;
  for ( const auto& c : cnf )
  {
    if ( contains( c, lit ) )
    {
      continue;
    }
    Clause kept;
    for ( auto l : c )
    {
      if ( l != ~lit )
      {
        kept.push_back( l );
      }
    }
    out.push_back( std::move( kept ) );
  }
  return out;
}

class Compiler
{
public:
  Compiler( const Spec& spec, const CompileOptions& options, const SatOracle& oracle )
      : outputs_( spec.outputs ), options_( options ), oracle_( oracle ), stats_( std::make_shared<CompileStats>() )
  {
    if ( options.timeout_ms )
    {
      deadline_ = std::chrono::steady_clock::now() + std::chrono::milliseconds( options.timeout_ms );
    }
  }

  std::shared_ptr<CompileStats> stats() const { return stats_; }

  Partial run( const Cnf& g, std::size_t depth )
  {
    ++stats_->calls;
    auto prev = stats_->max_depth.load();
    while ( depth > prev && !stats_->max_depth.compare_exchange_weak( prev, depth ) )
    {
    }
    if ( deadline_ && std::chrono::steady_clock::now() > *deadline_ )
    {
      throw ResourceError( "compilation timed out (" + stats_->summary() + ")" );
    }

    auto view = cnf_circuit( g );
    if ( check_independent( view.circuit, outputs_, oracle_ ) )
    {
      return { view.circuit, {} };
    }

    auto lit = choose_literal( view.circuit, outputs_ );
    ++stats_->subset_calls;
    auto sub = get_subset( g, lit, options_, oracle_ );
    if ( options_.on_subset )
    {
      options_.on_subset( g, lit, sub );
    }
    stats_->subset_iterations += sub.iterations;
    if ( sub.timed_out )
    {
      ++stats_->subset_timeouts;
    }
    auto u = sub.set;
    if ( !u.empty() && check_subset_realizable( view.circuit, u, oracle_ ) )
    {
      // never expected (the subset is unrealizable by construction)
      u.clear();
    }
    if ( u.empty() )
    {
      ++stats_->empty_subsets;
    }

    // split clauses: G' holds the clauses fed by U, D the rest
    std::set<LeafId> in_u( u.begin(), u.end() );
    Cnf g_prime, d;
    std::vector<std::vector<bool>> u_pos;
    for ( std::size_t c = 0; c < g.size(); ++c )
    {
      std::vector<bool> mark( g[c].size() );
      bool fed = false;
      for ( std::size_t k = 0; k < g[c].size(); ++k )
      {
        mark[k] = in_u.count( view.leaf[c][k] ) != 0;
        fed = fed || mark[k];
      }
      if ( fed )
      {
        g_prime.push_back( g[c] );
        u_pos.push_back( std::move( mark ) );
      }
      else
      {
        d.push_back( g[c] );
      }
    }

    auto d_view = cnf_circuit( d );
    VarId v[] = { lit.var };
    if ( check_independent( d_view.circuit, v, oracle_ ) )
    {
      // with U empty, D = G: recurse on the ℓ-free cofactor so the call makes progress
      auto rest = run( u.empty() ? cofactor_cnf( d, lit ) : d, depth + 1 );
      return combine_flat( g_prime, u_pos, rest );
    }

    ++stats_->shannon_splits;
    auto pos = cofactor_cnf( d, lit );
    auto neg = cofactor_cnf( d, ~lit );
    Partial p1, p2;
    if ( options_.parallel )
    {
      auto f1 = std::async( std::launch::async, [&] { return run( pos, depth + 1 ); } );
      p2 = run( neg, depth + 1 );
      p1 = f1.get();
    }
    else
    {
      p1 = run( pos, depth + 1 );
      p2 = run( neg, depth + 1 );
    }
    return combine_split( g_prime, u_pos, lit, p1, p2 );
  }

private:
  // G' leaves in clause order; returns the builder node of G' (or nullopt) and U's nodes
  std::optional<NodeRef> add_clauses( CircuitBuilder& b, const Cnf& g_prime, const std::vector<std::vector<bool>>& u_pos,
                                      std::vector<NodeRef>& u_nodes )
  {
    if ( g_prime.empty() )
    {
      return std::nullopt;
    }
    std::vector<NodeRef> clauses;
    for ( std::size_t c = 0; c < g_prime.size(); ++c )
    {
      std::vector<NodeRef> lits;
      for ( std::size_t k = 0; k < g_prime[c].size(); ++k )
      {
        lits.push_back( b.literal( g_prime[c][k] ) );
        if ( u_pos[c][k] )
        {
          u_nodes.push_back( lits.back() );
        }
      }
      clauses.push_back( b.disjunction( lits ) );
    }
    return b.conjunction( clauses );
  }

  static void append_mapped( LeafSequence& seq, const LeafSequence& part, const std::vector<NodeRef>& leaf_nodes,
                             const std::vector<LeafId>& leaf_of_node )
  {
    for ( const auto& s : part )
    {
      LeafSet mapped;
      for ( auto leaf : s )
      {
        mapped.push_back( leaf_of_node[leaf_nodes[index( leaf )]] );
      }
      seq.push_back( make_leaf_set( std::move( mapped ) ) );
    }
  }

  static LeafSet mapped_set( const std::vector<NodeRef>& nodes, const std::vector<LeafId>& leaf_of_node )
  {
    LeafSet out;
    for ( auto n : nodes )
    {
      out.push_back( leaf_of_node[n] );
    }
    return make_leaf_set( std::move( out ) );
  }

  Partial combine_flat( const Cnf& g_prime, const std::vector<std::vector<bool>>& u_pos, const Partial& rest )
  {
    CircuitBuilder b;
    std::vector<NodeRef> u_nodes;
    auto gp = add_clauses( b, g_prime, u_pos, u_nodes );
    std::vector<NodeRef> rest_leaves;
    auto r = b.import( rest.f, &rest_leaves );
    auto root = gp ? b.make_and( *gp, r ) : r;
    std::vector<LeafId> leaf_of_node;
    Partial out{ b.build( root, &leaf_of_node ), {} };
    if ( !u_nodes.empty() )
    {
      out.seq.push_back( mapped_set( u_nodes, leaf_of_node ) );
    }
    append_mapped( out.seq, rest.seq, rest_leaves, leaf_of_node );
    return out;
  }

  Partial combine_split( const Cnf& g_prime, const std::vector<std::vector<bool>>& u_pos, Literal lit, const Partial& p1,
                         const Partial& p2 )
  {
    CircuitBuilder b;
    std::vector<NodeRef> u_nodes;
    auto gp = add_clauses( b, g_prime, u_pos, u_nodes );
    auto l_pos = b.literal( lit );
    std::vector<NodeRef> leaves1, leaves2;
    auto r1 = b.import( p1.f, &leaves1 );
    auto a1 = b.make_and( l_pos, r1 );
    auto l_neg = b.literal( ~lit );
    auto r2 = b.import( p2.f, &leaves2 );
    auto a2 = b.make_and( l_neg, r2 );
    auto split = b.make_or( a1, a2 );
    auto root = gp ? b.make_and( *gp, split ) : split;

    std::vector<LeafId> leaf_of_node;
    Partial out{ b.build( root, &leaf_of_node ), {} };
    out.seq.push_back( { leaf_of_node[l_pos] } );
    if ( !u_nodes.empty() )
    {
      out.seq.push_back( mapped_set( u_nodes, leaf_of_node ) );
    }
    out.seq.push_back( { leaf_of_node[l_neg] } );
    append_mapped( out.seq, p1.seq, leaves1, leaf_of_node );
    append_mapped( out.seq, p2.seq, leaves2, leaf_of_node );
    return out;
  }

  std::vector<VarId> outputs_;
  const CompileOptions& options_;
  const SatOracle& oracle_;
  std::shared_ptr<CompileStats> stats_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
};

} // namespace

CompileResult get_saunf( const Spec& cnf_spec, const CompileOptions& options, const SatOracle& oracle )
{
  auto cnf = cnf_clauses( cnf_spec.circuit );
  // A clause with both v and ¬v is ⊤. Kept, it could put a ¬ℓ leaf into G'
  // and make U_ℓ realizable after a split.
  std::erase_if( cnf, []( const Clause& c ) {
    return std::any_of( c.begin(), c.end(), [&]( Literal l ) { return std::find( c.begin(), c.end(), ~l ) != c.end(); } );
  } );
  Compiler compiler( cnf_spec, options, oracle );
  auto p = compiler.run( cnf, 0 );
  CompileResult out{ cnf_spec.with_circuit( std::move( p.f ) ), std::move( p.seq ), compiler.stats() };
  if ( options.certify )
  {
    if ( !check_equivalent( out.spec.circuit, cnf_spec.circuit, oracle ) )
    {
      throw std::logic_error( "get_saunf: result is not equivalent to the input" );
    }
    auto v = check_saunf( out.spec, out.seq, oracle );
    if ( !v.accepted() )
    {
      throw std::logic_error( "get_saunf: result fails membership: " + v.describe() );
    }
  }
  return out;
}

} // namespace saunf
