#include "saunf/sat.hpp"

#include "saunf/error.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

namespace saunf
{

void CnfFormula::add_clause( std::vector<int> clause )
{
  for ( auto l : clause )
  {
    num_vars = std::max( num_vars, std::abs( l ) );
  }
  clauses.push_back( std::move( clause ) );
}

void CnfFormula::check() const
{
  for ( const auto& c : clauses )
  {
    for ( auto l : c )
    {
      if ( l == 0 || std::abs( l ) > num_vars )
      {
        throw PreconditionError( "clause literal " + std::to_string( l ) + " out of range" );
      }
    }
  }
}

void write_dimacs( std::ostream& out, const CnfFormula& f )
{
  out << "p cnf " << f.num_vars << " " << f.clauses.size() << "\n";
  for ( const auto& c : f.clauses )
  {
    for ( auto l : c )
    {
      out << l << " ";
    }
    out << "0\n";
  }
}

bool satisfies( const CnfFormula& f, const std::vector<bool>& model )
{
  for ( const auto& c : f.clauses )
  {
    bool sat = false;
    for ( auto l : c )
    {
      auto v = static_cast<std::size_t>( std::abs( l ) );
      if ( v < model.size() && model[v] == ( l > 0 ) )
      {
        sat = true;
        break;
      }
    }
    if ( !sat )
    {
      return false;
    }
  }
  return true;
}

namespace
{

using Lit = std::uint32_t; // 2 * var + sign, var 0-based

constexpr std::uint32_t kNoReason = std::numeric_limits<std::uint32_t>::max();

Lit to_lit( int dimacs )
{
  return ( static_cast<Lit>( std::abs( dimacs ) - 1 ) << 1 ) | ( dimacs < 0 ? 1u : 0u );
}

class Cdcl
{
public:
  Cdcl( int num_vars, const InternalSolverOptions& options )
      : options_( options ), n_( static_cast<std::uint32_t>( num_vars ) ), assign_( n_, -1 ), level_( n_, 0 ),
        reason_( n_, kNoReason ), seen_( n_, 0 ), watches_( 2 * n_ )
  {
  }

  void add_clause( const std::vector<int>& dimacs )
  {
    if ( !ok_ )
    {
      return;
    }
    std::vector<Lit> c;
    c.reserve( dimacs.size() );
    for ( auto l : dimacs )
    {
      c.push_back( to_lit( l ) );
    }
    std::sort( c.begin(), c.end() );
    c.erase( std::unique( c.begin(), c.end() ), c.end() );
    for ( std::size_t i = 1; i < c.size(); ++i )
    {
      if ( ( c[i] ^ 1u ) == c[i - 1] )
      {
        return; // tautology
      }
    }
    // drop literals already false at level 0; skip if satisfied
    std::vector<Lit> kept;
    for ( auto l : c )
    {
      auto v = value( l );
      if ( v == 1 )
      {
        return;
      }
      if ( v == -1 )
      {
        kept.push_back( l );
      }
    }
    if ( kept.empty() )
    {
      ok_ = false;
      return;
    }
    if ( kept.size() == 1 )
    {
      enqueue( kept[0], kNoReason );
      ok_ = propagate() == kNoReason;
      return;
    }
    attach( std::move( kept ) );
  }

  bool solve()
  {
    if ( !ok_ || propagate() != kNoReason )
    {
      return false;
    }
    std::uint64_t conflicts = 0;
    for ( ;; )
    {
      auto confl = propagate();
      if ( confl != kNoReason )
      {
        ++conflicts;
        if ( trail_lim_.empty() )
        {
          return false;
        }
        check_budget( conflicts );
        std::vector<Lit> learnt;
        std::uint32_t bt = analyze( confl, learnt );
        backtrack( bt );
        if ( learnt.size() == 1 )
        {
          enqueue( learnt[0], kNoReason );
        }
        else
        {
          auto ci = attach( learnt );
          enqueue( learnt[0], ci );
        }
        continue;
      }
      while ( next_var_ < n_ && assign_[next_var_] >= 0 )
      {
        ++next_var_;
      }
      if ( next_var_ == n_ )
      {
        return true;
      }
      trail_lim_.push_back( static_cast<std::uint32_t>( trail_.size() ) );
      enqueue( next_var_ << 1, kNoReason );
    }
  }

  std::vector<bool> model() const
  {
    std::vector<bool> m( n_ + 1, false );
    for ( std::uint32_t v = 0; v < n_; ++v )
    {
      m[v + 1] = assign_[v] == 1;
    }
    return m;
  }

private:
  // 1 true, 0 false, -1 unassigned
  int value( Lit l ) const
  {
    auto a = assign_[l >> 1];
    return a < 0 ? -1 : ( a ^ static_cast<int>( l & 1u ) );
  }

  std::uint32_t decision_level() const { return static_cast<std::uint32_t>( trail_lim_.size() ); }

  void enqueue( Lit l, std::uint32_t reason )
  {
    auto v = l >> 1;
    assign_[v] = ( l & 1u ) ? 0 : 1;
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back( l );
  }

  std::uint32_t attach( std::vector<Lit> c )
  {
    auto ci = static_cast<std::uint32_t>( clauses_.size() );
    watches_[c[0]].push_back( ci );
    watches_[c[1]].push_back( ci );
    clauses_.push_back( std::move( c ) );
    return ci;
  }

  std::uint32_t propagate()
  {
    while ( qhead_ < trail_.size() )
    {
      Lit fl = trail_[qhead_++] ^ 1u; // literal that just became false
      auto& ws = watches_[fl];
      std::size_t i = 0, j = 0;
      while ( i < ws.size() )
      {
        auto ci = ws[i++];
        auto& c = clauses_[ci];
        if ( c[0] == fl )
        {
          std::swap( c[0], c[1] );
        }
        if ( value( c[0] ) == 1 )
        {
          ws[j++] = ci;
          continue;
        }
        bool moved = false;
        for ( std::size_t k = 2; k < c.size(); ++k )
        {
          if ( value( c[k] ) != 0 )
          {
            std::swap( c[1], c[k] );
            watches_[c[1]].push_back( ci );
            moved = true;
            break;
          }
        }
        if ( moved )
        {
          continue;
        }
        ws[j++] = ci;
        if ( value( c[0] ) == 0 )
        {
          while ( i < ws.size() )
          {
            ws[j++] = ws[i++];
          }
          ws.resize( j );
          qhead_ = trail_.size();
          return ci;
        }
        enqueue( c[0], ci );
      }
      ws.resize( j );
    }
    return kNoReason;
  }

  std::uint32_t analyze( std::uint32_t confl, std::vector<Lit>& learnt )
  {
    learnt.assign( 1, 0 );
    int pending = 0;
    bool first = true;
    Lit p = 0;
    auto idx = trail_.size();
    do
    {
      const auto& c = clauses_[confl];
      for ( std::size_t k = first ? 0 : 1; k < c.size(); ++k )
      {
        auto v = c[k] >> 1;
        if ( !seen_[v] && level_[v] > 0 )
        {
          seen_[v] = 1;
          if ( level_[v] >= decision_level() )
          {
            ++pending;
          }
          else
          {
            learnt.push_back( c[k] );
          }
        }
      }
      first = false;
      do
      {
        --idx;
      } while ( !seen_[trail_[idx] >> 1] );
      p = trail_[idx];
      confl = reason_[p >> 1];
      seen_[p >> 1] = 0;
      --pending;
    } while ( pending > 0 );
    learnt[0] = p ^ 1u;

    std::uint32_t bt = 0;
    for ( std::size_t k = 1; k < learnt.size(); ++k )
    {
      seen_[learnt[k] >> 1] = 0;
      if ( level_[learnt[k] >> 1] > bt )
      {
        bt = level_[learnt[k] >> 1];
        std::swap( learnt[1], learnt[k] );
      }
    }
    return bt;
  }

  void backtrack( std::uint32_t level )
  {
    if ( decision_level() <= level )
    {
      return;
    }
    for ( auto k = trail_.size(); k-- > trail_lim_[level]; )
    {
      auto v = trail_[k] >> 1;
      assign_[v] = -1;
      reason_[v] = kNoReason;
      next_var_ = std::min( next_var_, v );
    }
    trail_.resize( trail_lim_[level] );
    trail_lim_.resize( level );
    qhead_ = trail_.size();
  }

  void check_budget( std::uint64_t conflicts ) const
  {
    if ( options_.max_conflicts && conflicts > options_.max_conflicts )
    {
      throw ResourceError( "SAT conflict budget exhausted" );
    }
    if ( options_.deadline && ( conflicts & 255u ) == 0 && std::chrono::steady_clock::now() > *options_.deadline )
    {
      throw ResourceError( "SAT deadline exceeded" );
    }
  }

  InternalSolverOptions options_;
  std::uint32_t n_;
  bool ok_ = true;
  std::vector<std::int8_t> assign_;
  std::vector<std::uint32_t> level_;
  std::vector<std::uint32_t> reason_;
  std::vector<char> seen_;
  std::vector<std::vector<std::uint32_t>> watches_;
  std::vector<std::vector<Lit>> clauses_;
  std::vector<Lit> trail_;
  std::vector<std::uint32_t> trail_lim_;
  std::size_t qhead_ = 0;
  std::uint32_t next_var_ = 0;
};

} // namespace

SatResult InternalSolver::solve( const CnfFormula& f, std::span<const int> assumptions ) const
{
  count_query();
  f.check();
  auto options = options_;
  if ( options.timeout_ms > 0 )
  {
    auto local = std::chrono::steady_clock::now() + std::chrono::milliseconds( options.timeout_ms );
    options.deadline = options.deadline ? std::min( *options.deadline, local ) : local;
  }
  Cdcl solver( f.num_vars, options );
  for ( const auto& c : f.clauses )
  {
    solver.add_clause( c );
  }
  for ( auto a : assumptions )
  {
    if ( a == 0 || std::abs( a ) > f.num_vars )
    {
      throw PreconditionError( "assumption literal out of range" );
    }
    solver.add_clause( { a } );
  }
  SatResult result;
  if ( !solver.solve() )
  {
    return result;
  }
  result.verdict = Verdict::sat;
  result.model = solver.model();
  if ( !satisfies( f, result.model ) )
  {
    throw std::logic_error( "internal solver produced a model violating the formula" );
  }
  return result;
}

SatResult parse_solver_output( const std::string& text, int num_vars )
{
  std::istringstream in( text );
  std::string line;
  std::optional<Verdict> verdict;
  SatResult result;
  result.model.assign( static_cast<std::size_t>( num_vars ) + 1, false );
  while ( std::getline( in, line ) )
  {
    if ( line.rfind( "s ", 0 ) == 0 )
    {
      auto status = line.substr( 2 );
      status.erase( status.find_last_not_of( " \r\t" ) + 1 );
      if ( status == "SATISFIABLE" )
      {
        verdict = Verdict::sat;
      }
      else if ( status == "UNSATISFIABLE" )
      {
        verdict = Verdict::unsat;
      }
      else
      {
        throw ResourceError( "external solver status: " + status );
      }
    }
    else if ( line.rfind( "v ", 0 ) == 0 || line == "v" )
    {
      std::istringstream vs( line.substr( 1 ) );
      int lit = 0;
      while ( vs >> lit )
      {
        if ( lit != 0 && std::abs( lit ) <= num_vars )
        {
          result.model[static_cast<std::size_t>( std::abs( lit ) )] = lit > 0;
        }
      }
    }
  }
  if ( !verdict )
  {
    throw ResourceError( "external solver produced no status line" );
  }
  result.verdict = *verdict;
  if ( result.verdict == Verdict::unsat )
  {
    result.model.clear();
  }
  return result;
}

namespace
{

std::string run_command( const std::string& command, int timeout_ms )
{
  int fds[2];
  if ( pipe( fds ) != 0 )
  {
    throw ResourceError( std::string( "pipe: " ) + std::strerror( errno ) );
  }
  pid_t pid = fork();
  if ( pid < 0 )
  {
    close( fds[0] );
    close( fds[1] );
    throw ResourceError( std::string( "fork: " ) + std::strerror( errno ) );
  }
  if ( pid == 0 )
  {
    setpgid( 0, 0 );
    dup2( fds[1], STDOUT_FILENO );
    close( fds[0] );
    close( fds[1] );
    execl( "/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>( nullptr ) );
    _exit( 127 );
  }
  close( fds[1] );

  std::string output;
  auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds( timeout_ms );
  char buf[4096];
  bool timed_out = false;
  for ( ;; )
  {
    int wait_ms = -1;
    if ( timeout_ms > 0 )
    {
      auto left = std::chrono::duration_cast<std::chrono::milliseconds>( deadline - std::chrono::steady_clock::now() ).count();
      if ( left <= 0 )
      {
        timed_out = true;
        break;
      }
      wait_ms = static_cast<int>( left );
    }
    pollfd p{ fds[0], POLLIN, 0 };
    int r = poll( &p, 1, wait_ms );
    if ( r < 0 && errno == EINTR )
    {
      continue;
    }
    if ( r == 0 )
    {
      continue; // deadline is re-checked above
    }
    auto n = read( fds[0], buf, sizeof buf );
    if ( n <= 0 )
    {
      break;
    }
    output.append( buf, static_cast<std::size_t>( n ) );
  }
  close( fds[0] );
  if ( timed_out )
  {
    kill( -pid, SIGKILL );
    kill( pid, SIGKILL );
  }
  int status = 0;
  waitpid( pid, &status, 0 );
  if ( timed_out )
  {
    throw ResourceError( "external solver timed out after " + std::to_string( timeout_ms ) + " ms" );
  }
  if ( WIFSIGNALED( status ) )
  {
    throw ResourceError( "external solver killed by signal " + std::to_string( WTERMSIG( status ) ) );
  }
  return output;
}

} // namespace

SatResult ExternalSolver::solve( const CnfFormula& f, std::span<const int> assumptions ) const
{
  count_query();
  f.check();
  CnfFormula g = f;
  for ( auto a : assumptions )
  {
    g.clauses.push_back( { a } );
  }

  char path[] = "/tmp/saunf-XXXXXX.cnf";
  int fd = mkstemps( path, 4 );
  if ( fd < 0 )
  {
    throw ResourceError( std::string( "cannot create temporary CNF file: " ) + std::strerror( errno ) );
  }
  close( fd );
  {
    std::ofstream out( path );
    write_dimacs( out, g );
  }

  std::string cmd = command_;
  if ( auto pos = cmd.find( "{}" ); pos != std::string::npos )
  {
    cmd.replace( pos, 2, path );
  }
  else
  {
    cmd += " ";
    cmd += path;
  }

  std::string output;
  try
  {
    output = run_command( cmd, timeout_ms_ );
  }
  catch ( ... )
  {
    std::remove( path );
    throw;
  }
  std::remove( path );

  auto result = parse_solver_output( output, g.num_vars );
  if ( result.is_sat() && !satisfies( g, result.model ) )
  {
    throw ResourceError( "external solver returned a model that violates the formula" );
  }
  return result;
}

OracleConfig default_oracle_config()
{
  OracleConfig config;
  if ( const char* env = std::getenv( kSolverEnv ); env && *env )
  {
    config.solver = std::string( "exec:" ) + env;
  }
  return config;
}

std::unique_ptr<SatOracle> make_oracle( const OracleConfig& config )
{
  if ( config.solver == "internal" )
  {
    InternalSolverOptions options;
    options.timeout_ms = config.timeout_ms;
    return std::make_unique<InternalSolver>( options );
  }
  if ( config.solver.rfind( "exec:", 0 ) == 0 && config.solver.size() > 5 )
  {
    return std::make_unique<ExternalSolver>( config.solver.substr( 5 ), config.timeout_ms );
  }
  throw PreconditionError( "unknown solver '" + config.solver + "' (expected internal or exec:<cmd>)" );
}

const SatOracle& default_oracle()
{
  static const InternalSolver solver;
  return solver;
}

} // namespace saunf
