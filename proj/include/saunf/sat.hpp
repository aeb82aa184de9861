#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace saunf
{

/// CNF over variables 1..num_vars; literals are DIMACS integers.
struct CnfFormula
{
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  int new_var() { return ++num_vars; }
  void add_clause( std::vector<int> clause );
  void add_clause( std::initializer_list<int> clause ) { add_clause( std::vector<int>( clause ) ); }
  /// Throws PreconditionError on literal 0 or |lit| > num_vars.
  void check() const;
};

void write_dimacs( std::ostream& out, const CnfFormula& f );

enum class Verdict : std::uint8_t
{
  sat,
  unsat
};

struct SatResult
{
  Verdict verdict = Verdict::unsat;
  /// model[v] for v in 1..num_vars when SAT; model[0] unused.
  std::vector<bool> model;

  bool is_sat() const { return verdict == Verdict::sat; }
  bool value( int var ) const { return model.at( static_cast<std::size_t>( var ) ); }
};

/// True iff `model` satisfies every clause of `f`.
bool satisfies( const CnfFormula& f, const std::vector<bool>& model );

/// Complete satisfiability oracle. solve() is const and reentrant: every call
/// uses its own solver state, so one oracle may serve several threads.
class SatOracle
{
public:
  virtual ~SatOracle() = default;
  /// Assumptions are asserted as unit clauses. Throws ResourceError when the
  /// oracle gives up; never reports UNSAT in that case.
  virtual SatResult solve( const CnfFormula& f, std::span<const int> assumptions = {} ) const = 0;
  virtual std::string name() const = 0;

  std::uint64_t queries() const { return queries_.load(); }

protected:
  void count_query() const { queries_.fetch_add( 1, std::memory_order_relaxed ); }

private:
  mutable std::atomic<std::uint64_t> queries_{ 0 };
};

struct InternalSolverOptions
{
  /// 0 disables the limit.
  std::uint64_t max_conflicts = 0;
  /// Per-query wall-clock limit; 0 disables it.
  int timeout_ms = 0;
  /// Absolute limit shared by every query.
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// CDCL: two watched literals, first-UIP learning, non-chronological
/// backtracking. Branches on the lowest unassigned variable, true first.
class InternalSolver final : public SatOracle
{
public:
  explicit InternalSolver( InternalSolverOptions options = {} ) : options_( options ) {}
  SatResult solve( const CnfFormula& f, std::span<const int> assumptions = {} ) const override;
  std::string name() const override { return "internal"; }

private:
  InternalSolverOptions options_;
};

/// Runs an external DIMACS solver. "{}" in the command is replaced by the CNF
/// file path; without it the path is appended.
class ExternalSolver final : public SatOracle
{
public:
  ExternalSolver( std::string command, int timeout_ms ) : command_( std::move( command ) ), timeout_ms_( timeout_ms ) {}
  SatResult solve( const CnfFormula& f, std::span<const int> assumptions = {} ) const override;
  std::string name() const override { return "exec:" + command_; }

private:
  std::string command_;
  int timeout_ms_;
};

/// Parse solver output ("s ..." and "v ..." lines) into a result over num_vars.
SatResult parse_solver_output( const std::string& text, int num_vars );

struct OracleConfig
{
  /// "internal" or "exec:<command>".
  std::string solver = "internal";
  int timeout_ms = 0;
};

/// Environment variable naming the default external solver command.
inline constexpr const char* kSolverEnv = "SAUNF_SOLVER";

/// Config from SAUNF_SOLVER when set, else the internal solver.
OracleConfig default_oracle_config();
std::unique_ptr<SatOracle> make_oracle( const OracleConfig& config );

/// Process-wide internal solver used when callers pass no oracle.
const SatOracle& default_oracle();

} // namespace saunf
