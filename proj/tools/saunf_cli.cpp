#include <saunf/algebra.hpp>
#include <saunf/arithmetic.hpp>
#include <saunf/compiler.hpp>
#include <saunf/error.hpp>
#include <saunf/formats.hpp>
#include <saunf/kernels.hpp>
#include <saunf/normal_forms.hpp>
#include <saunf/skolem.hpp>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace saunf;
using json = nlohmann::ordered_json;

namespace
{

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitParse = 4;

constexpr const char* kSchema = "saunf-cli";
constexpr int kSchemaVersion = 1;

struct Globals
{
  std::string solver;
  int solver_timeout_ms = 0;
  std::uint64_t seed = 0;
  std::string log_level = "warn";
  bool json = false;
};

/// Result of one subcommand: exit status plus text and JSON renderings.
struct Report
{
  int status = 0;
  std::string text;
  json data = json::object();
};

json envelope( const std::string& command, const Globals& g )
{
  json j;
  j["schema"] = kSchema;
  j["version"] = kSchemaVersion;
  j["command"] = command;
  j["solver"] = g.solver;
  j["seed"] = g.seed;
  return j;
}

std::string literal_name( const Spec& spec, Literal lit )
{
  return ( lit.negated ? "-" : "" ) + spec.var_name( lit.var );
}

json sigma_json( const Spec& spec, const Assignment& sigma )
{
  json j = json::object();
  for ( auto v : sigma.variables() )
    j[spec.var_name( v )] = *sigma.get( v );
  return j;
}

void write_file( const std::string& path, const std::function<void( std::ostream& )>& body )
{
  std::ofstream os( path );
  if ( !os )
  {
    throw Error( "cannot write " + path );
  }
  body( os );
  if ( !os )
  {
    throw Error( "write failed: " + path );
  }
}

/// Circuit plus the witness from `witness_path`, or the first seq line of the
/// circuit file when no witness file is given.
SaunfWitness load_witnessed( const std::string& circuit_path, const std::string& witness_path )
{
  auto doc = load_circuit( circuit_path );
  SaunfWitness w{ std::move( doc.spec ), {} };
  if ( !witness_path.empty() )
  {
    w.seq = load_witness( witness_path, w.spec.circuit );
  }
  else if ( !doc.sequences.empty() )
  {
    w.seq = doc.sequences.front();
  }
  else
  {
    throw PreconditionError( circuit_path + " has no seq line and no --witness was given" );
  }
  return w;
}

VarId resolve_var( const Spec& spec, const std::string& token )
{
  for ( const auto& info : spec.vars.all() )
  {
    if ( info.name == token || spec.var_name( info.id ) == token )
      return info.id;
  }
  try
  {
    std::size_t used = 0;
    auto id = std::stoul( token, &used );
    if ( used == token.size() && spec.vars.contains( static_cast<VarId>( id ) ) )
      return static_cast<VarId>( id );
  }
  catch ( const std::exception& )
  {
  }
  throw PreconditionError( "unknown variable '" + token + "'" );
}

double elapsed_ms( std::chrono::steady_clock::time_point start )
{
  return std::chrono::duration<double, std::milli>( std::chrono::steady_clock::now() - start ).count();
}

// ---- subcommands ----

Report run_check( const Globals& g, const SatOracle& oracle, const std::string& circuit, const std::string& witness )
{
  auto w = load_witnessed( circuit, witness );
  auto v = check_saunf( w.spec, w.seq, oracle );
  Report r;
  r.status = v.accepted() ? 0 : kExitFail;
  r.data = envelope( "check", g );
  r.data["verdict"] = v.passed() ? "pass" : v.accepted() ? "independent" : "fail";
  r.data["sets"] = w.seq.size();
  std::ostringstream os;
  os << v.describe() << "\n";
  if ( !v.accepted() )
  {
    r.data["condition"] = v.condition;
    if ( v.condition >= 1 && v.condition <= 4 )
      r.data["set"] = v.set_index + 1;
    if ( v.sigma.size() > 0 )
    {
      r.data["sigma"] = sigma_json( w.spec, v.sigma );
      os << "sigma: " << to_string( v.sigma, [&]( VarId x ) { return w.spec.var_name( x ); } ) << "\n";
    }
    if ( v.dependent != 0 )
    {
      r.data["dependent"] = w.spec.var_name( v.dependent );
      os << "depends on: " << w.spec.var_name( v.dependent ) << "\n";
    }
  }
  r.text = os.str();
  return r;
}

Report run_synnnf( const Globals& g, const SatOracle& oracle, const std::string& circuit,
                   const std::vector<std::string>& order_names )
{
  auto doc = load_circuit( circuit );
  std::vector<VarId> order;
  for ( const auto& name : order_names )
    order.push_back( resolve_var( doc.spec, name ) );
  if ( order.empty() )
    order = doc.spec.outputs;
  bool ok = check_synnnf( doc.spec, order, oracle );
  Report r;
  r.status = ok ? 0 : kExitFail;
  r.data = envelope( "synnnf", g );
  json names = json::array();
  for ( auto v : order )
    names.push_back( doc.spec.var_name( v ) );
  r.data["order"] = names;
  r.data["synnnf"] = ok;
  r.text = ok ? "true\n" : "false\n";
  return r;
}

Report run_synthesize( const Globals& g, const SatOracle& oracle, const std::string& circuit,
                       const std::string& witness, const std::string& out, bool no_verify )
{
  auto w = load_witnessed( circuit, witness );
  Report r;
  r.data = envelope( "synthesize", g );
  r.data["verified"] = !no_verify;
  if ( !no_verify )
  {
    auto v = check_saunf( w.spec, w.seq, oracle );
    if ( !v.accepted() )
    {
      r.status = kExitFail;
      r.data["witness"] = v.describe();
      r.text = "witness rejected: " + v.describe() + "\n";
      return r;
    }
  }
  auto res = skgen( w.spec, w.seq, SkGenOptions{ .verify_witness = false }, oracle );
  if ( !no_verify && !verify_skolem( w.spec, res.psi, oracle ) )
  {
    r.status = kExitFail;
    r.data["skolem"] = "invalid";
    r.text = "synthesized vector failed verification\n";
    return r;
  }
  write_file( out, [&]( std::ostream& os ) { write_skolem( os, res.psi, &w.spec.vars ); } );
  r.data["skolem"] = "written";
  r.data["components"] = res.psi.vars.size();
  r.data["size"] = res.psi.size();
  r.data["levels"] = res.trace.levels.size();
  std::ostringstream os;
  os << "wrote " << out << ": " << res.psi.vars.size() << " functions, " << res.psi.size() << " nodes\n";
  r.text = os.str();
  return r;
}

Report run_compile( const Globals& g, const SatOracle& oracle, const std::string& in, const std::string& out,
                    const std::string& witness_out, const CompileOptions& options )
{
  auto spec = load_qdimacs( in );
  auto start = std::chrono::steady_clock::now();
  auto res = get_saunf( spec, options, oracle );
  spdlog::info( "compile: {} ({:.1f} ms)", res.stats->summary(), elapsed_ms( start ) );
  write_file( out, [&]( std::ostream& os ) { write_circuit( os, res.spec, { &res.seq, 1 } ); } );
  if ( !witness_out.empty() )
  {
    write_file( witness_out, [&]( std::ostream& os ) { write_witness( os, res.spec.circuit, res.seq ); } );
  }
  Report r;
  r.data = envelope( "compile", g );
  r.data["input_size"] = spec.circuit.size();
  r.data["size"] = res.spec.circuit.size();
  r.data["sets"] = res.seq.size();
  r.data["certified"] = options.certify;
  r.data["shannon_splits"] = res.stats->shannon_splits.load();
  r.data["subset_calls"] = res.stats->subset_calls.load();
  r.data["subset_timeouts"] = res.stats->subset_timeouts.load();
  std::ostringstream os;
  os << "wrote " << out << ": " << res.spec.circuit.size() << " nodes, " << res.seq.size() << " sets\n";
  r.text = os.str();
  return r;
}

Report run_verify( const Globals& g, const SatOracle& oracle, const std::string& circuit, const std::string& skolem,
                   bool exhaustive )
{
  auto doc = load_circuit( circuit );
  auto psi = load_skolem( skolem );
  bool ok = exhaustive ? verify_skolem_exhaustive( doc.spec, psi, Exec::parallel )
                       : verify_skolem( doc.spec, psi, oracle );
  Report r;
  r.status = ok ? 0 : kExitFail;
  r.data = envelope( "verify", g );
  r.data["mode"] = exhaustive ? "exhaustive" : "sat";
  r.data["valid"] = ok;
  r.text = ok ? "VALID\n" : "INVALID\n";
  return r;
}

Report run_project( const Globals& g, const std::string& circuit, const std::string& witness, const std::string& out )
{
  auto w = load_witnessed( circuit, witness );
  auto projected = existential_project( w );
  Spec s;
  s.circuit = projected;
  for ( auto v : w.spec.inputs )
  {
    s.vars.declare( v, VarKind::input, w.spec.vars.info( v ).name );
    s.inputs.push_back( v );
  }
  s.validate();
  write_file( out, [&]( std::ostream& os ) { write_circuit( os, s ); } );
  Report r;
  r.data = envelope( "project", g );
  r.data["size"] = projected.size();
  r.text = "wrote " + out + ": " + std::to_string( projected.size() ) + " nodes\n";
  return r;
}

Report write_witnessed( const std::string& command, const Globals& g, const SaunfWitness& w, const std::string& out )
{
  write_file( out, [&]( std::ostream& os ) { write_circuit( os, w.spec, { &w.seq, 1 } ); } );
  Report r;
  r.data = envelope( command, g );
  r.data["size"] = w.spec.circuit.size();
  r.data["sets"] = w.seq.size();
  r.text = "wrote " + out + ": " + std::to_string( w.spec.circuit.size() ) + " nodes, " +
           std::to_string( w.seq.size() ) + " sets\n";
  return r;
}

Report run_disjoin( const Globals& g, const std::string& a, const std::string& wa, const std::string& b,
                    const std::string& wb, const std::string& out )
{
  return write_witnessed( "disjoin", g, disjoin( load_witnessed( a, wa ), load_witnessed( b, wb ) ), out );
}

Report run_conjoin( const Globals& g, const SatOracle& oracle, const std::string& a, const std::string& wa,
                    const std::string& b, const std::string& wb, const std::string& out, bool recompile,
                    const CompileOptions& options )
{
  auto wa_ = load_witnessed( a, wa );
  auto wb_ = load_witnessed( b, wb );
  auto res = conjoin( wa_, wb_ );
  if ( auto* w = std::get_if<SaunfWitness>( &res ) )
  {
    auto r = write_witnessed( "conjoin", g, *w, out );
    r.data["route"] = "direct";
    return r;
  }
  auto clash = std::get<PolarityClash>( res );
  auto lit = literal_name( wa_.spec, clash.lit );
  if ( !recompile )
  {
    Report r;
    r.status = kExitFail;
    r.data = envelope( "conjoin", g );
    r.data["clash"] = lit;
    r.text = "clash on " + lit + " (rerun with --recompile to route through the compiler)\n";
    return r;
  }
  spdlog::warn( "conjoin: clash on {}, recompiling; this can take exponential time", lit );
  auto c = recompile_conjunction( wa_, wb_, options, oracle );
  auto r = write_witnessed( "conjoin", g, SaunfWitness{ c.spec, c.seq }, out );
  r.data["route"] = "recompile";
  r.data["clash"] = lit;
  return r;
}

// ---- bench ----

struct BenchRow
{
  std::uint32_t n = 0, l = 0, j = 0;
  std::size_t spec_size = 0;
  std::size_t skolem_size = 0;
  std::size_t saunf_size = 0;
  std::size_t sets = 0;
  std::string mode;
  bool verified = false;
  std::string membership;
  double ms = 0;
};

bool verify_with( const std::string& mode, const Spec& spec, const SkolemVector& psi, const SatOracle& oracle )
{
  return mode == "exhaustive" ? verify_skolem_exhaustive( spec, psi, Exec::parallel ) : verify_skolem( spec, psi, oracle );
}

void finish_row( BenchRow& row, const Spec& spec, const SkolemVector& psi, const SatOracle& oracle,
                 std::chrono::steady_clock::time_point start )
{
  row.spec_size = spec.circuit.size();
  row.skolem_size = psi.size();
  row.verified = verify_with( row.mode, spec, psi, oracle );
  if ( !row.verified )
  {
    // an invalid vector yields no witness; keep the row so sweeps finish
    row.membership = "n/a";
    row.ms = elapsed_ms( start );
    return;
  }
  auto h = saunf_from_skolem( spec, psi, oracle );
  row.saunf_size = h.spec.circuit.size();
  row.sets = h.seq.size();
  row.membership = check_saunf( h.spec, h.seq, oracle ).describe();
  row.ms = elapsed_ms( start );
}

Report bench_report( const std::string& kind, const Globals& g, const std::vector<BenchRow>& rows )
{
  Report r;
  r.data = envelope( "bench " + kind, g );
  r.data["rows"] = json::array();
  std::ostringstream os;
  os << "n  l  j  spec  skolem  saunf  sets  verify      ok  membership          ms\n";
  for ( const auto& row : rows )
  {
    json jr = { { "n", row.n } };
    if ( row.l != 0 )
    {
      jr["l"] = row.l;
      jr["j"] = row.j;
    }
    jr.update( json{ { "spec_size", row.spec_size },
                     { "skolem_size", row.skolem_size },
                     { "saunf_size", row.saunf_size },
                     { "sets", row.sets },
                     { "verify", row.mode },
                     { "verified", row.verified },
                     { "membership", row.membership },
                     { "wall_ms", row.ms } } );
    r.data["rows"].push_back( jr );
    auto slice = row.l != 0 ? fmt::format( "{:<2} {:<2}", row.l, row.j ) : std::string( "-  - " );
    os << fmt::format( "{:<2} {} {:>4}  {:>6}  {:>5}  {:>4}  {:<10}  {:<2}  {:<18} {:>8.1f}\n", row.n, slice,
                       row.spec_size, row.skolem_size, row.saunf_size, row.sets, row.mode, row.verified ? "y" : "n", row.membership, row.ms );
    if ( !row.verified || row.membership != "PASS" )
      r.status = kExitFail;
  }
  r.text = os.str();
  return r;
}

Report run_bench_factor( const Globals& g, const SatOracle& oracle, std::uint32_t n, std::uint32_t l, std::uint32_t j,
                         std::string mode )
{
  if ( mode.empty() )
    mode = n <= 3 ? "exhaustive" : "sat";
  // without --l/--j, every slice with j - l < n
  std::vector<std::pair<std::uint32_t, std::uint32_t>> slices;
  if ( l != 0 || j != 0 )
    slices.emplace_back( l, j );
  else
    for ( std::uint32_t a = 1; a <= 2 * n; ++a )
      for ( std::uint32_t b = a; b <= 2 * n && b - a < n; ++b )
        slices.emplace_back( a, b );

  std::vector<BenchRow> rows;
  for ( auto [a, b] : slices )
  {
    auto start = std::chrono::steady_clock::now();
    BenchRow row{ .n = n, .l = a, .j = b, .mode = mode };
    auto spec = build_rlj( n, a, b );
    finish_row( row, spec, skolem_for_rlj( n, a, b ), oracle, start );
    rows.push_back( row );
  }
  return bench_report( "factor", g, rows );
}

Report run_bench_divide( const Globals& g, const SatOracle& oracle, std::uint32_t n, std::string mode )
{
  if ( mode.empty() )
    mode = n <= 3 ? "exhaustive" : "sat";
  auto start = std::chrono::steady_clock::now();
  BenchRow row{ .n = n, .mode = mode };
  finish_row( row, build_odd_division( n ), odd_division_skolem( n ), oracle, start );
  return bench_report( "divide", g, { row } );
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "SAUNF circuits: membership, synthesis, compilation, composition" };
  app.require_subcommand( 1 );
  app.fallthrough();

  Globals g;
  g.solver = default_oracle_config().solver;
  app.add_option( "--solver", g.solver, "internal or exec:<cmd> (default from SAUNF_SOLVER)" );
  app.add_option( "--solver-timeout-ms", g.solver_timeout_ms, "per-call SAT timeout, 0 = none" );
  app.add_option( "--seed", g.seed, "recorded in JSON output" );
  app.add_option( "--log-level", g.log_level, "trace|debug|info|warn|error|off" )
      ->check( CLI::IsMember( { "trace", "debug", "info", "warn", "error", "off" } ) );
  app.add_flag( "--json", g.json, "print JSON instead of text" );

  std::string circuit, witness, out, skolem, qdimacs, witness_out, a, b, wa, wb, mode;
  std::vector<std::string> order;
  bool no_verify = false, exhaustive = false, recompile = false, parallel = false, no_certify = false;
  std::size_t subset_budget = CompileOptions{}.subset_max_iterations;
  std::uint64_t timeout_ms = 0;
  std::uint32_t n = 0, l = 0, j = 0;

  auto* check = app.add_subcommand( "check", "membership check of a witness sequence" );
  check->add_option( "--circuit", circuit )->required();
  check->add_option( "--witness", witness, "defaults to the circuit file's seq line" );

  auto* synnnf = app.add_subcommand( "synnnf", "whole-literal check for an output order" );
  synnnf->add_option( "--circuit", circuit )->required();
  synnnf->add_option( "--order", order, "output names or ids; default declared order" )->delimiter( ',' );

  auto* synth = app.add_subcommand( "synthesize", "Skolem vector from a witnessed circuit" );
  synth->add_option( "--circuit", circuit )->required();
  synth->add_option( "--witness", witness );
  synth->add_option( "--out", out )->required();
  synth->add_flag( "--no-verify", no_verify, "skip the witness and result checks" );

  auto add_compile_options = [&]( CLI::App* cmd ) {
    cmd->add_option( "--subset-budget", subset_budget, "subset search iterations per call" );
    cmd->add_option( "--timeout-ms", timeout_ms, "whole-compilation limit, 0 = none" );
    cmd->add_flag( "--parallel", parallel, "compile Shannon branches concurrently" );
    cmd->add_flag( "--no-certify", no_certify, "skip the final equivalence and membership checks" );
  };
  auto* compile = app.add_subcommand( "compile", "CNF spec to a witnessed SAUNF circuit" );
  compile->add_option( "--qdimacs", qdimacs )->required();
  compile->add_option( "--out", out )->required();
  compile->add_option( "--witness-out", witness_out );
  add_compile_options( compile );

  auto* verify = app.add_subcommand( "verify", "check a Skolem vector against a spec" );
  verify->add_option( "--circuit", circuit )->required();
  verify->add_option( "--skolem", skolem )->required();
  verify->add_flag( "--exhaustive", exhaustive, "enumerate instead of calling the SAT oracle" );

  auto* project = app.add_subcommand( "project", "existential projection of the outputs" );
  project->add_option( "--circuit", circuit )->required();
  project->add_option( "--witness", witness );
  project->add_option( "--out", out )->required();

  auto add_pair = [&]( CLI::App* cmd ) {
    cmd->add_option( "--a", a )->required();
    cmd->add_option( "--witness-a", wa );
    cmd->add_option( "--b", b )->required();
    cmd->add_option( "--witness-b", wb );
    cmd->add_option( "--out", out )->required();
  };
  auto* dis = app.add_subcommand( "disjoin", "OR of two witnessed circuits" );
  add_pair( dis );
  auto* con = app.add_subcommand( "conjoin", "AND of two witnessed circuits" );
  add_pair( con );
  con->add_flag( "--recompile", recompile, "on a polarity clash, recompile A and B (potentially exponential)" );
  add_compile_options( con );

  auto* bench = app.add_subcommand( "bench", "arithmetic constructions" );
  bench->require_subcommand( 1 );
  auto* factor = bench->add_subcommand( "factor", "bits l..j of x*y; all slices with j-l<n when l/j omitted" );
  factor->add_option( "--n", n )->required()->check( CLI::Range( 1, 16 ) );
  factor->add_option( "--l", l );
  factor->add_option( "--j", j );
  factor->add_option( "--verify", mode )->check( CLI::IsMember( { "exhaustive", "sat" } ) );
  auto* divide = bench->add_subcommand( "divide", "odd division" );
  divide->add_option( "--n", n )->required()->check( CLI::Range( 1, 16 ) );
  divide->add_option( "--verify", mode )->check( CLI::IsMember( { "exhaustive", "sat" } ) );

  try
  {
    app.parse( argc, argv );
  }
  catch ( const CLI::ParseError& e )
  {
    int code = app.exit( e );
    return code == 0 ? 0 : kExitUsage;
  }

  auto logger = spdlog::stderr_color_mt( "saunf" );
  spdlog::set_default_logger( logger );
  spdlog::set_level( spdlog::level::from_str( g.log_level ) );

  CompileOptions copts;
  copts.subset_max_iterations = subset_budget;
  copts.timeout_ms = timeout_ms;
  copts.parallel = parallel;
  copts.certify = !no_certify;

  try
  {
    auto oracle = make_oracle( OracleConfig{ g.solver, g.solver_timeout_ms } );
    spdlog::debug( "solver {}", oracle->name() );
    Report r;
    if ( *check )
      r = run_check( g, *oracle, circuit, witness );
    else if ( *synnnf )
      r = run_synnnf( g, *oracle, circuit, order );
    else if ( *synth )
      r = run_synthesize( g, *oracle, circuit, witness, out, no_verify );
    else if ( *compile )
      r = run_compile( g, *oracle, qdimacs, out, witness_out, copts );
    else if ( *verify )
      r = run_verify( g, *oracle, circuit, skolem, exhaustive );
    else if ( *project )
      r = run_project( g, circuit, witness, out );
    else if ( *dis )
      r = run_disjoin( g, a, wa, b, wb, out );
    else if ( *con )
      r = run_conjoin( g, *oracle, a, wa, b, wb, out, recompile, copts );
    else if ( *factor )
      r = run_bench_factor( g, *oracle, n, l, j, mode );
    else if ( *divide )
      r = run_bench_divide( g, *oracle, n, mode );

    if ( g.json )
      std::cout << r.data.dump( 2 ) << "\n";
    else
      std::cout << r.text;
    return r.status;
  }
  catch ( const ParseError& e )
  {
    spdlog::error( "parse error: {}", e.what() );
    return kExitParse;
  }
  catch ( const StructuralError& e )
  {
    spdlog::error( "malformed input: {}", e.what() );
    return kExitParse;
  }
  catch ( const ResourceError& e )
  {
    spdlog::error( "resource limit: {}", e.what() );
    return kExitResource;
  }
  catch ( const Error& e )
  {
    spdlog::error( "{}", e.what() );
    return kExitUsage;
  }
}
