#include "saunf/formats.hpp"

#include "saunf/compiler.hpp"
#include "saunf/error.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace saunf
{

namespace
{

std::string kind_name( VarKind k )
{
  switch ( k )
  {
  case VarKind::input:
    return "input";
  case VarKind::output:
    return "output";
  default:
    return "aux";
  }
}

std::string label_text( const Label& l )
{
  if ( l.is_constant() )
  {
    return l.constant_value() ? "T" : "F";
  }
  return ( l.literal().negated ? "-" : "+" ) + std::to_string( l.literal().var );
}

std::string default_leaf_name( std::size_t k ) { return "L" + std::to_string( k ); }

std::vector<std::string> tokens( const std::string& line )
{
  std::istringstream ss( line );
  std::vector<std::string> out;
  std::string t;
  while ( ss >> t )
  {
    out.push_back( t );
  }
  return out;
}

std::string strip_comment( const std::string& line )
{
  auto pos = line.find( '#' );
  return pos == std::string::npos ? line : line.substr( 0, pos );
}

std::uint64_t parse_number( const std::string& s, std::size_t line, const char* what )
{
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars( s.data(), s.data() + s.size(), v );
  if ( ec != std::errc{} || p != s.data() + s.size() )
  {
    throw ParseError( line, std::string( "bad " ) + what + " '" + s + "'" );
  }
  return v;
}

Label parse_label( const std::string& s, std::size_t line )
{
  if ( s == "T" )
    return Label::constant( true );
  if ( s == "F" )
    return Label::constant( false );
  if ( s.size() < 2 || ( s[0] != '+' && s[0] != '-' ) )
  {
    throw ParseError( line, "bad leaf label '" + s + "'" );
  }
  auto v = parse_number( s.substr( 1 ), line, "variable" );
  if ( v == 0 || v > 0xffffffffu )
  {
    throw ParseError( line, "variable out of range in '" + s + "'" );
  }
  auto var = static_cast<VarId>( v );
  return Label::of( s[0] == '-' ? Literal::neg( var ) : Literal::pos( var ) );
}

void write_header( std::ostream& os, const char* kind ) { os << "saunf " << kind << " 1\n"; }

void expect_header( const std::vector<std::string>& t, std::size_t line, const char* kind )
{
  if ( t.size() != 3 || t[0] != "saunf" || t[1] != kind )
  {
    throw ParseError( line, std::string( "expected header 'saunf " ) + kind + " 1'" );
  }
  if ( t[2] != "1" )
  {
    throw ParseError( line, "unsupported version " + t[2] );
  }
}

void write_var( std::ostream& os, VarId id, VarKind kind, const std::string& name )
{
  os << "var " << id << ' ' << kind_name( kind );
  if ( !name.empty() )
  {
    os << ' ' << name;
  }
  os << '\n';
}

/// Node names: leaves by `leaf_name`, gates N<index>.
template<class Store, class LeafName>
void write_nodes( std::ostream& os, const Store& store, LeafName leaf_name, std::vector<std::string>& names )
{
  names.resize( store.size() );
  for ( NodeRef n = 0; n < store.size(); ++n )
  {
    const auto& node = store.node( n );
    if ( node.is_leaf() )
    {
      names[n] = leaf_name( node.leaf );
      os << "leaf " << names[n] << ' ' << label_text( store.labels()[index( node.leaf )] ) << '\n';
    }
    else
    {
      names[n] = "N" + std::to_string( n );
      os << "node " << names[n] << ' ' << ( node.gate == Gate::conj ? "AND" : "OR" ) << ' ' << names[node.lhs] << ' '
         << names[node.rhs] << '\n';
    }
  }
}

void write_seq( std::ostream& os, const LeafSequence& seq, const std::function<std::string( LeafId )>& name )
{
  os << "seq " << seq.size() << " :";
  for ( std::size_t k = 0; k < seq.size(); ++k )
  {
    os << ( k ? " ; {" : " {" );
    for ( std::size_t j = 0; j < seq[k].size(); ++j )
    {
      os << ( j ? "," : "" ) << name( seq[k][j] );
    }
    os << '}';
  }
  os << '\n';
}

/// Body of a seq line after the keyword, as lists of leaf names.
std::vector<std::vector<std::string>> parse_seq( const std::string& line, std::size_t lineno )
{
  auto colon = line.find( ':' );
  if ( colon == std::string::npos )
  {
    throw ParseError( lineno, "seq line without ':'" );
  }
  auto head = tokens( line.substr( 0, colon ) );
  if ( head.size() != 2 )
  {
    throw ParseError( lineno, "expected 'seq <k> :'" );
  }
  auto k = parse_number( head[1], lineno, "set count" );
  std::vector<std::vector<std::string>> sets;
  std::string rest = line.substr( colon + 1 );
  std::size_t pos = 0;
  while ( true )
  {
    auto open = rest.find( '{', pos );
    if ( open == std::string::npos )
    {
      if ( rest.find_first_not_of( " \t;\r", pos ) != std::string::npos )
      {
        throw ParseError( lineno, "stray text in seq line" );
      }
      break;
    }
    auto close = rest.find( '}', open );
    if ( close == std::string::npos )
    {
      throw ParseError( lineno, "unterminated '{' in seq line" );
    }
    std::vector<std::string> names;
    std::istringstream ss( rest.substr( open + 1, close - open - 1 ) );
    std::string item;
    while ( std::getline( ss, item, ',' ) )
    {
      auto t = tokens( item );
      if ( t.size() != 1 )
      {
        throw ParseError( lineno, "bad leaf name in seq line" );
      }
      names.push_back( t[0] );
    }
    sets.push_back( std::move( names ) );
    pos = close + 1;
  }
  if ( sets.size() != k )
  {
    throw ParseError( lineno, "seq declares " + std::to_string( k ) + " sets but lists " + std::to_string( sets.size() ) );
  }
  return sets;
}

struct GateDef
{
  Gate gate;
  std::string lhs, rhs;
  std::size_t line;
};

/// var/leaf/node definitions shared by circuit and Skolem documents.
struct Definitions
{
  VarTable vars;
  std::vector<std::pair<std::string, Label>> leaves;
  std::map<std::string, std::size_t> leaf_index;
  std::map<std::string, GateDef> gates;
  /// (is_leaf, name) in file order.
  std::vector<std::pair<bool, std::string>> order;

  bool parse( const std::vector<std::string>& t, std::size_t line )
  {
    if ( t[0] == "var" )
    {
      if ( t.size() < 3 || t.size() > 4 )
        throw ParseError( line, "expected 'var <id> input|output|aux [name]'" );
      auto id = parse_number( t[1], line, "variable" );
      if ( id == 0 || id > 0xffffffffu )
        throw ParseError( line, "variable out of range" );
      VarKind kind;
      if ( t[2] == "input" )
        kind = VarKind::input;
      else if ( t[2] == "output" )
        kind = VarKind::output;
      else if ( t[2] == "aux" )
        kind = VarKind::auxiliary;
      else
        throw ParseError( line, "unknown role '" + t[2] + "'" );
      if ( vars.contains( static_cast<VarId>( id ) ) )
        throw ParseError( line, "duplicate variable " + t[1] );
      vars.declare( static_cast<VarId>( id ), kind, t.size() == 4 ? t[3] : std::string{} );
      return true;
    }
    if ( t[0] == "leaf" )
    {
      if ( t.size() != 3 )
        throw ParseError( line, "expected 'leaf <name> <label>'" );
      check_new( t[1], line );
      leaf_index[t[1]] = leaves.size();
      leaves.emplace_back( t[1], parse_label( t[2], line ) );
      order.emplace_back( true, t[1] );
      return true;
    }
    if ( t[0] == "node" )
    {
      if ( t.size() != 5 )
        throw ParseError( line, "expected 'node <name> AND|OR <ref> <ref>'" );
      check_new( t[1], line );
      Gate g;
      if ( t[2] == "AND" )
        g = Gate::conj;
      else if ( t[2] == "OR" )
        g = Gate::disj;
      else
        throw ParseError( line, "unknown gate '" + t[2] + "'" );
      gates[t[1]] = GateDef{ g, t[3], t[4], line };
      order.emplace_back( false, t[1] );
      return true;
    }
    return false;
  }

  void check_new( const std::string& name, std::size_t line ) const
  {
    if ( leaf_index.count( name ) || gates.count( name ) )
      throw ParseError( line, "duplicate id '" + name + "'" );
  }

  /// Creates every definition in file order when all references point
  /// backwards, so that writing it again reproduces the file. Otherwise only
  /// the leaves are created here and gates are left to resolve().
  void materialize( CircuitBuilder& b, std::map<std::string, NodeRef>& nodes ) const
  {
    bool topological = true;
    {
      std::set<std::string> seen;
      for ( const auto& [is_leaf, name] : order )
      {
        if ( !is_leaf )
        {
          const auto& def = gates.at( name );
          topological = topological && seen.count( def.lhs ) && seen.count( def.rhs );
        }
        seen.insert( name );
      }
    }
    if ( !topological )
    {
      make_leaves( b, nodes );
      return;
    }
    for ( const auto& [is_leaf, name] : order )
    {
      if ( is_leaf )
      {
        auto k = leaf_index.at( name );
        nodes[name] = b.leaf( leaves[k].second, name == default_leaf_name( k ) ? std::string{} : name );
      }
      else
      {
        const auto& def = gates.at( name );
        nodes[name] = b.gate( def.gate, nodes.at( def.lhs ), nodes.at( def.rhs ) );
      }
    }
  }

  /// Creates every leaf in file order; names that differ from L<k> are kept.
  void make_leaves( CircuitBuilder& b, std::map<std::string, NodeRef>& nodes ) const
  {
    for ( std::size_t k = 0; k < leaves.size(); ++k )
    {
      const auto& [name, label] = leaves[k];
      nodes[name] = b.leaf( label, name == default_leaf_name( k ) ? std::string{} : name );
    }
  }

  NodeRef resolve( CircuitBuilder& b, std::map<std::string, NodeRef>& nodes, const std::string& ref, std::size_t line ) const
  {
    if ( auto it = nodes.find( ref ); it != nodes.end() )
      return it->second;
    if ( !gates.count( ref ) )
      throw ParseError( line, "dangling reference '" + ref + "'" );
    std::set<std::string> open;
    std::vector<std::string> stack{ ref };
    while ( !stack.empty() )
    {
      auto name = stack.back();
      if ( nodes.count( name ) )
      {
        stack.pop_back();
        continue;
      }
      const auto& def = gates.at( name );
      bool ready = true;
      for ( const auto* child : { &def.rhs, &def.lhs } )
      {
        if ( nodes.count( *child ) )
          continue;
        if ( !gates.count( *child ) )
          throw ParseError( def.line, "dangling reference '" + *child + "'" );
        if ( open.count( *child ) )
          throw ParseError( def.line, "cycle through '" + *child + "'" );
        ready = false;
        stack.push_back( *child );
      }
      if ( ready )
      {
        nodes[name] = b.gate( def.gate, nodes.at( def.lhs ), nodes.at( def.rhs ) );
        open.erase( name );
        stack.pop_back();
      }
      else
      {
        open.insert( name );
      }
    }
    return nodes.at( ref );
  }
};

template<class F>
void for_each_line( std::istream& is, F f )
{
  std::string raw;
  std::size_t lineno = 0;
  while ( std::getline( is, raw ) )
  {
    ++lineno;
    auto line = strip_comment( raw );
    auto t = tokens( line );
    if ( !t.empty() )
    {
      f( line, t, lineno );
    }
  }
}

template<class T>
T with_file( const std::string& path, const std::function<T( std::istream& )>& f )
{
  std::ifstream in( path );
  if ( !in )
  {
    throw Error( "cannot open " + path );
  }
  return f( in );
}

} // namespace

void write_circuit( std::ostream& os, const Spec& spec, std::span<const LeafSequence> sequences )
{
  const auto& c = spec.circuit;
  write_header( os, "circuit" );
  for ( const auto& v : spec.vars.all() )
  {
    write_var( os, v.id, v.kind, v.name );
  }
  std::vector<std::string> names;
  write_nodes( os, c, [&]( LeafId l ) { return c.leaf_name( l ); }, names );
  os << "root " << names[c.root()] << '\n';
  for ( const auto& seq : sequences )
  {
    write_seq( os, seq, [&]( LeafId l ) { return c.leaf_name( l ); } );
  }
}

CircuitDocument read_circuit( std::istream& is )
{
  Definitions defs;
  std::optional<std::pair<std::string, std::size_t>> root;
  std::vector<std::pair<std::string, std::size_t>> seq_lines;
  bool header = false;
  for_each_line( is, [&]( const std::string& line, const std::vector<std::string>& t, std::size_t n ) {
    if ( !header )
    {
      expect_header( t, n, "circuit" );
      header = true;
      return;
    }
    if ( defs.parse( t, n ) )
      return;
    if ( t[0] == "root" )
    {
      if ( t.size() != 2 )
        throw ParseError( n, "expected 'root <ref>'" );
      if ( root )
        throw ParseError( n, "second root line" );
      root = { t[1], n };
      return;
    }
    if ( t[0] == "seq" )
    {
      seq_lines.emplace_back( line, n );
      return;
    }
    throw ParseError( n, "unknown keyword '" + t[0] + "'" );
  } );
  if ( !header )
    throw ParseError( 1, "empty document" );
  if ( !root )
    throw ParseError( 0, "missing root line" );

  CircuitBuilder b;
  std::map<std::string, NodeRef> nodes;
  defs.materialize( b, nodes );
  auto r = defs.resolve( b, nodes, root->first, root->second );
  std::vector<LeafId> leaf_of_node;
  auto circuit = b.build( r, &leaf_of_node );

  CircuitDocument doc;
  doc.spec.circuit = std::move( circuit );
  doc.spec.vars = defs.vars;
  doc.spec.inputs = doc.spec.vars.of_kind( VarKind::input );
  doc.spec.outputs = doc.spec.vars.of_kind( VarKind::output );
  for ( auto v : doc.spec.circuit.variables() )
  {
    if ( !doc.spec.vars.contains( v ) )
      throw ParseError( 0, "leaf uses undeclared variable " + std::to_string( v ) );
  }
  for ( const auto& [line, n] : seq_lines )
  {
    LeafSequence seq;
    for ( const auto& set : parse_seq( line, n ) )
    {
      LeafSet s;
      for ( const auto& name : set )
      {
        auto it = defs.leaf_index.find( name );
        if ( it == defs.leaf_index.end() )
          throw ParseError( n, "unknown leaf '" + name + "'" );
        auto id = leaf_of_node[nodes.at( name )];
        if ( id == kNoLeaf )
          throw ParseError( n, "leaf '" + name + "' is unreachable from the root" );
        s.push_back( id );
      }
      seq.push_back( make_leaf_set( std::move( s ) ) );
    }
    doc.sequences.push_back( std::move( seq ) );
  }
  return doc;
}

void write_witness( std::ostream& os, const Circuit& circuit, const LeafSequence& seq )
{
  write_header( os, "witness" );
  write_seq( os, seq, [&]( LeafId l ) { return circuit.leaf_name( l ); } );
}

LeafSequence read_witness( std::istream& is, const Circuit& circuit )
{
  std::map<std::string, LeafId> by_name;
  for ( std::size_t k = 0; k < circuit.num_leaves(); ++k )
  {
    auto id = leaf_id( static_cast<std::uint32_t>( k ) );
    by_name[circuit.leaf_name( id )] = id;
  }
  bool header = false;
  std::optional<LeafSequence> out;
  for_each_line( is, [&]( const std::string& line, const std::vector<std::string>& t, std::size_t n ) {
    if ( !header )
    {
      expect_header( t, n, "witness" );
      header = true;
      return;
    }
    if ( t[0] != "seq" )
      throw ParseError( n, "unknown keyword '" + t[0] + "'" );
    if ( out )
      return;
    LeafSequence seq;
    for ( const auto& set : parse_seq( line, n ) )
    {
      LeafSet s;
      for ( const auto& name : set )
      {
        auto it = by_name.find( name );
        if ( it == by_name.end() )
          throw ParseError( n, "unknown leaf '" + name + "'" );
        s.push_back( it->second );
      }
      seq.push_back( make_leaf_set( std::move( s ) ) );
    }
    out = std::move( seq );
  } );
  if ( !header )
    throw ParseError( 1, "empty document" );
  if ( !out )
    throw ParseError( 0, "no seq line" );
  return *out;
}

void write_skolem( std::ostream& os, const SkolemVector& psi, const VarTable* vars )
{
  write_header( os, "skolem" );
  std::set<VarId> declared;
  auto declare = [&]( VarId v, VarKind fallback ) {
    if ( !declared.insert( v ).second )
      return;
    if ( vars && vars->contains( v ) )
      write_var( os, v, vars->kind( v ), vars->info( v ).name );
    else
      write_var( os, v, fallback, {} );
  };
  for ( auto v : psi.vars )
  {
    declare( v, VarKind::output );
  }
  std::set<VarId> leaf_vars;
  for ( const auto& l : psi.dag.labels() )
  {
    if ( l.is_literal() )
      leaf_vars.insert( l.literal().var );
  }
  for ( auto v : leaf_vars )
  {
    declare( v, VarKind::input );
  }
  for ( auto [v, level] : psi.aux_level )
  {
    os << "aux " << v << ' ' << level << '\n';
  }
  std::vector<std::string> names;
  write_nodes( os, psi.dag, []( LeafId l ) { return default_leaf_name( index( l ) ); }, names );
  for ( std::size_t k = 0; k < psi.vars.size(); ++k )
  {
    os << "skolem " << psi.vars[k] << " -> " << names[psi.roots[k]] << '\n';
  }
}

SkolemVector read_skolem( std::istream& is )
{
  Definitions defs;
  std::vector<std::tuple<VarId, std::string, std::size_t>> roots;
  std::map<VarId, std::size_t> aux_level;
  bool header = false;
  for_each_line( is, [&]( const std::string&, const std::vector<std::string>& t, std::size_t n ) {
    if ( !header )
    {
      expect_header( t, n, "skolem" );
      header = true;
      return;
    }
    if ( defs.parse( t, n ) )
      return;
    if ( t[0] == "skolem" )
    {
      if ( t.size() != 4 || t[2] != "->" )
        throw ParseError( n, "expected 'skolem <id> -> <ref>'" );
      auto v = static_cast<VarId>( parse_number( t[1], n, "variable" ) );
      for ( const auto& r : roots )
      {
        if ( std::get<0>( r ) == v )
          throw ParseError( n, "second function for variable " + t[1] );
      }
      roots.emplace_back( v, t[3], n );
      return;
    }
    if ( t[0] == "aux" )
    {
      if ( t.size() != 3 )
        throw ParseError( n, "expected 'aux <id> <level>'" );
      aux_level[static_cast<VarId>( parse_number( t[1], n, "variable" ) )] = parse_number( t[2], n, "level" );
      return;
    }
    throw ParseError( n, "unknown keyword '" + t[0] + "'" );
  } );
  if ( !header )
    throw ParseError( 1, "empty document" );

  CircuitBuilder b;
  std::map<std::string, NodeRef> nodes;
  defs.materialize( b, nodes );
  SkolemVector psi;
  std::vector<NodeRef> refs;
  for ( const auto& [v, ref, n] : roots )
  {
    psi.vars.push_back( v );
    refs.push_back( defs.resolve( b, nodes, ref, n ) );
  }
  psi.dag = b.build_shared( refs );
  psi.roots = std::move( refs );
  psi.aux_level = std::move( aux_level );
  return psi;
}

Spec read_qdimacs( std::istream& is )
{
  std::optional<std::uint64_t> num_vars;
  std::vector<VarId> inputs, outputs;
  std::set<VarId> quantified;
  Cnf cnf;
  Clause current;
  std::size_t current_line = 0;
  bool seen_e = false;
  bool seen_clause = false;

  std::string raw;
  std::size_t n = 0;
  while ( std::getline( is, raw ) )
  {
    ++n;
    auto t = tokens( raw );
    if ( t.empty() || t[0] == "c" )
      continue;
    if ( t[0] == "p" )
    {
      if ( num_vars || t.size() != 4 || t[1] != "cnf" )
        throw ParseError( n, "malformed header" );
      num_vars = parse_number( t[2], n, "variable count" );
      parse_number( t[3], n, "clause count" );
      continue;
    }
    if ( !num_vars )
      throw ParseError( n, "missing 'p cnf' header" );
    auto literal = [&]( const std::string& s ) {
      int v = 0;
      auto [p, ec] = std::from_chars( s.data(), s.data() + s.size(), v );
      if ( ec != std::errc{} || p != s.data() + s.size() )
        throw ParseError( n, "bad literal '" + s + "'" );
      if ( static_cast<std::uint64_t>( v < 0 ? -static_cast<std::int64_t>( v ) : v ) > *num_vars )
        throw ParseError( n, "variable out of range: " + s );
      return v;
    };
    if ( t[0] == "a" || t[0] == "e" )
    {
      if ( seen_clause )
        throw ParseError( n, "quantifier line after clauses" );
      bool exists = t[0] == "e";
      if ( !exists && seen_e )
        throw ParseError( n, "unsupported prefix: universal block inside an existential one" );
      seen_e = seen_e || exists;
      if ( t.back() != "0" )
        throw ParseError( n, "quantifier line not zero-terminated" );
      for ( std::size_t k = 1; k + 1 < t.size(); ++k )
      {
        auto v = literal( t[k] );
        if ( v <= 0 )
          throw ParseError( n, "bad quantified variable '" + t[k] + "'" );
        if ( !quantified.insert( static_cast<VarId>( v ) ).second )
          throw ParseError( n, "variable " + t[k] + " quantified twice" );
        ( exists ? outputs : inputs ).push_back( static_cast<VarId>( v ) );
      }
      continue;
    }
    seen_clause = true;
    for ( const auto& s : t )
    {
      auto v = literal( s );
      if ( v == 0 )
      {
        cnf.push_back( std::move( current ) );
        current.clear();
        continue;
      }
      if ( current.empty() )
        current_line = n;
      current.push_back( Literal::from_int( v ) );
    }
  }
  if ( !num_vars )
    throw ParseError( n, "missing 'p cnf' header" );
  if ( !current.empty() )
    throw ParseError( current_line, "clause not zero-terminated" );

  for ( VarId v = 1; v <= *num_vars; ++v )
  {
    if ( !quantified.count( v ) )
      inputs.push_back( v );
  }
  return make_spec( cnf_circuit( cnf ).circuit, std::move( inputs ), std::move( outputs ) );
}

void write_qdimacs( std::ostream& os, const Spec& spec )
{
  auto cnf = cnf_clauses( spec.circuit );
  VarId max_var = spec.vars.max_id();
  os << "p cnf " << max_var << ' ' << cnf.size() << '\n';
  if ( !spec.inputs.empty() )
  {
    os << 'a';
    for ( auto v : spec.inputs )
      os << ' ' << v;
    os << " 0\n";
  }
  if ( !spec.outputs.empty() )
  {
    os << 'e';
    for ( auto v : spec.outputs )
      os << ' ' << v;
    os << " 0\n";
  }
  for ( const auto& c : cnf )
  {
    for ( auto l : c )
      os << l.to_int() << ' ';
    os << "0\n";
  }
}

CircuitDocument load_circuit( const std::string& path )
{
  return with_file<CircuitDocument>( path, []( std::istream& is ) { return read_circuit( is ); } );
}

LeafSequence load_witness( const std::string& path, const Circuit& circuit )
{
  return with_file<LeafSequence>( path, [&]( std::istream& is ) { return read_witness( is, circuit ); } );
}

SkolemVector load_skolem( const std::string& path )
{
  return with_file<SkolemVector>( path, []( std::istream& is ) { return read_skolem( is ); } );
}

Spec load_qdimacs( const std::string& path )
{
  return with_file<Spec>( path, []( std::istream& is ) { return read_qdimacs( is ); } );
}

} // namespace saunf
