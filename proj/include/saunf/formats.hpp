#pragma once

#include "saunf/skolem.hpp"
#include "saunf/spec.hpp"

#include <iosfwd>

namespace saunf
{

// Line-based text format, one definition per line, '#' starts a comment:
//
//   saunf circuit 1
//   var <id> input|output|aux [name]
//   leaf <Lname> +<id>|-<id>|T|F
//   node <Nname> AND|OR <ref> <ref>
//   root <ref>
//   seq <k> : {L3} ; {L7,L9} ; ...
//
// Leaves keep file order as their ids. Node lines may come in any order.
// A witness file is a header `saunf witness 1` followed by seq lines naming
// leaves of a separate circuit file. A Skolem file (`saunf skolem 1`) has
// var/leaf/node lines for one shared DAG plus `skolem <id> -> <ref>` lines.

struct CircuitDocument
{
  Spec spec;
  std::vector<LeafSequence> sequences;
};

void write_circuit( std::ostream& os, const Spec& spec, std::span<const LeafSequence> sequences = {} );
CircuitDocument read_circuit( std::istream& is );

void write_witness( std::ostream& os, const Circuit& circuit, const LeafSequence& seq );
/// The first seq line, resolved against the leaf names of `circuit`.
LeafSequence read_witness( std::istream& is, const Circuit& circuit );

/// `vars`, when given, supplies variable names and roles.
void write_skolem( std::ostream& os, const SkolemVector& psi, const VarTable* vars = nullptr );
SkolemVector read_skolem( std::istream& is );

/// `a` lines are inputs, `e` lines outputs, unquantified variables inputs.
Spec read_qdimacs( std::istream& is );
/// Throws StructuralError when the circuit is not CNF-shaped.
void write_qdimacs( std::ostream& os, const Spec& spec );

// File wrappers; an unreadable path raises Error.
CircuitDocument load_circuit( const std::string& path );
LeafSequence load_witness( const std::string& path, const Circuit& circuit );
SkolemVector load_skolem( const std::string& path );
Spec load_qdimacs( const std::string& path );

} // namespace saunf
