#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace saunf
{

/// Variable identifier. Positive; 0 is never a valid variable.
using VarId = std::uint32_t;

enum class VarKind : std::uint8_t
{
  input,
  output,
  auxiliary
};

std::string to_string( VarKind kind );

/// A variable or its negation.
struct Literal
{
  VarId var = 0;
  bool negated = false;

  static constexpr Literal pos( VarId v ) { return { v, false }; }
  static constexpr Literal neg( VarId v ) { return { v, true }; }

  /// DIMACS style: +v or -v.
  static Literal from_int( int lit );
  int to_int() const { return negated ? -static_cast<int>( var ) : static_cast<int>( var ); }

  constexpr Literal operator~() const { return { var, !negated }; }
  friend constexpr auto operator<=>( const Literal&, const Literal& ) = default;
};

std::string to_string( const Literal& lit );

/// Leaf label: a literal or one of the constants.
class Label
{
public:
  enum class Kind : std::uint8_t
  {
    constant_false,
    constant_true,
    literal
  };

  constexpr Label() = default;
  static constexpr Label constant( bool value )
  {
    Label l;
    l.kind_ = value ? Kind::constant_true : Kind::constant_false;
    return l;
  }
  static constexpr Label of( Literal lit )
  {
    Label l;
    l.kind_ = Kind::literal;
    l.lit_ = lit;
    return l;
  }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_constant() const { return kind_ != Kind::literal; }
  constexpr bool is_literal() const { return kind_ == Kind::literal; }
  constexpr bool constant_value() const { return kind_ == Kind::constant_true; }
  constexpr Literal literal() const { return lit_; }
  constexpr bool is( Literal lit ) const { return is_literal() && lit_ == lit; }

  friend constexpr bool operator==( const Label& a, const Label& b )
  {
    return a.kind_ == b.kind_ && ( a.kind_ != Kind::literal || a.lit_ == b.lit_ );
  }

private:
  Kind kind_ = Kind::constant_false;
  Literal lit_{};
};

std::string to_string( const Label& label );

/// Stable identity of a leaf within a circuit. Relabeling preserves it.
enum class LeafId : std::uint32_t
{
};

constexpr LeafId kNoLeaf{ std::numeric_limits<std::uint32_t>::max() };

constexpr std::uint32_t index( LeafId id ) { return static_cast<std::uint32_t>( id ); }
constexpr LeafId leaf_id( std::uint32_t i ) { return static_cast<LeafId>( i ); }

/// Partial assignment of variables to Boolean values.
class Assignment
{
public:
  Assignment() = default;

  void set( VarId v, bool value );
  void unset( VarId v );
  std::optional<bool> get( VarId v ) const;
  bool contains( VarId v ) const { return get( v ).has_value(); }
  bool value_of( Literal lit ) const;

  /// Variables with a value, ascending.
  std::vector<VarId> variables() const;
  std::size_t size() const;

  friend bool operator==( const Assignment& a, const Assignment& b );

private:
  std::vector<std::int8_t> values_; // -1 unassigned, else 0/1; indexed by VarId
};

std::string to_string( const Assignment& sigma, const std::function<std::string( VarId )>& name = {} );

} // namespace saunf

template<>
struct std::hash<saunf::Literal>
{
  std::size_t operator()( const saunf::Literal& l ) const noexcept
  {
    return std::hash<std::uint64_t>{}( ( std::uint64_t{ l.var } << 1 ) | ( l.negated ? 1u : 0u ) );
  }
};
