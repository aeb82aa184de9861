#include "saunf/arithmetic.hpp"

#include "saunf/error.hpp"

namespace saunf
{

namespace
{

using Bit = std::optional<std::uint32_t>;

Bit bit_and( RawCircuit& r, Bit a, Bit b )
{
  if ( !a || !b )
    return std::nullopt;
  return r.add_and( *a, *b );
}

Bit bit_xor( RawCircuit& r, Bit a, Bit b )
{
  if ( !a )
    return b;
  if ( !b )
    return a;
  return r.add_xor( *a, *b );
}

Bit bit_or( RawCircuit& r, Bit a, Bit b )
{
  if ( !a )
    return b;
  if ( !b )
    return a;
  return r.add_or( *a, *b );
}

Circuit normalize( const RawCircuit& raw, Bit root )
{
  if ( !root )
  {
    CircuitBuilder b;
    return b.build( b.constant( false ) );
  }
  RawCircuit copy = raw;
  copy.root = *root;
  return negation_normalize( copy );
}

void declare_words( Spec& s, const BitLayout& w, bool y_is_input )
{
  for ( std::uint32_t k = 1; k <= w.n; ++k )
  {
    s.vars.declare( w.x( k ), VarKind::output, "x" + std::to_string( k ) );
    s.outputs.push_back( w.x( k ) );
  }
  for ( std::uint32_t k = 1; k <= w.n; ++k )
  {
    s.vars.declare( w.y( k ), y_is_input ? VarKind::input : VarKind::output, "y" + std::to_string( k ) );
    ( y_is_input ? s.inputs : s.outputs ).push_back( w.y( k ) );
  }
  for ( std::uint32_t k = 1; k <= 2 * w.n; ++k )
  {
    s.vars.declare( w.i( k ), VarKind::input, "i" + std::to_string( k ) );
    s.inputs.push_back( w.i( k ) );
  }
}

/// Leaves for x, y, i and the multiplier over them.
struct Words
{
  BitLayout w;
  RawCircuit raw;
  std::vector<std::uint32_t> x, y, i;

  explicit Words( std::uint32_t n ) : w{ n }
  {
    for ( std::uint32_t k = 1; k <= n; ++k )
      x.push_back( raw.add_literal( Literal::pos( w.x( k ) ) ) );
    for ( std::uint32_t k = 1; k <= n; ++k )
      y.push_back( raw.add_literal( Literal::pos( w.y( k ) ) ) );
    for ( std::uint32_t k = 1; k <= 2 * n; ++k )
      i.push_back( raw.add_literal( Literal::pos( w.i( k ) ) ) );
  }

  /// Bits l..j of the product equal i_l..i_j.
  std::uint32_t match( const std::vector<Bit>& product, std::uint32_t l, std::uint32_t j )
  {
    std::optional<std::uint32_t> acc;
    for ( auto k = l; k <= j; ++k )
    {
      auto ik = i[k - 1];
      auto eq = product[k - 1] ? raw.add_xnor( *product[k - 1], ik ) : raw.add_not( ik );
      acc = acc ? raw.add_and( *acc, eq ) : eq;
    }
    return *acc;
  }
};

void check_slice( std::uint32_t n, std::uint32_t l, std::uint32_t j )
{
  if ( n == 0 || l < 1 || l > j || j > 2 * n )
  {
    throw PreconditionError( "bit slice needs 1 <= l <= j <= 2n" );
  }
}

} // namespace

std::vector<std::optional<std::uint32_t>> multiply( RawCircuit& raw, std::span<const std::uint32_t> a,
                                                    std::span<const std::uint32_t> b, std::size_t bits )
{
  std::vector<Bit> acc( bits );
  for ( std::size_t r = 0; r < a.size() && r < bits; ++r )
  {
    Bit carry;
    for ( std::size_t pos = r; pos < bits; ++pos )
    {
      auto c = pos - r;
      Bit pp = c < b.size() ? Bit( raw.add_and( a[r], b[c] ) ) : std::nullopt;
      if ( !pp && !carry )
      {
        if ( c >= b.size() )
          break;
        continue;
      }
      // full adder on (acc, pp, carry)
      auto half = bit_xor( raw, acc[pos], pp );
      auto sum = bit_xor( raw, half, carry );
      carry = bit_or( raw, bit_and( raw, acc[pos], pp ), bit_and( raw, carry, half ) );
      acc[pos] = sum;
    }
  }
  return acc;
}

Circuit Multiplier::bit( std::uint32_t k ) const { return normalize( raw, product.at( k - 1 ) ); }

Multiplier build_multiplier( std::uint32_t n )
{
  if ( n == 0 )
  {
    throw PreconditionError( "word width must be positive" );
  }
  Words w( n );
  Multiplier m;
  m.product = multiply( w.raw, w.x, w.y, 2 * n );
  m.raw = std::move( w.raw );
  return m;
}

Spec build_rlj( std::uint32_t n, std::uint32_t l, std::uint32_t j )
{
  check_slice( n, l, j );
  Words w( n );
  auto product = multiply( w.raw, w.x, w.y, 2 * n );
  w.raw.root = w.match( product, l, j );
  Spec s;
  s.circuit = negation_normalize( w.raw );
  declare_words( s, w.w, false );
  s.validate();
  return s;
}

SkolemVector skolem_for_rlj( std::uint32_t n, std::uint32_t l, std::uint32_t j )
{
  check_slice( n, l, j );
  if ( j - l >= n )
  {
    throw PreconditionError( "closed-form Skolem vector needs j - l < n" );
  }
  BitLayout w{ n };
  auto constant = []( bool v ) {
    CircuitBuilder b;
    return b.build( b.constant( v ) );
  };
  auto copy = [&]( std::uint32_t k ) {
    CircuitBuilder b;
    return b.build( b.literal( Literal::pos( w.i( k ) ) ) );
  };

  std::vector<VarId> vars;
  std::vector<Circuit> fns;
  std::uint32_t x_one = l <= n ? l : n;
  for ( std::uint32_t k = 1; k <= n; ++k )
  {
    vars.push_back( w.x( k ) );
    fns.push_back( constant( k == x_one ) );
  }
  for ( std::uint32_t k = 1; k <= n; ++k )
  {
    vars.push_back( w.y( k ) );
    if ( l <= n )
    {
      fns.push_back( k <= j + 1 - l ? copy( k + l - 1 ) : constant( false ) );
    }
    else
    {
      fns.push_back( l - n < k && k <= j + 1 - n ? copy( k + n - 1 ) : constant( false ) );
    }
  }
  return make_skolem_vector( std::move( vars ), fns );
}

SaunfWitness saunf_for_rlj( std::uint32_t n, std::uint32_t l, std::uint32_t j, const SatOracle& oracle )
{
  return saunf_from_skolem( build_rlj( n, l, j ), skolem_for_rlj( n, l, j ), oracle );
}

Spec build_odd_division( std::uint32_t n )
{
  if ( n == 0 )
  {
    throw PreconditionError( "word width must be positive" );
  }
  Words w( n );
  auto product = multiply( w.raw, w.x, w.y, 2 * n );
  auto m = w.match( product, 1, 2 * n );
  w.raw.root = w.raw.add_and( w.raw.add_and( w.i[0], w.y[0] ), m );
  Spec s;
  s.circuit = negation_normalize( w.raw );
  declare_words( s, w.w, true );
  s.validate();
  return s;
}

SkolemVector odd_division_skolem( std::uint32_t n )
{
  if ( n == 0 )
  {
    throw PreconditionError( "word width must be positive" );
  }
  BitLayout w{ n };
  RawCircuit raw;
  std::vector<std::uint32_t> y, i;
  for ( std::uint32_t k = 1; k <= n; ++k )
  {
    y.push_back( raw.add_literal( Literal::pos( w.y( k ) ) ) );
    i.push_back( raw.add_literal( Literal::pos( w.i( k ) ) ) );
  }
  std::vector<std::uint32_t> x{ raw.add_constant( true ) };
  for ( std::uint32_t k = 2; k <= n; ++k )
  {
    auto low = multiply( raw, std::span( x ).first( k - 1 ), std::span( y ).first( k ), k );
    auto xk = bit_xor( raw, i[k - 1], low[k - 1] );
    x.push_back( *xk );
  }
  std::vector<VarId> vars;
  std::vector<Circuit> fns;
  for ( std::uint32_t k = 1; k <= n; ++k )
  {
    vars.push_back( w.x( k ) );
    fns.push_back( cprop_simp( normalize( raw, x[k - 1] ) ).circuit );
  }
  return make_skolem_vector( std::move( vars ), fns );
}

Spec build_factorization( std::uint32_t n )
{
  if ( n == 0 )
  {
    throw PreconditionError( "word width must be positive" );
  }
  Words w( n );
  auto product = multiply( w.raw, w.x, w.y, 2 * n );
  auto m = w.match( product, 1, 2 * n );
  // word ≠ 1: ¬bit1 or some higher bit set
  auto not_one = [&]( const std::vector<std::uint32_t>& word ) {
    auto acc = w.raw.add_not( word[0] );
    for ( std::size_t k = 1; k < word.size(); ++k )
      acc = w.raw.add_or( acc, word[k] );
    return acc;
  };
  w.raw.root = w.raw.add_and( m, w.raw.add_and( not_one( w.x ), not_one( w.y ) ) );
  Spec s;
  s.circuit = negation_normalize( w.raw );
  declare_words( s, w.w, false );
  s.validate();
  return s;
}

} // namespace saunf
