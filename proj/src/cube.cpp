#include "mqm/cube.hpp"

#include <bit>
#include <string>

#include "mqm/error.hpp"

namespace mqm
{

namespace
{

/// Symmetric difference of two distinct symbols: {0}^{1} = X, 0^X = 1, 1^X = 0.
char symbol_xor( char a, char b ) noexcept
{
  if ( a == 'X' )
  {
    return b == '0' ? '1' : '0';
  }
  if ( b == 'X' )
  {
    return a == '0' ? '1' : '0';
  }
  return 'X';
}

} // namespace

Cube::Cube( unsigned n, Minterm care, Minterm value, int score )
    : n_( n ), care_( care ), value_( value & care ), score_( score )
{
}

Cube Cube::minterm( Minterm x, unsigned n, int score )
{
  const Minterm all = n == 0 ? 0 : static_cast<Minterm>( ( std::uint64_t{ 1 } << n ) - 1 );
  return Cube( n, all, x & all, score );
}

Cube Cube::universe( unsigned n )
{
  return Cube( n, 0, 0 );
}

Cube Cube::parse( std::string_view text )
{
  std::string symbols;
  for ( const char ch : text )
  {
    if ( ch == ',' || ch == ' ' || ch == '_' )
    {
      continue;
    }
    if ( ch == '0' || ch == '1' )
    {
      symbols += ch;
    }
    else if ( ch == 'X' || ch == 'x' || ch == '-' )
    {
      symbols += 'X';
    }
    else
    {
      throw Error( ErrorCode::bad_row, "bad cube symbol in '" + std::string( text ) + "'" );
    }
  }
  const auto n = static_cast<unsigned>( symbols.size() );
  if ( n > kMaxVariables )
  {
    throw Error( ErrorCode::bad_length, "cube longer than " + std::to_string( kMaxVariables ) );
  }
  Minterm care = 0;
  Minterm value = 0;
  for ( unsigned v = 1; v <= n; ++v )
  {
    const char s = symbols[v - 1];
    if ( s != 'X' )
    {
      care |= var_mask( v, n );
      if ( s == '1' )
      {
        value |= var_mask( v, n );
      }
    }
  }
  return Cube( n, care, value );
}

char Cube::at( unsigned var ) const noexcept
{
  const auto bit = var_mask( var, n_ );
  if ( ( care_ & bit ) == 0 )
  {
    return 'X';
  }
  return ( value_ & bit ) != 0 ? '1' : '0';
}

Cube Cube::with( unsigned var, char literal ) const
{
  const auto bit = var_mask( var, n_ );
  Cube c = *this;
  switch ( literal )
  {
  case '0':
    c.care_ |= bit;
    c.value_ &= ~bit;
    break;
  case '1':
    c.care_ |= bit;
    c.value_ |= bit;
    break;
  default:
    c.care_ &= ~bit;
    c.value_ &= ~bit;
    break;
  }
  return c;
}

unsigned Cube::num_literals() const noexcept
{
  return static_cast<unsigned>( std::popcount( care_ ) );
}

bool Cube::contains( const Cube& other ) const noexcept
{
  return ( other.care_ & care_ ) == care_ && ( other.value_ & care_ ) == value_;
}

bool Cube::intersects( const Cube& other ) const noexcept
{
  const auto common = care_ & other.care_;
  return ( value_ & common ) == ( other.value_ & common );
}

std::optional<Cube> Cube::intersection( const Cube& other ) const
{
  if ( n_ != other.n_ || !intersects( other ) )
  {
    return std::nullopt;
  }
  return Cube( n_, care_ | other.care_, value_ | other.value_ );
}

std::vector<Minterm> Cube::minterms() const
{
  std::vector<Minterm> out;
  out.reserve( size() );
  const Minterm all = n_ == 0 ? 0 : static_cast<Minterm>( ( std::uint64_t{ 1 } << n_ ) - 1 );
  const Minterm free = all & ~care_;
  // Enumerate subsets of the free mask in increasing order.
  Minterm sub = 0;
  while ( true )
  {
    out.push_back( value_ | sub );
    if ( sub == free )
    {
      break;
    }
    sub = ( sub - free ) & free;
  }
  return out;
}

std::vector<Control> Cube::controls() const
{
  std::vector<Control> out;
  for ( unsigned v = 1; v <= n_; ++v )
  {
    const char s = at( v );
    if ( s != 'X' )
    {
      out.push_back( { v, s == '1' ? Polarity::positive : Polarity::negative } );
    }
  }
  return out;
}

unsigned Cube::direction() const
{
  unsigned dir = 0;
  for ( unsigned v = 1; v <= n_; ++v )
  {
    if ( at( v ) == 'X' )
    {
      dir |= 1u << segment_position( v );
    }
  }
  return dir;
}

std::string Cube::to_string( bool segmented ) const
{
  std::string s;
  for ( unsigned v = 1; v <= n_; ++v )
  {
    if ( segmented && v > 1 && v % 2 == 1 )
    {
      s += ',';
    }
    s += at( v );
  }
  return s;
}

bool lexicographic_less( const Cube& a, const Cube& b )
{
  return a.to_string() < b.to_string();
}

unsigned distance( const Cube& a, const Cube& b ) noexcept
{
  const auto diff = ( a.care() ^ b.care() ) | ( a.value() ^ b.value() );
  return static_cast<unsigned>( std::popcount( diff ) );
}

std::vector<unsigned> differing_vars( const Cube& a, const Cube& b )
{
  std::vector<unsigned> out;
  for ( unsigned v = 1; v <= a.num_vars(); ++v )
  {
    if ( a.at( v ) != b.at( v ) )
    {
      out.push_back( v );
    }
  }
  return out;
}

std::optional<Cube> merge( const Cube& a, const Cube& b )
{
  if ( a.num_vars() != b.num_vars() || a.care() != b.care() )
  {
    return std::nullopt;
  }
  const auto diff = a.value() ^ b.value();
  if ( std::popcount( diff ) != 1 )
  {
    return std::nullopt;
  }
  return Cube( a.num_vars(), a.care() & ~diff, a.value() & ~diff, a.score() + b.score() );
}

std::optional<Cube> xor_merge( const Cube& a, const Cube& b )
{
  const auto d = differing_vars( a, b );
  if ( d.size() != 1 )
  {
    return std::nullopt;
  }
  Cube c = a.with( d[0], symbol_xor( a.at( d[0] ), b.at( d[0] ) ) );
  c.set_score( a.score() + b.score() );
  return c;
}

std::vector<std::pair<Cube, Cube>> exorlink( const Cube& a, const Cube& b )
{
  std::vector<std::pair<Cube, Cube>> out;
  const auto d = differing_vars( a, b );
  if ( d.size() != 2 )
  {
    return out;
  }
  const unsigned p = d[0];
  const unsigned q = d[1];
  out.emplace_back( a.with( q, symbol_xor( a.at( q ), b.at( q ) ) ), b.with( p, symbol_xor( a.at( p ), b.at( p ) ) ) );
  out.emplace_back( a.with( p, symbol_xor( a.at( p ), b.at( p ) ) ), b.with( q, symbol_xor( a.at( q ), b.at( q ) ) ) );
  return out;
}

bool xor_evaluate( std::span<const Cube> cubes, Minterm x ) noexcept
{
  bool parity = false;
  for ( const auto& c : cubes )
  {
    parity ^= c.contains( x );
  }
  return parity;
}

std::vector<std::uint8_t> xor_indicator( std::span<const Cube> cubes, unsigned n )
{
  std::vector<std::uint8_t> out( std::size_t{ 1 } << n, 0 );
  for ( const auto& c : cubes )
  {
    for ( const auto x : c.minterms() )
    {
      out[x] ^= 1u;
    }
  }
  return out;
}

Minterm insert_bit( Minterm x, unsigned var, unsigned n, bool bit ) noexcept
{
  // x has n-1 bits; the new bit lands at position n - var from the right.
  const unsigned pos = n - var;
  const Minterm low = x & ( ( Minterm{ 1 } << pos ) - 1 );
  const Minterm high = ( x >> pos ) << ( pos + 1 );
  return high | low | ( bit ? ( Minterm{ 1 } << pos ) : 0 );
}

Minterm project_out( Minterm x, unsigned var, unsigned n ) noexcept
{
  const unsigned pos = n - var;
  const Minterm low = x & ( ( Minterm{ 1 } << pos ) - 1 );
  const Minterm high = ( x >> ( pos + 1 ) ) << pos;
  return high | low;
}

Cube lift( const Cube& c, unsigned var )
{
  const unsigned n = c.num_vars() + 1;
  return Cube( n, insert_bit( c.care(), var, n, false ), insert_bit( c.value(), var, n, false ), c.score() );
}

} // namespace mqm
