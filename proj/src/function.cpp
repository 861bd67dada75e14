#include "mqm/function.hpp"

#include <algorithm>
#include <string>

#include "mqm/error.hpp"
#include "mqm/gate.hpp"
#include "mqm/kernels.hpp"

namespace mqm
{

namespace
{

void check_var( unsigned var, unsigned n )
{
  if ( var < 1 || var > n )
  {
    throw Error( ErrorCode::index_out_of_range, "variable " + std::to_string( var ) + " outside 1.." + std::to_string( n ) );
  }
}

void check_size( unsigned n )
{
  if ( n > kMaxVariables )
  {
    throw Error( ErrorCode::bad_length, "at most " + std::to_string( kMaxVariables ) + " variables are supported" );
  }
}

} // namespace

ReversibleFunction ReversibleFunction::identity( unsigned n )
{
  check_size( n );
  std::vector<Minterm> perm( std::size_t{ 1 } << n );
  for ( std::size_t x = 0; x < perm.size(); ++x )
  {
    perm[x] = static_cast<Minterm>( x );
  }
  return ReversibleFunction( n, std::move( perm ) );
}

ReversibleFunction ReversibleFunction::from_truth_table( std::span<const Minterm> rows, unsigned n )
{
  check_size( n );
  const std::size_t size = std::size_t{ 1 } << n;
  if ( rows.size() != size )
  {
    throw Error( ErrorCode::bad_length, "expected " + std::to_string( size ) + " rows, got " + std::to_string( rows.size() ) );
  }
  std::vector<bool> seen( size, false );
  for ( std::size_t x = 0; x < size; ++x )
  {
    const Minterm y = rows[x];
    if ( y >= size )
    {
      throw Error( ErrorCode::bad_length, "row " + std::to_string( x ) + " has more than " + std::to_string( n ) + " bits" );
    }
    if ( seen[y] )
    {
      throw Error( ErrorCode::not_bijective, "output " + std::to_string( y ) + " appears twice" );
    }
    seen[y] = true;
  }
  return ReversibleFunction( n, std::vector<Minterm>( rows.begin(), rows.end() ) );
}

bool ReversibleFunction::is_identity() const noexcept
{
  for ( std::size_t x = 0; x < perm_.size(); ++x )
  {
    if ( perm_[x] != x )
    {
      return false;
    }
  }
  return true;
}

ReversibleFunction ReversibleFunction::inverse() const
{
  std::vector<Minterm> inv( perm_.size() );
  for ( std::size_t x = 0; x < perm_.size(); ++x )
  {
    inv[perm_[x]] = static_cast<Minterm>( x );
  }
  return ReversibleFunction( n_, std::move( inv ) );
}

bool DifferenceVector::contains( Minterm x ) const
{
  return std::binary_search( members.begin(), members.end(), x );
}

DifferenceVector difference_vector( std::span<const Minterm> perm, unsigned n, unsigned var )
{
  check_var( var, n );
  return { var, n, kernels::difference_members( perm, var_mask( var, n ) ) };
}

DifferenceVector difference_vector( const ReversibleFunction& f, unsigned var )
{
  return difference_vector( f.images(), f.num_vars(), var );
}

std::vector<DifferenceVector> difference_vectors( const ReversibleFunction& f )
{
  std::vector<DifferenceVector> out;
  out.reserve( f.num_vars() );
  for ( unsigned i = 1; i <= f.num_vars(); ++i )
  {
    out.push_back( difference_vector( f, i ) );
  }
  return out;
}

void apply_gate_inputs_inplace( std::vector<Minterm>& perm, unsigned n, const Gate& g )
{
  if ( g.max_line() > n )
  {
    throw Error( ErrorCode::index_out_of_range, "gate " + to_string( g ) + " exceeds " + std::to_string( n ) + " lines" );
  }
  // g is an involution, so F(g(x)) is a swap of the rows x and g(x).
  const auto m = g.masks( n );
  for ( std::size_t x = 0; x < perm.size(); ++x )
  {
    const auto xm = static_cast<Minterm>( x );
    if ( m.fires( xm ) && ( xm & m.target ) == 0 )
    {
      std::swap( perm[x], perm[x ^ m.target] );
    }
  }
}

ReversibleFunction apply_gate_inputs( const ReversibleFunction& f, const Gate& g )
{
  std::vector<Minterm> perm( f.perm_ );
  apply_gate_inputs_inplace( perm, f.n_, g );
  return ReversibleFunction( f.n_, std::move( perm ) );
}

std::vector<Segment> segments( unsigned n )
{
  std::vector<Segment> out;
  const unsigned count = ( n + 1 ) / 2;
  for ( unsigned pos = 0; pos < count; ++pos )
  {
    const unsigned first = 2 * pos + 1;
    const unsigned last = std::min( first + 1, n );
    out.push_back( { count - pos, first, last } );
  }
  return out;
}

unsigned segment_position( unsigned var )
{
  return ( var - 1 ) / 2;
}

} // namespace mqm
