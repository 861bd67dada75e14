#include "mqm/kernels.hpp"

#include <algorithm>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mqm::kernels
{

namespace
{

using Index = std::int64_t;

} // namespace

std::vector<Minterm> simulate_serial( std::span<const GateMasks> gates, unsigned n )
{
  std::vector<Minterm> out( std::size_t{ 1 } << n );
  for ( std::size_t x = 0; x < out.size(); ++x )
  {
    auto y = static_cast<Minterm>( x );
    for ( const auto& g : gates )
    {
      y = g.apply( y );
    }
    out[x] = y;
  }
  return out;
}

std::vector<Minterm> simulate_parallel( std::span<const GateMasks> gates, unsigned n )
{
  std::vector<Minterm> out( std::size_t{ 1 } << n );
  const auto size = static_cast<Index>( out.size() );
  const GateMasks* g = gates.data();
  const auto count = gates.size();
#pragma omp parallel for schedule( static )
  for ( Index x = 0; x < size; ++x )
  {
    auto y = static_cast<Minterm>( x );
    for ( std::size_t k = 0; k < count; ++k )
    {
      y = g[k].apply( y );
    }
    out[static_cast<std::size_t>( x )] = y;
  }
  return out;
}

std::vector<Minterm> simulate( std::span<const GateMasks> gates, unsigned n )
{
  return ( std::size_t{ 1 } << n ) >= kParallelThreshold ? simulate_parallel( gates, n ) : simulate_serial( gates, n );
}

std::vector<Minterm> difference_members_serial( std::span<const Minterm> perm, Minterm mask )
{
  std::vector<Minterm> out;
  for ( std::size_t x = 0; x < perm.size(); ++x )
  {
    if ( ( ( x ^ perm[x] ) & mask ) != 0 )
    {
      out.push_back( static_cast<Minterm>( x ) );
    }
  }
  return out;
}

std::vector<Minterm> difference_members_parallel( std::span<const Minterm> perm, Minterm mask )
{
#ifdef _OPENMP
  // Each thread collects a contiguous chunk; chunks are joined in order.
  const int threads = omp_get_max_threads();
  std::vector<std::vector<Minterm>> parts( static_cast<std::size_t>( threads ) );
  const auto size = static_cast<Index>( perm.size() );
#pragma omp parallel num_threads( threads )
  {
    const int t = omp_get_thread_num();
    const Index chunk = ( size + threads - 1 ) / threads;
    const Index lo = std::min( size, chunk * t );
    const Index hi = std::min( size, lo + chunk );
    auto& part = parts[static_cast<std::size_t>( t )];
    for ( Index x = lo; x < hi; ++x )
    {
      if ( ( ( static_cast<Minterm>( x ) ^ perm[static_cast<std::size_t>( x )] ) & mask ) != 0 )
      {
        part.push_back( static_cast<Minterm>( x ) );
      }
    }
  }
  std::vector<Minterm> out;
  for ( const auto& p : parts )
  {
    out.insert( out.end(), p.begin(), p.end() );
  }
  return out;
#else
  return difference_members_serial( perm, mask );
#endif
}

std::vector<Minterm> difference_members( std::span<const Minterm> perm, Minterm mask )
{
  return perm.size() >= kParallelThreshold ? difference_members_parallel( perm, mask ) : difference_members_serial( perm, mask );
}

std::optional<Minterm> first_mismatch_serial( std::span<const Minterm> a, std::span<const Minterm> b )
{
  const auto size = std::min( a.size(), b.size() );
  for ( std::size_t x = 0; x < size; ++x )
  {
    if ( a[x] != b[x] )
    {
      return static_cast<Minterm>( x );
    }
  }
  if ( a.size() != b.size() )
  {
    return static_cast<Minterm>( size );
  }
  return std::nullopt;
}

std::optional<Minterm> first_mismatch_parallel( std::span<const Minterm> a, std::span<const Minterm> b )
{
  const auto size = static_cast<Index>( std::min( a.size(), b.size() ) );
  Index first = std::numeric_limits<Index>::max();
#pragma omp parallel for reduction( min : first ) schedule( static )
  for ( Index x = 0; x < size; ++x )
  {
    if ( a[static_cast<std::size_t>( x )] != b[static_cast<std::size_t>( x )] && x < first )
    {
      first = x;
    }
  }
  if ( first != std::numeric_limits<Index>::max() )
  {
    return static_cast<Minterm>( first );
  }
  if ( a.size() != b.size() )
  {
    return static_cast<Minterm>( size );
  }
  return std::nullopt;
}

std::optional<Minterm> first_mismatch( std::span<const Minterm> a, std::span<const Minterm> b )
{
  return a.size() >= kParallelThreshold ? first_mismatch_parallel( a, b ) : first_mismatch_serial( a, b );
}

std::vector<std::size_t> difference_counts_serial( std::span<const Minterm> perm, unsigned n )
{
  std::vector<std::size_t> counts( n, 0 );
  for ( std::size_t x = 0; x < perm.size(); ++x )
  {
    auto d = static_cast<Minterm>( x ) ^ perm[x];
    while ( d != 0 )
    {
      const auto bit = static_cast<unsigned>( __builtin_ctz( d ) );
      ++counts[n - 1 - bit];
      d &= d - 1;
    }
  }
  return counts;
}

std::vector<std::size_t> difference_counts_parallel( std::span<const Minterm> perm, unsigned n )
{
  // Per-bit popcounts reduce independently; 20 lines at most.
  std::vector<std::size_t> counts( n, 0 );
  const auto size = static_cast<Index>( perm.size() );
  for ( unsigned bit = 0; bit < n; ++bit )
  {
    const Minterm mask = Minterm{ 1 } << bit;
    std::size_t c = 0;
#pragma omp parallel for reduction( + : c ) schedule( static )
    for ( Index x = 0; x < size; ++x )
    {
      c += ( ( static_cast<Minterm>( x ) ^ perm[static_cast<std::size_t>( x )] ) & mask ) != 0 ? 1 : 0;
    }
    counts[n - 1 - bit] = c;
  }
  return counts;
}

std::vector<std::size_t> difference_counts( std::span<const Minterm> perm, unsigned n )
{
  return perm.size() >= kParallelThreshold ? difference_counts_parallel( perm, n ) : difference_counts_serial( perm, n );
}

} // namespace mqm::kernels
