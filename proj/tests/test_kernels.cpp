#include <doctest.h>

#include <random>

#include <mqm/gate.hpp>
#include <mqm/kernels.hpp>

#include "oracles.hpp"

using namespace mqm;

TEST_SUITE( "kernels" )
{
  TEST_CASE( "serial and parallel kernels agree above the threshold" )
  {
    std::mt19937_64 rng( 17 );
    for ( const unsigned n : { 3u, 10u, 15u, 16u } )
    {
      const auto p = oracle::random_permutation( n, rng );
      std::vector<GateMasks> masks;
      for ( unsigned k = 0; k < 40; ++k )
      {
        const unsigned t = 1 + k % n;
        const unsigned c = 1 + ( k * 7 + 3 ) % n;
        masks.push_back( c == t ? Gate( t ).masks( n ) : Gate( t, { k % 2 ? pos( c ) : neg( c ) } ).masks( n ) );
      }
      CHECK( kernels::simulate_serial( masks, n ) == kernels::simulate_parallel( masks, n ) );
      CHECK( kernels::simulate( masks, n ) == kernels::simulate_serial( masks, n ) );
      for ( unsigned v = 1; v <= n; ++v )
      {
        const auto mask = var_mask( v, n );
        CHECK( kernels::difference_members_serial( p, mask ) == kernels::difference_members_parallel( p, mask ) );
        CHECK( kernels::difference_members_serial( p, mask ) == oracle::difference_members( p, n, v ) );
      }
      CHECK( kernels::difference_counts_serial( p, n ) == kernels::difference_counts_parallel( p, n ) );

      auto q = p;
      CHECK_FALSE( kernels::first_mismatch_serial( p, q ).has_value() );
      CHECK_FALSE( kernels::first_mismatch_parallel( p, q ).has_value() );
      q[q.size() / 2] ^= 1;
      q[q.size() - 1] ^= 1;
      CHECK( kernels::first_mismatch_serial( p, q ) == kernels::first_mismatch_parallel( p, q ) );
      CHECK( *kernels::first_mismatch( p, q ) == q.size() / 2 );
    }
  }
}
