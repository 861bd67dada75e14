#include <doctest.h>

#include <random>

#include <mqm/cube.hpp>

#include "oracles.hpp"

using namespace mqm;

namespace
{

Cube random_cube( unsigned n, std::mt19937_64& rng )
{
  std::string s;
  for ( unsigned v = 0; v < n; ++v )
  {
    s += "01X"[rng() % 3];
  }
  return Cube::parse( s );
}

} // namespace

TEST_SUITE( "cube" )
{
  TEST_CASE( "parse, print and membership" )
  {
    const auto c = Cube::parse( "0X,11" );
    CHECK( c.num_vars() == 4 );
    CHECK( c.to_string() == "0X11" );
    CHECK( c.to_string( true ) == "0X,11" );
    CHECK( c.num_literals() == 3 );
    CHECK( c.size() == 2 );
    CHECK( c.contains( 0b0011 ) );
    CHECK( c.contains( 0b0111 ) );
    CHECK_FALSE( c.contains( 0b1011 ) );
    CHECK( c.minterms() == std::vector<Minterm>{ 0b0011, 0b0111 } );
    CHECK( Cube::parse( "x-1" ) == Cube::parse( "XX1" ) );
    CHECK( Cube::parse( "XX00" ).direction() != Cube::parse( "00XX" ).direction() );
    CHECK( Cube::parse( "X100" ).direction() == Cube::parse( "0X10" ).direction() );
  }

  TEST_CASE( "controls read literals as gate controls" )
  {
    const auto ctl = Cube::parse( "X0X1" ).controls();
    REQUIRE( ctl.size() == 2 );
    CHECK( ctl[0] == neg( 2 ) );
    CHECK( ctl[1] == pos( 4 ) );
  }

  TEST_CASE( "merge needs one differing literal under the same care set" )
  {
    CHECK( merge( Cube::parse( "0011" ), Cube::parse( "0111" ) ) == Cube::parse( "0X11" ) );
    CHECK( merge( Cube::parse( "XX00" ), Cube::parse( "XX01" ) ) == Cube::parse( "XX0X" ) );
    CHECK_FALSE( merge( Cube::parse( "000X" ), Cube::parse( "110X" ) ).has_value() );
    CHECK_FALSE( merge( Cube::parse( "0X" ), Cube::parse( "01" ) ).has_value() );
    const auto m = merge( Cube::minterm( 1, 2, -1 ), Cube::minterm( 3, 2, -1 ) );
    REQUIRE( m );
    CHECK( m->score() == -2 );
  }

  TEST_CASE( "exorlink preserves the XOR function" )
  {
    const auto a = Cube::parse( "XX01" );
    const auto b = Cube::parse( "1X11" );
    const auto links = exorlink( a, b );
    REQUIRE( links.size() == 2 );
    CHECK( links[0].first == Cube::parse( "XXX1" ) );
    CHECK( links[0].second == Cube::parse( "0X11" ) );
    CHECK( exorlink( a, a ).empty() );

    std::mt19937_64 rng( 4 );
    for ( int t = 0; t < 2000; ++t )
    {
      const unsigned n = 2 + t % 5;
      const auto x = random_cube( n, rng );
      const auto y = random_cube( n, rng );
      for ( const auto& [p, q] : exorlink( x, y ) )
      {
        for ( Minterm m = 0; m < ( 1u << n ); ++m )
        {
          CHECK( oracle::xor_parity( { x, y }, m ) == oracle::xor_parity( { p, q }, m ) );
        }
      }
      if ( const auto z = xor_merge( x, y ) )
      {
        for ( Minterm m = 0; m < ( 1u << n ); ++m )
        {
          CHECK( oracle::xor_parity( { x, y }, m ) == oracle::xor_parity( { *z }, m ) );
        }
      }
    }
  }

  TEST_CASE( "containment, intersection and distance" )
  {
    std::mt19937_64 rng( 9 );
    for ( int t = 0; t < 1000; ++t )
    {
      const unsigned n = 1 + t % 5;
      const auto a = random_cube( n, rng );
      const auto b = random_cube( n, rng );
      const auto la = oracle::literals( a );
      const auto lb = oracle::literals( b );
      bool inside = true;
      bool meet = false;
      for ( Minterm m = 0; m < ( 1u << n ); ++m )
      {
        const bool ia = oracle::cube_contains( la, m );
        const bool ib = oracle::cube_contains( lb, m );
        inside = inside && ( !ib || ia );
        meet = meet || ( ia && ib );
        CHECK( a.contains( m ) == ia );
      }
      CHECK( a.contains( b ) == inside );
      CHECK( a.intersects( b ) == meet );
      CHECK( a.intersection( b ).has_value() == meet );
      unsigned d = 0;
      for ( unsigned v = 0; v < n; ++v )
      {
        d += la[v] != lb[v] ? 1 : 0;
      }
      CHECK( distance( a, b ) == d );
      CHECK( differing_vars( a, b ).size() == d );
    }
  }

  TEST_CASE( "lift and project are inverse on the free variable" )
  {
    for ( Minterm x = 0; x < 32; ++x )
    {
      for ( unsigned v = 1; v <= 5; ++v )
      {
        const auto p = project_out( x, v, 5 );
        CHECK( insert_bit( p, v, 5, oracle::bit( x, v, 5 ) ) == x );
      }
    }
    const auto l = lift( Cube::parse( "01X" ), 2 );
    CHECK( l.to_string() == "0X1X" );
  }

  TEST_CASE( "indicator matches parity" )
  {
    const std::vector<Cube> cubes{ Cube::parse( "XX0" ), Cube::parse( "X00" ), Cube::parse( "111" ) };
    const auto ind = xor_indicator( cubes, 3 );
    for ( Minterm m = 0; m < 8; ++m )
    {
      CHECK( static_cast<bool>( ind[m] ) == oracle::xor_parity( cubes, m ) );
      CHECK( xor_evaluate( cubes, m ) == oracle::xor_parity( cubes, m ) );
    }
  }
}
