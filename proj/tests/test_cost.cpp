#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <random>

#include <mqm/cost.hpp>
#include <mqm/error.hpp>
#include <mqm/io.hpp>

#include "fixtures.hpp"

using namespace mqm;

TEST_SUITE( "cost" )
{
  TEST_CASE( "histograms of listed circuits" )
  {
    const auto c = load_circuit( fixtures::path( "circuits/4mod5-bdd_287.real" ) );
    CHECK( gate_histogram( c ) == GateHistogram{ { 1, 4 }, { 2, 3 } } );
    const auto f2 = load_circuit( fixtures::path( "circuits/f2_232.real" ) );
    CHECK( gate_histogram( f2 ) == GateHistogram{ { 0, 2 }, { 1, 10 }, { 2, 21 } } );
    CHECK( gate_histogram( Circuit( 3 ) ).empty() );
  }

  TEST_CASE( "t-levels of the table rows" )
  {
    CHECK( t_levels( GateHistogram{ { 2, 11 }, { 3, 9 }, { 4, 9 } } ) == 418 );
    CHECK( t_levels( GateHistogram{ { 2, 7 }, { 3, 10 }, { 4, 6 }, { 5, 8 } } ) == 870 );
    CHECK( t_levels( load_circuit( fixtures::path( "circuits/alu-bdd_288.real" ) ) ) == 8 );
    try
    {
      t_levels( GateHistogram{ { 6, 1 } } );
      FAIL( "expected unknown_cost" );
    }
    catch ( const Error& e )
    {
      CHECK( e.code() == ErrorCode::unknown_cost );
    }
  }

  TEST_CASE( "report" )
  {
    const auto r = report( Circuit( 4 ) );
    CHECK( r.lines == 4 );
    CHECK( r.gates == 0 );
    CHECK( r.histogram.empty() );
    CHECK( r.t_levels == 0 );

    const Circuit big( 8, { Gate( 8, { pos( 1 ), pos( 2 ), pos( 3 ), pos( 4 ), pos( 5 ), pos( 6 ) } ) } );
    CHECK_FALSE( report( big ).t_levels.has_value() );

    std::mt19937_64 rng( 2 );
    Circuit c( 6 );
    GateHistogram manual;
    std::uint64_t expected = 0;
    const std::uint64_t costs[] = { 0, 0, 2, 12, 32, 68 };
    for ( int k = 0; k < 50; ++k )
    {
      const unsigned m = rng() % 6;
      std::vector<Control> ctl;
      for ( unsigned l = 2; l < 2 + m; ++l )
      {
        ctl.push_back( rng() % 2 ? pos( l ) : neg( l ) );
      }
      c.push_back( Gate( 1, ctl ) );
      ++manual[m];
      expected += costs[m];
    }
    const auto rr = report( c );
    CHECK( rr.histogram == manual );
    CHECK( rr.t_levels == expected );
    CHECK( rr.gates == 50 );
  }

  TEST_CASE( "additivity under concatenation" )
  {
    const auto a = load_circuit( fixtures::path( "circuits/f2_232.real" ) );
    const auto b = load_circuit( fixtures::path( "circuits/rd53_251.real" ) );
    Circuit ab = a;
    ab.append( b.gates() );
    CHECK( t_levels( ab ) == t_levels( a ) + t_levels( b ) );
  }

  TEST_CASE( "cost table overrides" )
  {
    const auto t = CostTable::parse( "# extended\nm=6 cost=140\nm=2 cost=2\n" );
    CHECK( t.at( 6 ) == 140 );
    CHECK( t.at( 3 ) == 12 );
    CHECK_THROWS_AS( CostTable::parse( "m=3 cost=1\n" ), Error );
    CHECK_THROWS_AS( CostTable::parse( "m=3 price=1\n" ), Error );
    auto u = CostTable{};
    CHECK_THROWS_AS( u.set( 2, 100 ), Error );
    CHECK( u.at( 2 ) == 2 );
    CHECK_THROWS_AS( u.at( 9 ), Error );

    const auto file = std::filesystem::temp_directory_path() / "mqm_cost_table_test.txt";
    write_file( file.string(), "m=6 cost=150\n" );
    ::setenv( "MQM_COST_TABLE", file.c_str(), 1 );
    CHECK( CostTable::from_environment().at( 6 ) == 150 );
    ::unsetenv( "MQM_COST_TABLE" );
    CHECK_FALSE( CostTable::from_environment().find( 6 ).has_value() );
    std::filesystem::remove( file );
  }

  TEST_CASE( "histogram text round trip" )
  {
    const GateHistogram h{ { 2, 11 }, { 3, 9 }, { 4, 9 } };
    CHECK( parse_histogram( write_histogram( h ) ) == h );
    CHECK( t_levels( parse_histogram( read_file( fixtures::path( "revlib/dc1_220.hist" ) ) ) ) == 418 );
  }

  TEST_CASE( "heuristic weight is increasing" )
  {
    for ( unsigned m = 0; m < 12; ++m )
    {
      CHECK( heuristic_weight( m ) < heuristic_weight( m + 1 ) );
    }
  }
}
