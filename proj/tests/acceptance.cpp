// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <mqm/cost.hpp>
#include <mqm/decomposition.hpp>
#include <mqm/error.hpp>
#include <mqm/io.hpp>
#include <mqm/mqm.hpp>
#include <mqm/postprocess.hpp>
#include <mqm/synthesis.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace mqm;

namespace
{

struct Outcome
{
  bool pass = false;
  std::string detail;
};

const std::vector<std::string> kCircuits{ "4mod5-bdd_287", "alu-bdd_288", "f2_232", "rd53_251", "dc1_220", "z4_268", "cm152a_212" };
const std::vector<std::uint64_t> kRevlibLevels{ 8, 10, 286, 264, 418, 870, 292 };
const std::vector<std::uint64_t> kProposedLevels{ 6, 8, 42, 44, 60, 18, 40 };

/// Both the library verifier and the reference simulator must agree.
bool realises( const Circuit& c, const ReversibleFunction& f )
{
  const auto sim = oracle::simulate( c );
  const bool by_oracle = std::equal( sim.begin(), sim.end(), f.images().begin(), f.images().end() );
  return by_oracle && static_cast<bool>( verify( c, f ) );
}

ReversibleFunction function_of( const std::vector<Minterm>& images, unsigned n )
{
  return ReversibleFunction::from_truth_table( images, n );
}

Outcome exhaustive_three()
{
  std::vector<Minterm> p( 8 );
  std::iota( p.begin(), p.end(), Minterm{ 0 } );
  std::size_t total = 0;
  std::size_t ok = 0;
  do
  {
    ++total;
    const auto f = function_of( p, 3 );
    ok += realises( synthesize( f ), f ) ? 1 : 0;
  } while ( std::next_permutation( p.begin(), p.end() ) );
  return { total == 40320 && ok == total, std::to_string( ok ) + "/" + std::to_string( total ) + " verified" };
}

Outcome random_four_to_eight()
{
  std::mt19937_64 rng( 2024 );
  std::ostringstream detail;
  bool pass = true;
  for ( unsigned n = 4; n <= 8; ++n )
  {
    std::size_t ok = 0;
    std::size_t limits = 0;
    for ( int t = 0; t < 1000; ++t )
    {
      const auto f = function_of( oracle::random_permutation( n, rng ), n );
      try
      {
        ok += realises( synthesize( f ), f ) ? 1 : 0;
      }
      catch ( const Error& e )
      {
        if ( e.code() != ErrorCode::limit_exceeded )
        {
          throw;
        }
        ++limits;
      }
    }
    pass = pass && ok == 1000 && limits == 0;
    detail << "n=" << n << " " << ok << "/1000 limits=" << limits << "; ";
  }
  return { pass, detail.str() };
}

/// Fits c_m over every control count seen, from the fourteen reference rows.
Outcome revlib_levels()
{
  std::vector<GateHistogram> rows;
  std::vector<long long> rhs;
  for ( std::size_t k = 0; k < kCircuits.size(); ++k )
  {
    rows.push_back( parse_histogram( read_file( fixtures::path( "revlib/" + kCircuits[k] + ".hist" ) ) ) );
    rhs.push_back( static_cast<long long>( kRevlibLevels[k] ) );
  }
  for ( std::size_t k = 0; k < kCircuits.size(); ++k )
  {
    rows.push_back( gate_histogram( load_circuit( fixtures::path( "circuits/" + kCircuits[k] + ".real" ) ) ) );
    rhs.push_back( static_cast<long long>( kProposedLevels[k] ) );
  }
  std::set<unsigned> seen;
  for ( const auto& h : rows )
  {
    for ( const auto& [m, count] : h )
    {
      if ( count > 0 )
      {
        seen.insert( m );
      }
    }
  }
  const std::vector<unsigned> cols( seen.begin(), seen.end() );
  std::vector<std::vector<long long>> a;
  for ( const auto& h : rows )
  {
    std::vector<long long> r;
    for ( const auto m : cols )
    {
      const auto it = h.find( m );
      r.push_back( it == h.end() ? 0 : static_cast<long long>( it->second ) );
    }
    a.push_back( r );
  }
  const auto fit = oracle::least_squares( a, rhs );
  if ( !fit )
  {
    return { false, "reference rows do not determine the costs" };
  }
  std::ostringstream table_text;
  std::ostringstream detail;
  for ( std::size_t i = 0; i < cols.size(); ++i )
  {
    const auto& c = ( *fit )[i];
    if ( c.den != 1 || c.num < 0 )
    {
      return { false, "fitted cost for m=" + std::to_string( cols[i] ) + " is not a nonnegative integer" };
    }
    table_text << "m=" << cols[i] << " cost=" << static_cast<long long>( c.num ) << "\n";
    detail << "c" << cols[i] << "=" << static_cast<long long>( c.num ) << " ";
  }
  // the fit must be exact on every row, not just the best in the squared sense
  for ( std::size_t r = 0; r < a.size(); ++r )
  {
    oracle::Rational s( 0LL );
    for ( std::size_t i = 0; i < cols.size(); ++i )
    {
      s = s + oracle::Rational( a[r][i] ) * ( *fit )[i];
    }
    if ( !( s == oracle::Rational( rhs[r] ) ) )
    {
      return { false, "fitted costs leave a residual on row " + std::to_string( r ) };
    }
  }
  const auto derived = CostTable::parse( table_text.str() );
  bool pass = true;
  detail << "| ";
  for ( std::size_t k = 0; k < kCircuits.size(); ++k )
  {
    const auto got = t_levels( rows[k], derived );
    const auto by_default = t_levels( rows[k] );
    pass = pass && got == kRevlibLevels[k] && by_default == kRevlibLevels[k];
    detail << kCircuits[k] << "=" << got << " ";
  }
  for ( const auto m : cols )
  {
    pass = pass && derived.at( m ) == CostTable{}.at( m );
  }
  return { pass, detail.str() };
}

Outcome proposed_levels()
{
  bool pass = true;
  std::ostringstream detail;
  for ( std::size_t k = 0; k < kCircuits.size(); ++k )
  {
    const auto c = load_circuit( fixtures::path( "circuits/" + kCircuits[k] + ".real" ) );
    const auto got = t_levels( c );
    pass = pass && got == kProposedLevels[k];
    detail << kCircuits[k] << "=" << got << " ";
  }
  return { pass, detail.str() };
}

Outcome alu_end_to_end()
{
  const auto f = fixtures::alu();
  const bool plain = realises( load_circuit( fixtures::path( "alu_bdd_288_x4.real" ) ), f );
  const bool negated = realises( load_circuit( fixtures::path( "alu_bdd_288_x4n.real" ) ), f );
  const auto c = synthesize( f );
  const bool ok = realises( c, f );
  const auto levels = t_levels( c );
  std::ostringstream detail;
  detail << "x4 variant " << ( plain ? "verifies" : "fails" ) << ", x4' variant " << ( negated ? "verifies" : "fails" )
         << "; synthesized " << c.size() << " gates, " << levels << " T-levels, " << ( ok ? "verified" : "NOT verified" );
  return { ( plain || negated ) && ok && levels <= 12, detail.str() };
}

Outcome worked_example()
{
  const auto f = fixtures::example4();
  WorkList w( f );
  evaluate_vector( w, 1 );
  std::vector<Gate> gates;
  for ( const auto& lg : w.log() )
  {
    gates.push_back( lg.gate );
  }
  // F composed with g_1..g_k on the input side: x -> F(g_1(...g_k(x)))
  std::vector<Minterm> composed( 16 );
  for ( Minterm x = 0; x < 16; ++x )
  {
    Minterm y = x;
    for ( auto it = gates.rbegin(); it != gates.rend(); ++it )
    {
      y = oracle::apply_gate( *it, y, 4 );
    }
    composed[x] = f( y );
  }
  const bool zeroed = oracle::difference_members( composed, 4, 1 ).empty();
  const std::vector<Gate> reference{ Gate( 1, { neg( 3 ) } ), Gate( 1, { pos( 4 ) } ), Gate( 2, { pos( 1 ) } ),
                                     Gate( 4, { pos( 3 ) } ), Gate( 3, { pos( 1 ), pos( 4 ) } ),
                                     Gate( 1, { pos( 2 ), neg( 3 ) } ), Gate( 3, { pos( 1 ), pos( 4 ) } ) };
  std::ostringstream detail;
  detail << gates.size() << " gates, v_1 " << ( zeroed ? "zeroed" : "NOT zeroed" ) << ", sequence "
         << ( gates == reference ? "equals" : "differs from" ) << " the 7-gate reference:";
  for ( const auto& g : gates )
  {
    detail << " " << to_string( g );
  }
  return { zeroed, detail.str() };
}

Outcome esop_parity()
{
  std::mt19937_64 rng( 7 );
  std::size_t ok = 0;
  const std::size_t total = 1000;
  for ( std::size_t t = 0; t < total; ++t )
  {
    const unsigned n = 2 + static_cast<unsigned>( t % 7 );
    const unsigned main = 1 + static_cast<unsigned>( rng() % n );
    const auto perm = oracle::random_permutation( n, rng );
    const auto on = oracle::difference_members( perm, n, main );
    std::vector<Minterm> dc;
    if ( t % 2 == 1 )
    {
      for ( Minterm x = 0; x < perm.size(); ++x )
      {
        if ( !std::binary_search( on.begin(), on.end(), x ) && rng() % 4 == 0 )
        {
          dc.push_back( x );
        }
      }
    }
    std::vector<Minterm> care_on = on;
    care_on.insert( care_on.end(), dc.begin(), dc.end() );
    std::sort( care_on.begin(), care_on.end() );
    const auto sel = select_cover( prime_implicants( care_on, n ), on, dc );
    bool good = true;
    for ( Minterm x = 0; x < perm.size() && good; ++x )
    {
      if ( std::binary_search( dc.begin(), dc.end(), x ) )
      {
        continue;
      }
      good = oracle::xor_parity( sel.cubes, x ) == std::binary_search( on.begin(), on.end(), x );
    }
    ok += good ? 1 : 0;
  }
  return { ok == total, std::to_string( ok ) + "/" + std::to_string( total ) + " covers have the right parity" };
}

Outcome prime_implicant_oracle()
{
  // brute force: every literal string as a 16-bit minterm mask, maximal masks inside the ON set
  const auto strings = oracle::all_cubes( 4 );
  std::vector<std::uint32_t> masks;
  for ( const auto& s : strings )
  {
    std::uint32_t m = 0;
    for ( Minterm x = 0; x < 16; ++x )
    {
      m |= oracle::cube_contains( s, x ) ? ( 1u << x ) : 0u;
    }
    masks.push_back( m );
  }
  std::size_t ok = 0;
  for ( std::uint32_t fn = 0; fn < 65536; ++fn )
  {
    std::vector<std::size_t> inside;
    for ( std::size_t k = 0; k < masks.size(); ++k )
    {
      if ( ( masks[k] & ~fn ) == 0 )
      {
        inside.push_back( k );
      }
    }
    std::set<std::string> expected;
    for ( const auto a : inside )
    {
      const bool maximal = std::none_of( inside.begin(), inside.end(), [&]( std::size_t b ) {
        return masks[b] != masks[a] && ( masks[a] & ~masks[b] ) == 0;
      } );
      if ( maximal )
      {
        expected.insert( strings[a] );
      }
    }
    std::vector<Minterm> members;
    for ( Minterm x = 0; x < 16; ++x )
    {
      if ( fn >> x & 1u )
      {
        members.push_back( x );
      }
    }
    std::set<std::string> got;
    for ( const auto& c : prime_implicants( members, 4 ) )
    {
      got.insert( oracle::literals( c ) );
    }
    ok += got == expected ? 1 : 0;
  }
  return { ok == 65536, std::to_string( ok ) + "/65536 functions match" };
}

Cube random_term( unsigned n, const std::vector<unsigned>& free, std::mt19937_64& rng )
{
  std::string s;
  for ( unsigned v = 1; v <= n; ++v )
  {
    s += std::find( free.begin(), free.end(), v ) != free.end() ? 'X' : "01XX"[rng() % 4];
  }
  return Cube::parse( s );
}

std::vector<Gate> gates_of( const EsopLine& line )
{
  std::vector<Gate> out;
  for ( const auto& c : line.terms )
  {
    out.emplace_back( line.target, c.controls() );
  }
  return out;
}

bool same_permutation( const std::vector<Gate>& a, const std::vector<Gate>& b, unsigned n )
{
  return to_permutation( Circuit( n, a ) ) == to_permutation( Circuit( n, b ) ) &&
         oracle::simulate( a, n ) == oracle::simulate( b, n );
}

Outcome postprocess_equivalence()
{
  std::mt19937_64 rng( 9 );
  std::size_t within = 0;
  std::size_t across = 0;
  std::size_t ok = 0;
  std::size_t attempts = 0;
  while ( within + across < 500 && attempts < 200000 )
  {
    ++attempts;
    const unsigned n = 3 + static_cast<unsigned>( rng() % 4 );
    const unsigned i = 1 + static_cast<unsigned>( rng() % n );
    if ( rng() % 2 == 0 )
    {
      EsopLine line{ i, {} };
      const int terms = 2 + static_cast<int>( rng() % 3 );
      for ( int k = 0; k < terms; ++k )
      {
        line.terms.push_back( random_term( n, { i }, rng ) );
      }
      const auto r = factor_within( line );
      if ( r.rewrites == 0 )
      {
        continue;
      }
      ++within;
      ok += same_permutation( gates_of( line ), r.gates, n ) ? 1 : 0;
    }
    else
    {
      const unsigned j = 1 + ( i + static_cast<unsigned>( rng() % ( n - 1 ) ) ) % n;
      const EsopLine li{ i, { random_term( n, { i, j }, rng ) } };
      const EsopLine lj{ j, { random_term( n, { i, j }, rng ) } };
      try
      {
        const auto r = factor_across( li, lj );
        ++across;
        auto before = gates_of( li );
        const auto more = gates_of( lj );
        before.insert( before.end(), more.begin(), more.end() );
        ok += same_permutation( before, r.gates, n ) ? 1 : 0;
      }
      catch ( const Error& e )
      {
        if ( e.code() != ErrorCode::template_inapplicable )
        {
          throw;
        }
      }
    }
  }
  const auto total = within + across;
  return { total == 500 && ok == total,
           std::to_string( ok ) + "/" + std::to_string( total ) + " rewrites preserve the permutation (" + std::to_string( within ) +
               " within a line, " + std::to_string( across ) + " across lines)" };
}

bool indicator_matches( const std::vector<Minterm>& members, unsigned n, unsigned mid )
{
  const auto split = find_patterns( members, n, mid );
  const auto s = complement_shortcut( split );
  if ( !s )
  {
    return false;
  }
  const auto ind = shortcut_indicator( *s, n, mid );
  const unsigned sv = split.suffix_vars();
  for ( Minterm x = 0; x < ( Minterm{ 1 } << n ); ++x )
  {
    // full expression: OR over patterns of group_k(prefix) and subfunction_k(suffix)
    const Minterm g = x >> sv;
    const Minterm h = x & ( ( Minterm{ 1 } << sv ) - 1 );
    bool full = false;
    for ( std::size_t k = 0; k < split.num_patterns(); ++k )
    {
      full = full || ( std::binary_search( split.groups[k].begin(), split.groups[k].end(), g ) &&
                       std::binary_search( split.subfunctions[k].begin(), split.subfunctions[k].end(), h ) );
    }
    const bool member = std::binary_search( members.begin(), members.end(), x );
    if ( static_cast<bool>( ind[x] ) != full || full != member )
    {
      return false;
    }
  }
  return true;
}

std::vector<Minterm> random_subset( Minterm size, std::mt19937_64& rng )
{
  while ( true )
  {
    std::vector<Minterm> out;
    for ( Minterm x = 0; x < size; ++x )
    {
      if ( rng() % 2 )
      {
        out.push_back( x );
      }
    }
    if ( !out.empty() && out.size() < size )
    {
      return out;
    }
  }
}

std::vector<Minterm> complement_of( const std::vector<Minterm>& set, Minterm size )
{
  std::vector<Minterm> out;
  for ( Minterm x = 0; x < size; ++x )
  {
    if ( !std::binary_search( set.begin(), set.end(), x ) )
    {
      out.push_back( x );
    }
  }
  return out;
}

Outcome decomposition_fidelity()
{
  const bool v6 = indicator_matches( fixtures::members( "alu_v6.txt" ), 7, 5 );
  const bool v7 = indicator_matches( fixtures::members( "alu_v7.txt" ), 7, 5 );
  std::mt19937_64 rng( 10 );
  std::size_t ok = 0;
  for ( int t = 0; t < 200; ++t )
  {
    const unsigned n = 4 + static_cast<unsigned>( t % 9 );
    const unsigned mid = 2 + static_cast<unsigned>( rng() % ( n - 2 ) );
    const unsigned pv = mid - 1;
    const unsigned sv = n - pv;
    const auto g1 = random_subset( Minterm{ 1 } << pv, rng );
    const auto h2 = random_subset( Minterm{ 1 } << sv, rng );
    const auto g2 = complement_of( g1, Minterm{ 1 } << pv );
    const auto h1 = complement_of( h2, Minterm{ 1 } << sv );
    std::vector<Minterm> members;
    for ( const auto g : g1 )
    {
      for ( const auto h : h1 )
      {
        members.push_back( ( g << sv ) | h );
      }
    }
    for ( const auto g : g2 )
    {
      for ( const auto h : h2 )
      {
        members.push_back( ( g << sv ) | h );
      }
    }
    std::sort( members.begin(), members.end() );
    ok += indicator_matches( members, n, mid ) ? 1 : 0;
  }
  return { v6 && v7 && ok == 200, std::string( "alu V_6 " ) + ( v6 ? "matches" : "differs" ) + ", V_7 " + ( v7 ? "matches" : "differs" ) +
                                      ", random " + std::to_string( ok ) + "/200" };
}

} // namespace

int main()
{
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      { "exhaustive n=3 synthesis verifies", exhaustive_three },
      { "random n=4..8 synthesis verifies", random_four_to_eight },
      { "reference gate histograms cost 8 10 286 264 418 870 292", revlib_levels },
      { "bundled circuits cost 6 8 42 44 60 18 40", proposed_levels },
      { "alu-bdd_288 end to end", alu_end_to_end },
      { "worked example clears v_1", worked_example },
      { "ESOP cover parity", esop_parity },
      { "prime implicants match brute force on all 4-variable functions", prime_implicant_oracle },
      { "rewrites preserve the permutation", postprocess_equivalence },
      { "complement shortcut equals the full expression", decomposition_fidelity },
  };
  int failures = 0;
  for ( std::size_t k = 0; k < criteria.size(); ++k )
  {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try
    {
      o = criteria[k].second();
    }
    catch ( const std::exception& e )
    {
      o = { false, std::string( "exception: " ) + e.what() };
    }
    const double secs = std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
    std::printf( "criterion %zu %s: %s (%s) [%.1f s]\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first, o.detail.c_str(), secs );
    std::fflush( stdout );
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
