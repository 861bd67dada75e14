#include "mqm/mqm.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "mqm/cost.hpp"
#include "mqm/error.hpp"

namespace mqm
{

namespace
{

/// Variable paired with `var` in its segment; 0 for the trailing single.
unsigned segment_partner( unsigned var, unsigned n ) noexcept
{
  const unsigned other = var % 2 == 1 ? var + 1 : var - 1;
  return other <= n ? other : 0;
}

bool segment_free_besides( const Cube& c, unsigned var )
{
  const unsigned other = segment_partner( var, c.num_vars() );
  return other == 0 || c.at( other ) == 'X';
}

/// Some segment other than `excluded` (a position) is XX in c.
bool has_free_segment( const Cube& c, unsigned excluded )
{
  for ( const auto& s : segments( c.num_vars() ) )
  {
    if ( segment_position( s.first ) == excluded )
    {
      continue;
    }
    bool free = true;
    for ( unsigned v = s.first; v <= s.last; ++v )
    {
      free = free && c.at( v ) == 'X';
    }
    if ( free )
    {
      return true;
    }
  }
  return false;
}

/// Cube with only the positions in `mask` kept.
Cube restrict_to( const Cube& c, Minterm mask )
{
  return Cube( c.num_vars(), c.care() & mask, c.value() & mask );
}

} // namespace

std::vector<ScoredMinterm> score_minterms( const DifferenceVector& v )
{
  std::vector<ScoredMinterm> out;
  const auto flip = var_mask( v.main, v.n );
  for ( const auto x : v.members )
  {
    const auto partner = x ^ flip;
    if ( v.contains( partner ) )
    {
      if ( x < partner )
      {
        out.push_back( { x, -1 } );
      }
    }
    else
    {
      out.push_back( { x, 0 } );
    }
  }
  return out;
}

MergeResult merge_pass( std::span<const Cube> cubes )
{
  MergeResult result;
  result.consumed.assign( cubes.size(), false );
  // Index by (care, value) so partners are found by flipping one cared bit.
  std::unordered_map<Cube, std::size_t, CubeHash> index;
  for ( std::size_t k = 0; k < cubes.size(); ++k )
  {
    index.emplace( cubes[k], k );
  }
  std::unordered_set<Cube, CubeHash> produced;
  for ( std::size_t k = 0; k < cubes.size(); ++k )
  {
    const auto& a = cubes[k];
    auto care = a.care();
    while ( care != 0 )
    {
      const Minterm bit = care & ( ~care + 1 );
      care &= care - 1;
      const Cube partner( a.num_vars(), a.care(), a.value() ^ bit );
      const auto it = index.find( partner );
      if ( it == index.end() )
      {
        continue;
      }
      result.consumed[k] = true;
      result.consumed[it->second] = true;
      if ( ( a.value() & bit ) != 0 )
      {
        continue;  // the pair is produced from the 0 side
      }
      auto m = merge( a, cubes[it->second] );
      if ( m && produced.insert( *m ).second )
      {
        result.merged.push_back( *m );
      }
    }
  }
  return result;
}

std::vector<Cube> prime_implicants( std::span<const Cube> seeds )
{
  std::vector<Cube> current;
  {
    std::unordered_set<Cube, CubeHash> seen;
    for ( const auto& s : seeds )
    {
      if ( seen.insert( s ).second )
      {
        current.push_back( s );
      }
    }
  }
  std::vector<Cube> primes;
  while ( !current.empty() )
  {
    auto pass = merge_pass( current );
    for ( std::size_t k = 0; k < current.size(); ++k )
    {
      if ( !pass.consumed[k] )
      {
        primes.push_back( current[k] );
      }
    }
    current = std::move( pass.merged );
  }
  std::sort( primes.begin(), primes.end(), lexicographic_less );
  return primes;
}

std::vector<Cube> prime_implicants( std::span<const Minterm> members, unsigned n )
{
  std::vector<Cube> seeds;
  seeds.reserve( members.size() );
  for ( const auto x : members )
  {
    seeds.push_back( Cube::minterm( x, n, -1 ) );
  }
  return prime_implicants( seeds );
}

CoverSelection select_cover( std::span<const Cube> pis, std::span<const Minterm> members, std::span<const Minterm> dont_cares )
{
  CoverSelection result;
  if ( members.empty() )
  {
    return result;
  }
  if ( pis.empty() )
  {
    throw Error( ErrorCode::bad_length, "no implicants to cover " + std::to_string( members.size() ) + " members" );
  }
  const unsigned n = pis.front().num_vars();
  enum : std::uint8_t
  {
    off = 0,
    on = 1,
    dc = 2
  };
  std::vector<std::uint8_t> kind( std::size_t{ 1 } << n, off );
  for ( const auto x : dont_cares )
  {
    kind[x] = dc;
  }
  for ( const auto x : members )
  {
    kind[x] = on;
  }

  // Candidates must stay inside members and don't-cares.
  struct Candidate
  {
    Cube cube;
    std::vector<Minterm> on_cells;
    bool essential = false;
    bool chosen = false;
  };
  std::vector<Candidate> cands;
  std::vector<std::uint32_t> cover_count( kind.size(), 0 );
  for ( const auto& pi : pis )
  {
    Candidate c{ pi, {}, false, false };
    bool inside = true;
    for ( const auto x : pi.minterms() )
    {
      if ( kind[x] == off )
      {
        inside = false;
        break;
      }
      if ( kind[x] == on )
      {
        c.on_cells.push_back( x );
      }
    }
    if ( inside && !c.on_cells.empty() )
    {
      for ( const auto x : c.on_cells )
      {
        ++cover_count[x];
      }
      cands.push_back( std::move( c ) );
    }
  }
  for ( auto& c : cands )
  {
    c.essential = std::any_of( c.on_cells.begin(), c.on_cells.end(), [&]( Minterm x ) { return cover_count[x] == 1; } );
  }

  std::vector<std::uint8_t> residual( kind.size(), 0 );
  for ( const auto x : members )
  {
    residual[x] = 1;
  }
  std::optional<unsigned> last_direction;
  while ( true )
  {
    Candidate* best = nullptr;
    long best_gain = 0;
    auto better = [&]( const Candidate& a, long gain ) {
      if ( best == nullptr || gain != best_gain )
      {
        return best == nullptr || gain > best_gain;
      }
      if ( last_direction )
      {
        const bool aa = a.cube.direction() == *last_direction;
        const bool ba = best->cube.direction() == *last_direction;
        if ( aa != ba )
        {
          return aa;
        }
      }
      if ( a.essential != best->essential )
      {
        return a.essential;
      }
      if ( a.cube.score() != best->cube.score() )
      {
        return a.cube.score() < best->cube.score();
      }
      return lexicographic_less( a.cube, best->cube );
    };
    for ( auto& c : cands )
    {
      if ( c.chosen )
      {
        continue;
      }
      long gain = 0;
      for ( const auto x : c.on_cells )
      {
        gain += residual[x] != 0 ? 1 : -1;
      }
      if ( gain > 0 && better( c, gain ) )
      {
        best = &c;
        best_gain = gain;
      }
    }
    if ( best == nullptr )
    {
      break;
    }
    best->chosen = true;
    last_direction = best->cube.direction();
    for ( const auto x : best->on_cells )
    {
      residual[x] ^= 1u;
    }
    result.cubes.push_back( best->cube );
  }
  for ( const auto x : members )
  {
    if ( residual[x] != 0 )
    {
      result.cubes.push_back( Cube::minterm( x, n, -1 ) );
      result.used_fallback = true;
    }
  }
  return result;
}

std::vector<Cube> detect_spis( const DifferenceVector& v )
{
  std::vector<Minterm> unpaired;
  const auto flip = var_mask( v.main, v.n );
  for ( const auto x : v.members )
  {
    if ( !v.contains( x ^ flip ) )
    {
      unpaired.push_back( project_out( x, v.main, v.n ) );
    }
  }
  if ( unpaired.empty() || v.n < 1 )
  {
    return {};
  }
  std::sort( unpaired.begin(), unpaired.end() );
  unpaired.erase( std::unique( unpaired.begin(), unpaired.end() ), unpaired.end() );
  std::vector<Cube> out;
  for ( const auto& pi : prime_implicants( unpaired, v.n - 1 ) )
  {
    auto c = lift( pi, v.main );
    c.set_score( 0 );
    out.push_back( c );
  }
  return out;
}

const char* to_string( TemplateId id ) noexcept
{
  switch ( id )
  {
  case TemplateId::t1: return "T1";
  case TemplateId::t2: return "T2";
  case TemplateId::t3: return "T3";
  case TemplateId::t4: return "T4";
  case TemplateId::t5: return "T5";
  case TemplateId::t6: return "T6";
  case TemplateId::t7: return "T7";
  case TemplateId::exorlink: return "exorlink";
  }
  return "?";
}

TemplateId classify_pair( const Cube& a, const Cube& b )
{
  const auto d = differing_vars( a, b );
  if ( d.size() != 2 )
  {
    return TemplateId::exorlink;
  }
  const unsigned p = d[0];
  const unsigned q = d[1];
  auto literal_pair = [&]( unsigned v ) { return a.at( v ) != 'X' && b.at( v ) != 'X'; };
  const bool lp = literal_pair( p );
  const bool lq = literal_pair( q );
  if ( lp && lq )
  {
    if ( segment_position( p ) == segment_position( q ) )
    {
      return has_free_segment( a, segment_position( p ) ) ? TemplateId::t1 : TemplateId::t7;
    }
    const int shared_x = ( segment_partner( p, a.num_vars() ) != 0 && segment_free_besides( a, p ) ? 1 : 0 ) +
                         ( segment_partner( q, a.num_vars() ) != 0 && segment_free_besides( a, q ) ? 1 : 0 );
    return shared_x == 2 ? TemplateId::t5 : shared_x == 1 ? TemplateId::t2 : TemplateId::t7;
  }
  if ( lp != lq )
  {
    const unsigned v = lp ? q : p;
    const Cube& larger = a.at( v ) == 'X' ? a : b;
    return segment_free_besides( larger, v ) ? TemplateId::t3 : TemplateId::t4;
  }
  return TemplateId::exorlink;
}

std::vector<TemplateMatch> match_templates( std::span<const Cube> pis, std::span<const Cube> spis )
{
  std::vector<Cube> pool( pis.begin(), pis.end() );
  pool.insert( pool.end(), spis.begin(), spis.end() );
  const std::size_t primary = pis.size();
  std::vector<TemplateMatch> out;

  for ( std::size_t i = 0; i < pool.size(); ++i )
  {
    for ( std::size_t j = i + 1; j < pool.size(); ++j )
    {
      if ( i >= primary || distance( pool[i], pool[j] ) != 2 )
      {
        continue;
      }
      const auto id = classify_pair( pool[i], pool[j] );
      for ( const auto& [c1, c2] : exorlink( pool[i], pool[j] ) )
      {
        TemplateMatch m;
        m.id = id;
        m.participants = { pool[i], pool[j] };
        if ( auto ext = c1.intersection( c2 ) )
        {
          m.extensions.push_back( *ext );
        }
        m.replacements = { c1, c2 };
        out.push_back( std::move( m ) );
      }
    }
  }

  // Three cubes: B, C complementary inside one segment, A one step from a rewrite of them.
  for ( std::size_t bi = 0; bi < pool.size(); ++bi )
  {
    for ( std::size_t ci = bi + 1; ci < pool.size(); ++ci )
    {
      const auto d = differing_vars( pool[bi], pool[ci] );
      if ( d.size() != 2 || segment_position( d[0] ) != segment_position( d[1] ) ||
           pool[bi].at( d[0] ) == 'X' || pool[bi].at( d[1] ) == 'X' || pool[ci].at( d[0] ) == 'X' || pool[ci].at( d[1] ) == 'X' )
      {
        continue;
      }
      for ( std::size_t ai = 0; ai < pool.size(); ++ai )
      {
        if ( ai == bi || ai == ci || ( ai >= primary && bi >= primary && ci >= primary ) )
        {
          continue;
        }
        const auto& a = pool[ai];
        if ( a.at( d[0] ) != 'X' && a.at( d[1] ) != 'X' )
        {
          continue;
        }
        for ( const auto& [c1, c2] : exorlink( pool[bi], pool[ci] ) )
        {
          std::optional<Cube> joined;
          Cube rest;
          if ( distance( a, c1 ) == 1 )
          {
            joined = xor_merge( a, c1 );
            rest = c2;
          }
          else if ( distance( a, c2 ) == 1 )
          {
            joined = xor_merge( a, c2 );
            rest = c1;
          }
          if ( !joined )
          {
            continue;
          }
          TemplateMatch m;
          m.id = TemplateId::t6;
          m.participants = { a, pool[bi], pool[ci] };
          if ( auto ext = c1.intersection( c2 ) )
          {
            m.extensions.push_back( *ext );
          }
          m.replacements = { *joined, rest };
          out.push_back( std::move( m ) );
        }
      }
    }
  }

  auto total_size = []( const TemplateMatch& m ) {
    std::size_t s = 0;
    for ( const auto& c : m.participants )
    {
      s += c.size();
    }
    return s;
  };
  std::stable_sort( out.begin(), out.end(), [&]( const TemplateMatch& x, const TemplateMatch& y ) {
    if ( x.id != y.id )
    {
      return x.id < y.id;
    }
    return total_size( x ) > total_size( y );
  } );
  return out;
}

std::uint64_t esop_weight( std::span<const Cube> cubes )
{
  std::uint64_t w = 0;
  for ( const auto& c : cubes )
  {
    w += heuristic_weight( c.num_literals() );
  }
  return w;
}

std::vector<Gate> emit_gates( const ControlExpression& expr, bool factor )
{
  const auto& terms = expr.terms;
  const unsigned t = expr.target;
  std::vector<bool> used( terms.size(), false );
  std::vector<std::vector<Gate>> pieces( terms.size() );

  auto mentions_target = [&]( const Cube& c ) { return c.at( t ) != 'X'; };

  if ( factor )
  {
    for ( std::size_t a = 0; a < terms.size(); ++a )
    {
      for ( std::size_t b = 0; b < terms.size() && !used[a]; ++b )
      {
        if ( a == b || used[b] )
        {
          continue;
        }
        // b = mu * ell, a = mu * kappa1
        const auto& ta = terms[a];
        const auto& tb = terms[b];
        const Minterm shared = ta.care() & tb.care() & ~( ta.value() ^ tb.value() );
        const Minterm rest_b = tb.care() & ~shared;
        if ( shared == 0 || std::popcount( rest_b ) != 1 )
        {
          continue;
        }
        const Cube mu = restrict_to( ta, shared );
        const Cube kappa1 = restrict_to( ta, ta.care() & ~shared );
        const Cube ell_cube = restrict_to( tb, rest_b );
        const auto ell_ctrl = ell_cube.controls().front();
        if ( kappa1.num_literals() == 0 || ell_ctrl.line == t || kappa1.at( ell_ctrl.line ) != 'X' )
        {
          continue;
        }
        const bool forced = mentions_target( ta ) || mentions_target( tb );
        const bool exact = !mentions_target( mu ) && !mentions_target( kappa1 );
        const auto k1 = kappa1.num_literals();
        const auto m = mu.num_literals();
        const bool helps = 2 * heuristic_weight( k1 ) < heuristic_weight( m + k1 );
        if ( !( forced || ( exact && helps ) ) || mentions_target( tb ) )
        {
          continue;
        }
        auto mu_controls = mu.controls();
        mu_controls.push_back( ell_ctrl );
        const Gate outer( ell_ctrl.line, kappa1.controls() );
        pieces[std::min( a, b )] = { outer, Gate( t, mu_controls ), outer };
        used[a] = used[b] = true;
      }
    }
  }
  std::vector<Gate> out;
  for ( std::size_t k = 0; k < terms.size(); ++k )
  {
    if ( used[k] )
    {
      out.insert( out.end(), pieces[k].begin(), pieces[k].end() );
      continue;
    }
    if ( mentions_target( terms[k] ) )
    {
      throw Error( ErrorCode::invalid_gate, "term " + terms[k].to_string() + " controls on its own target" );
    }
    out.emplace_back( t, terms[k].controls() );
  }
  return out;
}

namespace
{

class EsopImprover
{
public:
  EsopImprover( std::vector<Cube> cubes, std::span<const Cube> dc_cubes ) : cubes_( std::move( cubes ) ), dc_( dc_cubes.begin(), dc_cubes.end() )
  {
    settle_all();
  }

  std::vector<Cube> run()
  {
    while ( step() )
    {
    }
    return sorted_unique_checked( std::move( cubes_ ) );
  }

private:
  static std::vector<Cube> sorted_unique_checked( std::vector<Cube> cubes )
  {
    std::sort( cubes.begin(), cubes.end(), lexicographic_less );
    return cubes;
  }

  /// Adds `fresh` to `list`, cancelling or merging it against existing cubes until stable.
  static void settle( std::vector<Cube>& list, Cube fresh )
  {
    while ( true )
    {
      bool changed = false;
      for ( std::size_t k = 0; k < list.size(); ++k )
      {
        const auto d = distance( list[k], fresh );
        if ( d == 0 )
        {
          list.erase( list.begin() + static_cast<std::ptrdiff_t>( k ) );
          return;
        }
        if ( d == 1 )
        {
          fresh = *xor_merge( list[k], fresh );
          list.erase( list.begin() + static_cast<std::ptrdiff_t>( k ) );
          changed = true;
          break;
        }
      }
      if ( !changed )
      {
        list.push_back( fresh );
        return;
      }
    }
  }

  void settle_all()
  {
    std::vector<Cube> out;
    for ( auto& c : cubes_ )
    {
      settle( out, c );
    }
    cubes_ = std::move( out );
    // Cubes lying inside one don't-care cube only touch free cells.
    std::erase_if( cubes_, [&]( const Cube& c ) {
      return std::any_of( dc_.begin(), dc_.end(), [&]( const Cube& d ) { return d.contains( c ); } );
    } );
  }

  bool step()
  {
    const auto base = esop_weight( cubes_ );
    std::optional<std::vector<Cube>> best;
    std::uint64_t best_weight = base;

    auto consider = [&]( std::vector<Cube> candidate ) {
      const auto w = esop_weight( candidate );
      if ( w < best_weight )
      {
        best_weight = w;
        best = std::move( candidate );
      }
    };

    for ( std::size_t i = 0; i < cubes_.size(); ++i )
    {
      for ( std::size_t j = i + 1; j < cubes_.size(); ++j )
      {
        if ( distance( cubes_[i], cubes_[j] ) != 2 )
        {
          continue;
        }
        for ( const auto& [c1, c2] : exorlink( cubes_[i], cubes_[j] ) )
        {
          std::vector<Cube> next;
          next.reserve( cubes_.size() );
          for ( std::size_t k = 0; k < cubes_.size(); ++k )
          {
            if ( k != i && k != j )
            {
              next.push_back( cubes_[k] );
            }
          }
          settle( next, c1 );
          settle( next, c2 );
          consider( std::move( next ) );
        }
      }
    }
    for ( std::size_t i = 0; i < cubes_.size(); ++i )
    {
      for ( const auto& d : dc_ )
      {
        const auto dist = distance( cubes_[i], d );
        if ( dist == 0 || dist > 2 )
        {
          continue;
        }
        std::vector<Cube> rest;
        rest.reserve( cubes_.size() );
        for ( std::size_t k = 0; k < cubes_.size(); ++k )
        {
          if ( k != i )
          {
            rest.push_back( cubes_[k] );
          }
        }
        if ( dist == 1 )
        {
          auto next = rest;
          settle( next, *xor_merge( cubes_[i], d ) );
          consider( std::move( next ) );
          continue;
        }
        for ( const auto& [c1, c2] : exorlink( cubes_[i], d ) )
        {
          auto next = rest;
          settle( next, c1 );
          settle( next, c2 );
          consider( std::move( next ) );
        }
      }
    }
    if ( !best )
    {
      return false;
    }
    cubes_ = std::move( *best );
    settle_all();
    return true;
  }

  std::vector<Cube> cubes_;
  std::vector<Cube> dc_;
};

} // namespace

std::vector<Cube> improve_esop( std::vector<Cube> cubes, std::span<const Cube> dc_cubes, const EsopOptions& options )
{
  if ( !options.templates )
  {
    return cubes;
  }
  return EsopImprover( std::move( cubes ), dc_cubes ).run();
}

std::vector<Cube> minimize_esop( std::span<const Minterm> on, std::span<const Minterm> dc, unsigned n, const EsopOptions& options )
{
  if ( on.empty() )
  {
    return {};
  }
  std::vector<Cube> seeds;
  seeds.reserve( on.size() + dc.size() );
  for ( const auto x : on )
  {
    seeds.push_back( Cube::minterm( x, n, -1 ) );
  }
  for ( const auto x : dc )
  {
    seeds.push_back( Cube::minterm( x, n, 0 ) );
  }
  const auto pis = prime_implicants( seeds );
  std::vector<Cube> useful;
  for ( const auto& pi : pis )
  {
    if ( pi.score() < 0 )
    {
      useful.push_back( pi );
    }
  }
  auto cover = select_cover( useful, on, dc ).cubes;
  if ( !options.templates )
  {
    return cover;
  }
  std::vector<Cube> dc_cubes;
  if ( !dc.empty() )
  {
    dc_cubes = prime_implicants( dc, n );
  }
  return improve_esop( std::move( cover ), dc_cubes, options );
}

} // namespace mqm
