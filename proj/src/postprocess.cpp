#include "mqm/postprocess.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <optional>

#include "mqm/cost.hpp"
#include "mqm/error.hpp"

namespace mqm
{

namespace
{

std::vector<Control> with_control( std::vector<Control> controls, Control extra )
{
  controls.push_back( extra );
  return controls;
}

Cube part( const Cube& c, Minterm mask )
{
  return Cube( c.num_vars(), c.care() & mask, c.value() & mask );
}

std::uint64_t w( unsigned m )
{
  return heuristic_weight( m );
}

Cube gate_cube( const Gate& g, unsigned n )
{
  const auto m = g.masks( n );
  return Cube( n, m.care, m.value );
}

/// Lowest line outside both supports and the listed targets.
std::optional<unsigned> free_line( unsigned n, Minterm support, std::initializer_list<unsigned> targets )
{
  for ( unsigned v = 1; v <= n; ++v )
  {
    const bool busy = ( support & var_mask( v, n ) ) != 0 ||
                      std::find( targets.begin(), targets.end(), v ) != targets.end();
    if ( !busy )
    {
      return v;
    }
  }
  return std::nullopt;
}

struct LinePieces
{
  std::vector<std::vector<Gate>> factored;
  std::vector<Cube> plain;
  std::size_t rewrites = 0;
  bool no_free_line = false;
};

/// Greedy pairwise factoring inside one line; the best saving first.
LinePieces factor_line( const EsopLine& line )
{
  LinePieces out;
  std::vector<Cube> terms = line.terms;
  const unsigned t = line.target;
  while ( true )
  {
    std::int64_t best_saving = 0;
    std::vector<Gate> best_gates;
    std::size_t best_a = 0, best_b = 0;
    for ( std::size_t a = 0; a < terms.size(); ++a )
    {
      for ( std::size_t b = a + 1; b < terms.size(); ++b )
      {
        const auto& ta = terms[a];
        const auto& tb = terms[b];
        const unsigned n = ta.num_vars();
        const Minterm shared = ta.care() & tb.care() & ~( ta.value() ^ tb.value() );
        const auto m = static_cast<unsigned>( std::popcount( shared ) );
        if ( m == 0 )
        {
          continue;
        }
        const Cube mu = part( ta, shared );
        const Cube ka = part( ta, ta.care() & ~shared );
        const Cube kb = part( tb, tb.care() & ~shared );
        const unsigned k1 = ka.num_literals();
        const unsigned k2 = kb.num_literals();
        const auto before = static_cast<std::int64_t>( w( m + k1 ) + w( m + k2 ) );

        auto offer = [&]( std::vector<Gate> gates ) {
          std::int64_t after = 0;
          for ( const auto& g : gates )
          {
            after += static_cast<std::int64_t>( w( static_cast<unsigned>( g.num_controls() ) ) );
          }
          if ( before - after > best_saving )
          {
            best_saving = before - after;
            best_gates = std::move( gates );
            best_a = a;
            best_b = b;
          }
        };

        // One residue is a single literal on another line.
        for ( int side = 0; side < 2; ++side )
        {
          const Cube& kappa = side == 0 ? ka : kb;
          const Cube& single = side == 0 ? kb : ka;
          if ( single.num_literals() != 1 || kappa.num_literals() == 0 )
          {
            continue;
          }
          const auto ell = single.controls().front();
          if ( kappa.at( ell.line ) != 'X' )
          {
            continue;
          }
          offer( factor_single_literal( mu, kappa, ell, t ) );
        }
        if ( k1 >= 2 && k2 >= 2 )
        {
          const auto fl = free_line( n, ta.care() | tb.care(), { t } );
          if ( !fl )
          {
            const auto alt = static_cast<std::int64_t>( 2 * w( m + 1 ) + 2 * w( k1 ) + 2 * w( k2 ) );
            if ( alt < before )
            {
              out.no_free_line = true;
            }
            continue;
          }
          offer( factor_free_line( mu, ka, kb, t, *fl ) );
          offer( factor_free_line_swapped( mu, ka, kb, t, *fl ) );
        }
      }
    }
    if ( best_saving <= 0 )
    {
      break;
    }
    out.factored.push_back( std::move( best_gates ) );
    ++out.rewrites;
    terms.erase( terms.begin() + static_cast<std::ptrdiff_t>( best_b ) );
    terms.erase( terms.begin() + static_cast<std::ptrdiff_t>( best_a ) );
  }
  out.plain = std::move( terms );
  return out;
}

} // namespace

EsopLine cancel_duplicates( EsopLine line )
{
  std::map<std::pair<Minterm, Minterm>, std::size_t> count;
  for ( const auto& c : line.terms )
  {
    ++count[{ c.care(), c.value() }];
  }
  std::vector<Cube> kept;
  for ( const auto& c : line.terms )
  {
    auto& k = count[{ c.care(), c.value() }];
    if ( k % 2 == 1 )
    {
      kept.push_back( c );
    }
    k = 0;
  }
  line.terms = std::move( kept );
  return line;
}

std::vector<Gate> factor_single_literal( const Cube& mu, const Cube& kappa1, Control ell, unsigned target )
{
  const Gate outer( ell.line, kappa1.controls() );
  return { outer, Gate( target, with_control( mu.controls(), ell ) ), outer };
}

std::vector<Gate> factor_free_line( const Cube& mu, const Cube& kappa1, const Cube& kappa2, unsigned target, unsigned free )
{
  const Gate core( target, with_control( mu.controls(), pos( free ) ) );
  const Gate g1( free, kappa1.controls() );
  const Gate g2( free, kappa2.controls() );
  return { core, g1, g2, core, g2, g1 };
}

std::vector<Gate> factor_free_line_swapped( const Cube& mu, const Cube& kappa1, const Cube& kappa2, unsigned target, unsigned free )
{
  const Gate a( target, with_control( kappa1.controls(), pos( free ) ) );
  const Gate b( target, with_control( kappa2.controls(), pos( free ) ) );
  const Gate load( free, mu.controls() );
  return { a, b, load, a, b, load };
}

std::vector<Gate> factor_shared_control( const Cube& mu, const Cube& kappa, unsigned i, unsigned j )
{
  const Gate outer( j, with_control( kappa.controls(), pos( i ) ) );
  return { outer, Gate( i, mu.controls() ), outer };
}

std::vector<Gate> factor_shared_free_line( const Cube& mu, const Cube& kappa1, const Cube& kappa2, unsigned i, unsigned j, unsigned free )
{
  const Gate a( i, with_control( kappa1.controls(), pos( free ) ) );
  const Gate b( j, with_control( kappa2.controls(), pos( free ) ) );
  const Gate load( free, mu.controls() );
  return { a, b, load, a, b, load };
}

FactorResult factor_within( const EsopLine& line )
{
  auto pieces = factor_line( cancel_duplicates( line ) );
  FactorResult r;
  r.rewrites = pieces.rewrites;
  r.no_free_line = pieces.no_free_line;
  for ( auto& p : pieces.factored )
  {
    r.gates.insert( r.gates.end(), p.begin(), p.end() );
  }
  for ( const auto& c : pieces.plain )
  {
    r.gates.emplace_back( line.target, c.controls() );
  }
  return r;
}

AcrossResult factor_across( const EsopLine& line_i, const EsopLine& line_j )
{
  const unsigned i = line_i.target;
  const unsigned j = line_j.target;
  if ( i == j )
  {
    throw Error( ErrorCode::template_inapplicable, "both lines target x" + std::to_string( i ) );
  }
  std::optional<AcrossResult> best;
  std::int64_t best_saving = 0;
  bool complemented = false;
  bool wanted_free_line = false;

  for ( const auto& a : line_i.terms )
  {
    for ( const auto& b : line_j.terms )
    {
      const unsigned n = a.num_vars();
      const Minterm both = a.care() & b.care();
      const Minterm shared = both & ~( a.value() ^ b.value() );
      const auto m = static_cast<unsigned>( std::popcount( shared ) );
      if ( m < 2 )
      {
        if ( std::popcount( both & ( a.value() ^ b.value() ) ) >= 2 )
        {
          complemented = true;
        }
        continue;
      }
      const Cube mu = part( a, shared );
      const Cube ka = part( a, a.care() & ~shared );
      const Cube kb = part( b, b.care() & ~shared );
      const unsigned k1 = ka.num_literals();
      const unsigned k2 = kb.num_literals();
      const auto before = static_cast<std::int64_t>( w( m + k1 ) + w( m + k2 ) );
      auto offer = [&]( std::vector<Gate> gates ) {
        std::int64_t after = 0;
        for ( const auto& g : gates )
        {
          after += static_cast<std::int64_t>( w( static_cast<unsigned>( g.num_controls() ) ) );
        }
        if ( before - after > best_saving )
        {
          best_saving = before - after;
          best = AcrossResult{ std::move( gates ), a, b };
        }
      };
      if ( k1 == 0 && k2 >= 1 && kb.at( i ) == 'X' )
      {
        offer( factor_shared_control( mu, kb, i, j ) );
      }
      else if ( k2 == 0 && k1 >= 1 && ka.at( j ) == 'X' )
      {
        offer( factor_shared_control( mu, ka, j, i ) );
      }
      else if ( k1 >= 1 && k2 >= 1 && ka.at( j ) == 'X' && kb.at( i ) == 'X' )
      {
        const auto fl = free_line( n, a.care() | b.care(), { i, j } );
        if ( fl )
        {
          offer( factor_shared_free_line( mu, ka, kb, i, j, *fl ) );
        }
        else
        {
          wanted_free_line = true;
        }
      }
    }
  }
  if ( !best )
  {
    std::string why = "no pair shares two literals with a saving";
    if ( complemented )
    {
      why = "shared literals are complemented; no equivalent form for two or more of them";
    }
    else if ( wanted_free_line )
    {
      why = "no free line";
    }
    throw Error( ErrorCode::template_inapplicable, why );
  }
  return std::move( *best );
}

std::vector<Gate> postprocess( std::span<const LoggedGate> log, unsigned n )
{
  struct Item
  {
    bool run = false;
    Gate barrier{ 1 };
    EsopLine line;
  };
  std::vector<Item> items;
  for ( const auto& lg : log )
  {
    if ( lg.role == GateRole::evaluation )
    {
      if ( items.empty() || !items.back().run || items.back().line.target != lg.gate.target() )
      {
        Item it;
        it.run = true;
        it.line.target = lg.gate.target();
        items.push_back( std::move( it ) );
      }
      items.back().line.terms.push_back( gate_cube( lg.gate, n ) );
    }
    else
    {
      Item it;
      it.barrier = lg.gate;
      items.push_back( std::move( it ) );
    }
  }

  struct RunOut
  {
    LinePieces pieces;
    std::vector<Gate> head;  ///< cross-line gates placed before this run's own gates
  };
  std::vector<RunOut> outs( items.size() );
  for ( std::size_t k = 0; k < items.size(); ++k )
  {
    if ( items[k].run )
    {
      outs[k].pieces = factor_line( cancel_duplicates( items[k].line ) );
    }
  }
  for ( std::size_t k = 0; k + 1 < items.size(); ++k )
  {
    if ( !items[k].run || !items[k + 1].run )
    {
      continue;
    }
    auto& pi = outs[k].pieces.plain;
    auto& pj = outs[k + 1].pieces.plain;
    try
    {
      auto r = factor_across( EsopLine{ items[k].line.target, pi }, EsopLine{ items[k + 1].line.target, pj } );
      pi.erase( std::find( pi.begin(), pi.end(), r.used_i ) );
      pj.erase( std::find( pj.begin(), pj.end(), r.used_j ) );
      outs[k + 1].head = std::move( r.gates );
    }
    catch ( const Error& )
    {
    }
  }

  std::vector<Gate> out;
  for ( std::size_t k = 0; k < items.size(); ++k )
  {
    if ( !items[k].run )
    {
      out.push_back( items[k].barrier );
      continue;
    }
    // The cross-line triple sits between the two runs.
    out.insert( out.end(), outs[k].head.begin(), outs[k].head.end() );
    for ( const auto& c : outs[k].pieces.plain )
    {
      out.emplace_back( items[k].line.target, c.controls() );
    }
    for ( const auto& p : outs[k].pieces.factored )
    {
      out.insert( out.end(), p.begin(), p.end() );
    }
  }
  return out;
}

} // namespace mqm
