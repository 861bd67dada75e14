#include "mqm/synthesis.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <unordered_set>

#include "mqm/decomposition.hpp"
#include "mqm/error.hpp"
#include "mqm/kernels.hpp"
#include "mqm/mqm.hpp"

namespace mqm
{

WorkList::WorkList( const ReversibleFunction& f, VectorOrder order )
    : n_( f.num_vars() ), order_( order ), perm_( f.images().begin(), f.images().end() )
{
  for ( unsigned i = 1; i <= n_; ++i )
  {
    open_.push_back( i );
  }
  refresh();
}

bool WorkList::is_open( unsigned line ) const noexcept
{
  return std::find( open_.begin(), open_.end(), line ) != open_.end();
}

DifferenceVector WorkList::vector( unsigned line ) const
{
  return difference_vector( perm_, n_, line );
}

std::size_t WorkList::vector_size( unsigned line ) const
{
  const auto mask = var_mask( line, n_ );
  std::size_t c = 0;
  for ( std::size_t x = 0; x < perm_.size(); ++x )
  {
    c += ( ( x ^ perm_[x] ) & mask ) != 0 ? 1 : 0;
  }
  return c;
}

void WorkList::apply( const Gate& g, GateRole role )
{
  apply_gate_inputs_inplace( perm_, n_, g );
  log_.push_back( { g, role } );
}

void WorkList::refresh()
{
  const auto counts = kernels::difference_counts( perm_, n_ );
  std::erase_if( open_, [&]( unsigned line ) { return counts[line - 1] == 0; } );
  std::stable_sort( open_.begin(), open_.end(), [&]( unsigned a, unsigned b ) {
    if ( counts[a - 1] != counts[b - 1] )
    {
      return order_ == VectorOrder::ascending ? counts[a - 1] < counts[b - 1] : counts[a - 1] > counts[b - 1];
    }
    return a < b;
  } );
}

void update_vectors( WorkList& state, std::span<const Gate> gates, GateRole role )
{
  for ( const auto& g : gates )
  {
    state.apply( g, role );
  }
  state.refresh();
}

std::vector<Gate> swap_options( const Cube& a, const Cube& b )
{
  const auto d = differing_vars( a, b );
  if ( d.size() != 2 || segment_position( d[0] ) != segment_position( d[1] ) )
  {
    throw Error( ErrorCode::not_swappable, a.to_string( true ) + " and " + b.to_string( true ) + " do not differ in exactly one full segment" );
  }
  const unsigned j = d[0];
  const unsigned k = d[1];
  if ( a.at( j ) == 'X' || a.at( k ) == 'X' || b.at( j ) == 'X' || b.at( k ) == 'X' )
  {
    throw Error( ErrorCode::not_swappable, "segment holds a free position" );
  }
  auto lit = []( unsigned line, char v ) { return v == '1' ? pos( line ) : neg( line ); };
  return {
      Gate( k, { lit( j, a.at( j ) ) } ),
      Gate( k, { lit( j, b.at( j ) ) } ),
      Gate( j, { lit( k, a.at( k ) ) } ),
      Gate( j, { lit( k, b.at( k ) ) } ),
  };
}

std::size_t unpaired_count( std::span<const Minterm> members, unsigned main, unsigned n )
{
  const auto flip = var_mask( main, n );
  std::size_t count = 0;
  for ( const auto x : members )
  {
    if ( !std::binary_search( members.begin(), members.end(), x ^ flip ) )
    {
      ++count;
    }
  }
  return count;
}

namespace
{

/// V_main after relabelling by g, sorted.
std::vector<Minterm> moved_members( std::span<const Minterm> members, const Gate& g, unsigned n )
{
  const auto m = g.masks( n );
  std::vector<Minterm> out;
  out.reserve( members.size() );
  for ( const auto x : members )
  {
    out.push_back( m.apply( x ) );
  }
  std::sort( out.begin(), out.end() );
  return out;
}

std::size_t total_after( std::span<const Minterm> perm, const Gate& g, unsigned n )
{
  std::vector<Minterm> copy( perm.begin(), perm.end() );
  apply_gate_inputs_inplace( copy, n, g );
  std::size_t total = 0;
  for ( const auto c : kernels::difference_counts( copy, n ) )
  {
    total += c;
  }
  return total;
}

struct Candidate
{
  Gate gate{ 1 };
  std::size_t unpaired = std::numeric_limits<std::size_t>::max();
  std::size_t total = std::numeric_limits<std::size_t>::max();
};

bool cube_order( const Cube& a, const Cube& b )
{
  if ( a.num_literals() != b.num_literals() )
  {
    return a.num_literals() > b.num_literals();
  }
  return lexicographic_less( a, b );
}

class VectorEvaluator
{
public:
  VectorEvaluator( WorkList& state, unsigned main, const SynthesisConfig& config )
      : state_( state ), main_( main ), config_( config ), n_( state.num_vars() )
  {
    budget_ = config.gate_budget;
    if ( budget_ == 0 )
    {
      budget_ = n_ >= 31 ? std::numeric_limits<std::uint64_t>::max() : ( std::uint64_t{ 1 } << ( 2 * n_ ) );
    }
  }

  void run()
  {
    while ( true )
    {
      const auto v = state_.vector( main_ );
      if ( v.empty() )
      {
        return;
      }
      if ( clear_pairs( v ) )
      {
        continue;
      }
      if ( try_swap( v.members ) )
      {
        continue;
      }
      transposition( v.members );
    }
  }

private:
  void apply( const Gate& g, GateRole role )
  {
    if ( state_.log().size() >= budget_ )
    {
      throw Error( ErrorCode::limit_exceeded, "gate budget of " + std::to_string( budget_ ) + " reached" );
    }
    state_.apply( g, role );
  }

  /// Gates that flip every full pair of V_main; empty when there are none.
  std::vector<std::pair<Gate, GateRole>> pair_gates( const DifferenceVector& v )
  {
    const auto flip = var_mask( main_, n_ );
    std::vector<Minterm> on, dc, paired;
    for ( const auto x : v.members )
    {
      const bool full = v.contains( x ^ flip );
      if ( full )
      {
        paired.push_back( x );
      }
      if ( ( x & flip ) != 0 && full )
      {
        continue;
      }
      ( full ? on : dc ).push_back( project_out( x, main_, n_ ) );
    }
    std::vector<std::pair<Gate, GateRole>> out;
    if ( on.empty() )
    {
      return out;
    }
    const bool big = n_ > 10 || v.size() > 256;
    const bool decompose = config_.decompose == DecomposeMode::on || ( config_.decompose == DecomposeMode::automatic && big );
    if ( decompose && n_ >= 3 )
    {
      DecompositionOptions opts;
      opts.mid = config_.mid;
      opts.templates = config_.templates;
      for ( const auto line : state_.open() )
      {
        if ( line != main_ )
        {
          opts.working_lines.push_back( line );
        }
      }
      if ( auto dg = synthesize_decomposed( paired, n_, main_, opts ) )
      {
        for ( const auto& g : dg->gates )
        {
          out.emplace_back( g, g.target() == main_ ? GateRole::evaluation : GateRole::working );
        }
        return out;
      }
    }
    EsopOptions eo;
    eo.templates = config_.templates;
    auto cubes = minimize_esop( on, dc, n_ - 1, eo );
    std::sort( cubes.begin(), cubes.end(), cube_order );
    for ( const auto& c : cubes )
    {
      out.emplace_back( Gate( main_, lift( c, main_ ).controls() ), GateRole::evaluation );
    }
    return out;
  }

  bool clear_pairs( const DifferenceVector& v )
  {
    const auto gates = pair_gates( v );
    for ( const auto& [g, role] : gates )
    {
      apply( g, role );
    }
    return !gates.empty();
  }

  Candidate score( std::span<const Minterm> members, const Gate& g, bool with_total )
  {
    Candidate c;
    c.gate = g;
    const auto moved = moved_members( members, g, n_ );
    c.unpaired = unpaired_count( moved, main_, n_ );
    if ( with_total )
    {
      c.total = total_after( state_.perm(), g, n_ );
    }
    return c;
  }

  static bool better( const Candidate& a, const Candidate& b )
  {
    if ( a.unpaired != b.unpaired )
    {
      return a.unpaired < b.unpaired;
    }
    if ( a.total != b.total )
    {
      return a.total < b.total;
    }
    return a.gate.num_controls() < b.gate.num_controls();
  }

  std::vector<Gate> generic_candidates() const
  {
    std::vector<Gate> out;
    for ( unsigned t = 1; t <= n_; ++t )
    {
      if ( t == main_ || !state_.is_open( t ) )
      {
        continue;
      }
      for ( const auto p : { Polarity::positive, Polarity::negative } )
      {
        const Control c{ main_, p };
        out.emplace_back( t, std::vector<Control>{ c } );
        if ( n_ > 12 )
        {
          continue;
        }
        for ( unsigned e = 1; e <= n_; ++e )
        {
          if ( e == main_ || e == t )
          {
            continue;
          }
          out.emplace_back( t, std::vector<Control>{ c, pos( e ) } );
          out.emplace_back( t, std::vector<Control>{ c, neg( e ) } );
        }
      }
    }
    return out;
  }

  bool try_swap( std::span<const Minterm> members )
  {
    const auto current = members.size();
    std::optional<Candidate> best;

    // Segment-local options between two unpaired members first.
    const auto flip = var_mask( main_, n_ );
    std::vector<Minterm> low, high;
    for ( const auto x : members )
    {
      if ( std::binary_search( members.begin(), members.end(), x ^ flip ) )
      {
        continue;
      }
      ( ( x & flip ) == 0 ? low : high ).push_back( x );
    }
    for ( const auto a : low )
    {
      for ( const auto b : high )
      {
        const Cube ca = Cube::minterm( a, n_ );
        const Cube cb = Cube::minterm( b, n_ );
        const auto d = differing_vars( ca, cb );
        if ( d.size() != 2 || segment_position( d[0] ) != segment_position( d[1] ) )
        {
          continue;
        }
        if ( !state_.is_open( d[0] == main_ ? d[1] : d[0] ) )
        {
          continue;
        }
        const auto choice = swap_phase( ca, cb, state_, main_ );
        Candidate c{ choice.gate, choice.unpaired_after, choice.total_after };
        if ( !best || better( c, *best ) )
        {
          best = c;
        }
      }
    }
    if ( !best || best->unpaired >= current )
    {
      std::vector<Candidate> scored;
      std::size_t min_unpaired = std::numeric_limits<std::size_t>::max();
      for ( const auto& g : generic_candidates() )
      {
        auto c = score( members, g, false );
        min_unpaired = std::min( min_unpaired, c.unpaired );
        scored.push_back( std::move( c ) );
      }
      if ( best && best->unpaired < min_unpaired )
      {
        min_unpaired = best->unpaired;
      }
      for ( auto& c : scored )
      {
        if ( c.unpaired == min_unpaired && c.unpaired < current )
        {
          c.total = total_after( state_.perm(), c.gate, n_ );
          if ( !best || better( c, *best ) )
          {
            best = c;
          }
        }
      }
    }
    if ( !best || best->unpaired >= current )
    {
      return false;
    }
    apply( best->gate, GateRole::swap );
    return true;
  }

  /// Exact transposition of an unpaired member onto the partner of another one.
  void transposition( std::span<const Minterm> members )
  {
    const auto flip = var_mask( main_, n_ );
    Minterm closed = 0;
    for ( unsigned line = 1; line <= n_; ++line )
    {
      if ( !state_.is_open( line ) )
      {
        closed |= var_mask( line, n_ );
      }
    }
    std::optional<std::pair<Minterm, Minterm>> pick;
    int best_distance = std::numeric_limits<int>::max();
    for ( const auto a : members )
    {
      if ( ( a & flip ) != 0 || std::binary_search( members.begin(), members.end(), a ^ flip ) )
      {
        continue;
      }
      for ( const auto b : members )
      {
        if ( ( b & flip ) == 0 || std::binary_search( members.begin(), members.end(), b ^ flip ) )
        {
          continue;
        }
        if ( ( a & closed ) != ( b & closed ) )
        {
          continue;
        }
        const int dist = std::popcount( b ^ a ^ flip );
        if ( dist < best_distance )
        {
          best_distance = dist;
          pick = { a, b };
        }
      }
    }
    if ( !pick )
    {
      throw Error( ErrorCode::limit_exceeded, "no unpaired members share a fibre over the closed lines" );
    }
    const Minterm from = pick->second;
    const Minterm to = pick->first ^ flip;
    std::vector<Minterm> path{ from };
    for ( unsigned line = 1; line <= n_; ++line )
    {
      const auto bit = var_mask( line, n_ );
      if ( ( ( from ^ to ) & bit ) != 0 )
      {
        path.push_back( path.back() ^ bit );
      }
    }
    auto step_gate = [&]( Minterm p, Minterm q ) {
      const auto bit = p ^ q;
      unsigned target = 0;
      std::vector<Control> controls;
      for ( unsigned line = 1; line <= n_; ++line )
      {
        const auto m = var_mask( line, n_ );
        if ( m == bit )
        {
          target = line;
        }
        else
        {
          controls.push_back( ( p & m ) != 0 ? pos( line ) : neg( line ) );
        }
      }
      return Gate( target, std::move( controls ) );
    };
    const std::size_t d = path.size() - 1;
    std::vector<Gate> seq;
    for ( std::size_t k = 0; k < d; ++k )
    {
      seq.push_back( step_gate( path[k], path[k + 1] ) );
    }
    for ( std::size_t k = d - 1; k-- > 0; )
    {
      seq.push_back( step_gate( path[k], path[k + 1] ) );
    }
    for ( const auto& g : seq )
    {
      apply( g, GateRole::fallback );
    }
  }

  WorkList& state_;
  unsigned main_;
  const SynthesisConfig& config_;
  unsigned n_;
  std::uint64_t budget_ = 0;
};

} // namespace

SwapChoice swap_phase( const Cube& a, const Cube& b, const WorkList& state, unsigned main )
{
  const auto options = swap_options( a, b );
  const unsigned n = state.num_vars();
  const auto members = state.vector( main ).members;
  std::optional<SwapChoice> best;
  for ( const auto& g : options )
  {
    if ( g.target() == main || !state.is_open( g.target() ) )
    {
      continue;
    }
    SwapChoice c{ g, 0, 0 };
    c.unpaired_after = unpaired_count( moved_members( members, g, n ), main, n );
    c.total_after = total_after( state.perm(), g, n );
    const bool better = !best || c.unpaired_after < best->unpaired_after ||
                        ( c.unpaired_after == best->unpaired_after && c.total_after < best->total_after );
    if ( better )
    {
      best = c;
    }
  }
  if ( !best )
  {
    throw Error( ErrorCode::not_swappable, "every option targets the main line or a cleared line" );
  }
  return *best;
}

Gate fallback_eliminate( Minterm m, unsigned main, unsigned n )
{
  std::vector<Control> controls;
  for ( unsigned line = 1; line <= n; ++line )
  {
    if ( line != main )
    {
      controls.push_back( var_bit( m, line, n ) ? pos( line ) : neg( line ) );
    }
  }
  return Gate( main, std::move( controls ) );
}

void evaluate_vector( WorkList& state, unsigned main, const SynthesisConfig& config )
{
  VectorEvaluator( state, main, config ).run();
  state.refresh();
}

SynthesisTrace synthesize_traced( const ReversibleFunction& f, const SynthesisConfig& config )
{
  WorkList state( f, config.order );
  while ( !state.done() )
  {
    evaluate_vector( state, state.open().front(), config );
  }
  SynthesisTrace trace{ Circuit( f.num_vars() ), state.log() };
  if ( config.postprocess )
  {
    trace.circuit = Circuit( f.num_vars(), postprocess( state.log(), f.num_vars() ) );
  }
  else
  {
    for ( const auto& lg : state.log() )
    {
      trace.circuit.push_back( lg.gate );
    }
  }
  return trace;
}

Circuit synthesize( const ReversibleFunction& f, const SynthesisConfig& config )
{
  return synthesize_traced( f, config ).circuit;
}

} // namespace mqm
