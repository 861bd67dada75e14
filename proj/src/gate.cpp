#include "mqm/gate.hpp"

#include <algorithm>
#include <string>

#include "mqm/error.hpp"
#include "mqm/kernels.hpp"

namespace mqm
{

Gate::Gate( unsigned target, std::vector<Control> controls )
    : target_( target ), controls_( std::move( controls ) )
{
  if ( target_ == 0 || target_ > kMaxVariables )
  {
    throw Error( ErrorCode::invalid_gate, "target line " + std::to_string( target_ ) );
  }
  std::sort( controls_.begin(), controls_.end() );
  for ( std::size_t k = 0; k < controls_.size(); ++k )
  {
    const auto line = controls_[k].line;
    if ( line == 0 || line > kMaxVariables )
    {
      throw Error( ErrorCode::invalid_gate, "control line " + std::to_string( line ) );
    }
    if ( line == target_ )
    {
      throw Error( ErrorCode::invalid_gate, "control on the target line " + std::to_string( line ) );
    }
    if ( k > 0 && controls_[k - 1].line == line )
    {
      throw Error( ErrorCode::invalid_gate, "duplicate control line " + std::to_string( line ) );
    }
  }
}

bool Gate::has_control_on( unsigned line ) const noexcept
{
  return std::any_of( controls_.begin(), controls_.end(), [line]( const Control& c ) { return c.line == line; } );
}

unsigned Gate::max_line() const noexcept
{
  unsigned m = target_;
  for ( const auto& c : controls_ )
  {
    m = std::max( m, c.line );
  }
  return m;
}

GateMasks Gate::masks( unsigned n ) const noexcept
{
  GateMasks m;
  m.target = var_mask( target_, n );
  for ( const auto& c : controls_ )
  {
    const auto bit = var_mask( c.line, n );
    m.care |= bit;
    if ( c.polarity == Polarity::positive )
    {
      m.value |= bit;
    }
  }
  return m;
}

std::string to_string( const Gate& g )
{
  std::string args;
  for ( const auto& c : g.controls() )
  {
    args += "x" + std::to_string( c.line );
    if ( c.polarity == Polarity::negative )
    {
      args += '\'';
    }
    args += ',';
  }
  args += "x" + std::to_string( g.target() );
  switch ( g.num_controls() )
  {
  case 0: return "X(" + args + ")";
  case 1: return "CNOT(" + args + ")";
  default: return "Toff(" + args + ")";
  }
}

bool commute( const Gate& a, const Gate& b ) noexcept
{
  if ( a.target() == b.target() )
  {
    return true;
  }
  if ( !a.has_control_on( b.target() ) && !b.has_control_on( a.target() ) )
  {
    return true;
  }
  // Disjoint firing sets also commute: some shared line is controlled with opposite polarity.
  for ( const auto& ca : a.controls() )
  {
    for ( const auto& cb : b.controls() )
    {
      if ( ca.line == cb.line && ca.polarity != cb.polarity )
      {
        return true;
      }
    }
  }
  return false;
}

Minterm eval_gate( const Gate& g, Minterm x, unsigned n ) noexcept
{
  return g.masks( n ).apply( x );
}

Circuit::Circuit( unsigned n, std::vector<Gate> gates ) : n_( n )
{
  gates_.reserve( gates.size() );
  for ( auto& g : gates )
  {
    push_back( std::move( g ) );
  }
}

void Circuit::push_back( Gate g )
{
  if ( g.max_line() > n_ )
  {
    throw Error( ErrorCode::line_mismatch, "gate " + to_string( g ) + " exceeds " + std::to_string( n_ ) + " lines" );
  }
  gates_.push_back( std::move( g ) );
}

void Circuit::append( std::span<const Gate> gates )
{
  for ( const auto& g : gates )
  {
    push_back( g );
  }
}

std::vector<GateMasks> Circuit::masks() const
{
  std::vector<GateMasks> out;
  out.reserve( gates_.size() );
  for ( const auto& g : gates_ )
  {
    out.push_back( g.masks( n_ ) );
  }
  return out;
}

Minterm eval_circuit( const Circuit& c, Minterm x ) noexcept
{
  for ( const auto& g : c.gates() )
  {
    x = eval_gate( g, x, c.num_lines() );
  }
  return x;
}

ReversibleFunction to_permutation( const Circuit& c )
{
  const auto masks = c.masks();
  return FunctionBuilder::adopt_unchecked( c.num_lines(), kernels::simulate( masks, c.num_lines() ) );
}

VerificationReport verify( const Circuit& c, const ReversibleFunction& f )
{
  VerificationReport report;
  if ( c.num_lines() != f.num_vars() )
  {
    report.pass = false;
    report.witness = 0;
    return report;
  }
  const auto actual = to_permutation( c );
  const auto mismatch = kernels::first_mismatch( f.images(), actual.images() );
  report.pass = !mismatch.has_value();
  if ( mismatch )
  {
    report.witness = *mismatch;
    report.expected = f( *mismatch );
    report.actual = actual( *mismatch );
  }
  return report;
}

Circuit reverse( const Circuit& c )
{
  std::vector<Gate> gates( c.gates().rbegin(), c.gates().rend() );
  return Circuit( c.num_lines(), std::move( gates ) );
}

} // namespace mqm
