#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "function.hpp"

namespace mqm
{

enum class Polarity : std::uint8_t
{
  negative = 0,
  positive = 1
};

struct Control
{
  unsigned line = 0;
  Polarity polarity = Polarity::positive;

  bool satisfied_by( bool bit ) const noexcept { return bit == ( polarity == Polarity::positive ); }

  friend auto operator<=>( const Control&, const Control& ) = default;
};

constexpr Control pos( unsigned line ) noexcept { return { line, Polarity::positive }; }
constexpr Control neg( unsigned line ) noexcept { return { line, Polarity::negative }; }

/// Bit masks of a gate relative to a fixed line count; what the kernels run on.
struct GateMasks
{
  Minterm care = 0;
  Minterm value = 0;
  Minterm target = 0;

  bool fires( Minterm x ) const noexcept { return ( x & care ) == value; }
  Minterm apply( Minterm x ) const noexcept { return fires( x ) ? ( x ^ target ) : x; }
};

/*! \brief Mixed-polarity C^mNOT gate.
 *
 * m = 0 is NOT, m = 1 CNOT, m = 2 Toffoli. Controls are kept sorted by line.
 */
class Gate
{
public:
  Gate( unsigned target, std::vector<Control> controls = {} );

  unsigned target() const noexcept { return target_; }
  std::span<const Control> controls() const noexcept { return controls_; }
  std::size_t num_controls() const noexcept { return controls_.size(); }

  bool has_control_on( unsigned line ) const noexcept;
  bool touches( unsigned line ) const noexcept { return line == target_ || has_control_on( line ); }
  unsigned max_line() const noexcept;

  GateMasks masks( unsigned n ) const noexcept;
  bool fires( Minterm x, unsigned n ) const noexcept { return masks( n ).fires( x ); }

  friend bool operator==( const Gate&, const Gate& ) = default;
  friend auto operator<=>( const Gate&, const Gate& ) = default;

private:
  unsigned target_;
  std::vector<Control> controls_;
};

/// "X(x7)", "CNOT(x3',x1)", "Toff(x1,x4,x3)"; the target is always last.
std::string to_string( const Gate& g );

/// Two gates commute when neither target feeds the other's controls.
bool commute( const Gate& a, const Gate& b ) noexcept;

Minterm eval_gate( const Gate& g, Minterm x, unsigned n ) noexcept;

/*! \brief Ordered gate list over n lines, applied left to right to a ket. */
class Circuit
{
public:
  explicit Circuit( unsigned n = 0 ) : n_( n ) {}
  Circuit( unsigned n, std::vector<Gate> gates );

  unsigned num_lines() const noexcept { return n_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  std::size_t size() const noexcept { return gates_.size(); }
  bool empty() const noexcept { return gates_.empty(); }

  void push_back( Gate g );
  void append( std::span<const Gate> gates );

  std::vector<GateMasks> masks() const;

  friend bool operator==( const Circuit&, const Circuit& ) = default;

private:
  unsigned n_;
  std::vector<Gate> gates_;
};

Minterm eval_circuit( const Circuit& c, Minterm x ) noexcept;

/// Simulates every basis state (OpenMP kernel for large n).
ReversibleFunction to_permutation( const Circuit& c );

struct VerificationReport
{
  bool pass = false;
  std::optional<Minterm> witness;
  Minterm expected = 0;
  Minterm actual = 0;

  explicit operator bool() const noexcept { return pass; }
};

VerificationReport verify( const Circuit& c, const ReversibleFunction& f );

/// For self-inverse gates the reversed list realises the inverse permutation.
Circuit reverse( const Circuit& c );

} // namespace mqm
