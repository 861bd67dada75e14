#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace mqm
{

using Minterm = std::uint32_t;

/// Dense permutations are stored in full, so the variable count is capped.
inline constexpr unsigned kMaxVariables = 20;

/*! Variables are numbered 1..n; x_1 is the most-significant bit of a minterm
 *  index, so the index string "0111" reads x_1=0, x_2=1, x_3=1, x_4=1. */
constexpr Minterm var_mask( unsigned var, unsigned n ) noexcept
{
  return Minterm{ 1 } << ( n - var );
}

constexpr bool var_bit( Minterm x, unsigned var, unsigned n ) noexcept
{
  return ( ( x >> ( n - var ) ) & 1u ) != 0;
}

class Gate;

/*! \brief A bijection on n-bit minterms.
 *
 * `images()[x]` is F(x). Instances are immutable once built; every public
 * constructor checks bijectivity.
 */
class ReversibleFunction
{
public:
  ReversibleFunction() = default;

  static ReversibleFunction identity( unsigned n );

  /// Builds F with F(x) = rows[x]. Throws bad_length / not_bijective.
  static ReversibleFunction from_truth_table( std::span<const Minterm> rows, unsigned n );

  unsigned num_vars() const noexcept { return n_; }
  std::size_t size() const noexcept { return perm_.size(); }
  Minterm operator()( Minterm x ) const { return perm_[x]; }
  std::span<const Minterm> images() const noexcept { return perm_; }

  bool is_identity() const noexcept;
  ReversibleFunction inverse() const;

  friend bool operator==( const ReversibleFunction&, const ReversibleFunction& ) = default;

private:
  ReversibleFunction( unsigned n, std::vector<Minterm> perm ) : n_( n ), perm_( std::move( perm ) ) {}

  friend ReversibleFunction apply_gate_inputs( const ReversibleFunction&, const Gate& );
  friend class FunctionBuilder;

  unsigned n_ = 0;
  std::vector<Minterm> perm_;
};

/// Internal escape hatch for kernels that already guarantee a bijection.
class FunctionBuilder
{
public:
  static ReversibleFunction adopt_unchecked( unsigned n, std::vector<Minterm> perm )
  {
    return ReversibleFunction( n, std::move( perm ) );
  }
};

/*! \brief V_i: sorted minterms x with bit_i(x) != bit_i(F(x)).
 *
 * The cardinality is always even for a bijection.
 */
struct DifferenceVector
{
  unsigned main = 1;
  unsigned n = 0;
  std::vector<Minterm> members;

  std::size_t size() const noexcept { return members.size(); }
  bool empty() const noexcept { return members.empty(); }
  bool contains( Minterm x ) const;

  friend bool operator==( const DifferenceVector&, const DifferenceVector& ) = default;
};

DifferenceVector difference_vector( const ReversibleFunction& f, unsigned var );
DifferenceVector difference_vector( std::span<const Minterm> perm, unsigned n, unsigned var );
std::vector<DifferenceVector> difference_vectors( const ReversibleFunction& f );

/// F'(x) = F(g(x)): relabels input rows; the result stays a bijection.
ReversibleFunction apply_gate_inputs( const ReversibleFunction& f, const Gate& g );

/// In-place counterpart used by the synthesis loop.
void apply_gate_inputs_inplace( std::vector<Minterm>& perm, unsigned n, const Gate& g );

/*! \brief A pair of adjacent variables (or the trailing single one).
 *
 * Segments pair (x_1x_2)(x_3x_4)...; with odd n the last variable forms a
 * singleton on the right. `index` counts from the right, starting at 1.
 */
struct Segment
{
  unsigned index = 0;
  unsigned first = 0;
  unsigned last = 0;

  unsigned width() const noexcept { return last - first + 1; }
  bool covers( unsigned var ) const noexcept { return var >= first && var <= last; }

  friend bool operator==( const Segment&, const Segment& ) = default;
};

/// Segments ordered left to right.
std::vector<Segment> segments( unsigned n );

/// Position (0-based, left to right) of the segment holding `var`.
unsigned segment_position( unsigned var );

} // namespace mqm
