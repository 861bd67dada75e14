#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gate.hpp"

namespace mqm
{

/*! \brief Product term over n variables, each position 0, 1 or X.
 *
 * Stored as a care mask (positions holding a literal) and the literal
 * values. The score is carried along merges; it is not part of equality.
 */
class Cube
{
public:
  Cube() = default;
  Cube( unsigned n, Minterm care, Minterm value, int score = 0 );

  static Cube minterm( Minterm x, unsigned n, int score = 0 );
  static Cube universe( unsigned n );

  /// Accepts '0', '1', 'X' (or '-'); commas and spaces are layout only.
  static Cube parse( std::string_view text );

  unsigned num_vars() const noexcept { return n_; }
  Minterm care() const noexcept { return care_; }
  Minterm value() const noexcept { return value_; }
  int score() const noexcept { return score_; }
  void set_score( int s ) noexcept { score_ = s; }

  /// '0', '1' or 'X' at variable `var` (1-based).
  char at( unsigned var ) const noexcept;
  Cube with( unsigned var, char literal ) const;

  unsigned num_literals() const noexcept;
  std::size_t size() const noexcept { return std::size_t{ 1 } << ( n_ - num_literals() ); }
  bool contains( Minterm x ) const noexcept { return ( x & care_ ) == value_; }
  bool contains( const Cube& other ) const noexcept;
  bool intersects( const Cube& other ) const noexcept;
  std::optional<Cube> intersection( const Cube& other ) const;
  std::vector<Minterm> minterms() const;

  /// Literals as gate controls, in line order.
  std::vector<Control> controls() const;

  /// Bit k set when the segment at position k (left to right) holds an X.
  unsigned direction() const;

  /// "0X11" or, segmented, "0X,11".
  std::string to_string( bool segmented = false ) const;

  friend bool operator==( const Cube& a, const Cube& b ) noexcept
  {
    return a.n_ == b.n_ && a.care_ == b.care_ && a.value_ == b.value_;
  }

private:
  unsigned n_ = 0;
  Minterm care_ = 0;
  Minterm value_ = 0;
  int score_ = 0;
};

/// Orders by literal string with '0' < '1' < 'X'.
bool lexicographic_less( const Cube& a, const Cube& b );

struct CubeHash
{
  std::size_t operator()( const Cube& c ) const noexcept
  {
    return ( std::size_t{ c.care() } << 32 ) ^ c.value() ^ ( std::size_t{ c.num_vars() } << 27 );
  }
};

/// Number of positions whose symbols differ.
unsigned distance( const Cube& a, const Cube& b ) noexcept;
std::vector<unsigned> differing_vars( const Cube& a, const Cube& b );

/// Classic merge: same care set, values one bit apart. Scores add.
std::optional<Cube> merge( const Cube& a, const Cube& b );

/// Cube equal to a xor b when the two differ in exactly one position.
std::optional<Cube> xor_merge( const Cube& a, const Cube& b );

/*! \brief Rewrites a xor b as another pair of cubes when they differ in two positions.
 *
 * Both orientations are returned; the first changes a at the later
 * position. Empty when the distance is not 2.
 */
std::vector<std::pair<Cube, Cube>> exorlink( const Cube& a, const Cube& b );

/// Parity of the number of cubes containing x.
bool xor_evaluate( std::span<const Cube> cubes, Minterm x ) noexcept;

/// XOR indicator over all 2^n minterms.
std::vector<std::uint8_t> xor_indicator( std::span<const Cube> cubes, unsigned n );

/// Inserts a free position at `var` (1-based in the result) into a cube over n-1 variables.
Cube lift( const Cube& c, unsigned var );

/// Drops variable `var` from a minterm over n variables.
Minterm project_out( Minterm x, unsigned var, unsigned n ) noexcept;
Minterm insert_bit( Minterm x, unsigned var, unsigned n, bool bit ) noexcept;

} // namespace mqm
