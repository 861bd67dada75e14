#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cube.hpp"
#include "function.hpp"
#include "gate.hpp"

namespace mqm
{

/*! \brief Members split into (prefix group) x (suffix pattern) blocks.
 *
 * Prefixes are the bits of x_1..x_{mid-1}, suffixes those of x_mid..x_n.
 * Pattern k pairs `groups[k]` with `subfunctions[k]`; both are sorted.
 */
struct PatternSplit
{
  unsigned n = 0;
  unsigned mid = 2;
  std::vector<std::vector<Minterm>> subfunctions;
  std::vector<std::vector<Minterm>> groups;

  unsigned prefix_vars() const noexcept { return mid - 1; }
  unsigned suffix_vars() const noexcept { return n - mid + 1; }
  std::size_t num_patterns() const noexcept { return groups.size(); }

  /// Sum over patterns of |group| + |subfunction|.
  std::size_t factor_size() const noexcept;

  /// The member set the split describes.
  std::vector<Minterm> reconstruct() const;
};

/// Groups prefixes by identical suffix sets; patterns ordered by first prefix.
PatternSplit find_patterns( std::span<const Minterm> members, unsigned n, unsigned mid );
PatternSplit find_patterns( const DifferenceVector& v, unsigned mid );

/*! \brief Two complementary patterns collapse to one XOR of two factors.
 *
 * Applies when the two suffix sets are complements and so are the two
 * prefix sets. The indicator then equals subfunction_2(suffix) xor group_1(prefix).
 */
struct ComplementShortcut
{
  std::vector<Minterm> group;        ///< over the prefix variables
  std::vector<Minterm> subfunction;  ///< over the suffix variables
};

std::optional<ComplementShortcut> complement_shortcut( const PatternSplit& split );

/// Indicator over all 2^n minterms of the shortcut's XOR form.
std::vector<std::uint8_t> shortcut_indicator( const ComplementShortcut& s, unsigned n, unsigned mid );

/// Best mid by (patterns x factor size), preferring ceil(n/2) on ties.
PatternSplit choose_split( std::span<const Minterm> members, unsigned n );

struct DecompositionOptions
{
  std::optional<unsigned> mid;
  bool templates = true;
  /// Lines that may carry a partial result (uncleared, not the main line).
  std::vector<unsigned> working_lines;
};

/*! \brief Gates clearing the paired members of V_main via a split.
 *
 * `members` must be closed under flipping the main variable. Each factor is
 * minimized over its own variables and the products are emitted as gates.
 * Returns nullopt when the split does not shrink the problem.
 */
struct DecomposedGates
{
  std::vector<Gate> gates;
  bool uses_working_line = false;
  PatternSplit split;
};

std::optional<DecomposedGates> synthesize_decomposed( std::span<const Minterm> members,
                                                      unsigned n,
                                                      unsigned main,
                                                      const DecompositionOptions& options = {} );

} // namespace mqm
