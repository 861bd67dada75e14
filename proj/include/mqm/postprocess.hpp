#pragma once

#include <span>
#include <vector>

#include "cube.hpp"
#include "gate.hpp"

namespace mqm
{

/// Why a gate entered the synthesis log; only evaluation gates are rewritten.
enum class GateRole : std::uint8_t
{
  evaluation,
  swap,
  fallback,
  working
};

struct LoggedGate
{
  Gate gate;
  GateRole role = GateRole::evaluation;
};

/// XOR of product terms (n-variable cubes, free at the target) driving one line.
struct EsopLine
{
  unsigned target = 1;
  std::vector<Cube> terms;
};

/// Removes terms that occur an even number of times; one copy survives an odd count.
EsopLine cancel_duplicates( EsopLine line );

/*! Shared part mu, residue kappa1 and single literal `ell` on another line:
 *  (kappa1 -> ell.line), (mu, ell -> target), (kappa1 -> ell.line). */
std::vector<Gate> factor_single_literal( const Cube& mu, const Cube& kappa1, Control ell, unsigned target );

/*! Shared part mu, residues kappa1 and kappa2, helper line m in any state:
 *  (m, mu -> t), (kappa1 -> m), (kappa2 -> m), (m, mu -> t), (kappa2 -> m), (kappa1 -> m). */
std::vector<Gate> factor_free_line( const Cube& mu, const Cube& kappa1, const Cube& kappa2, unsigned target, unsigned free_line );

/// Same effect with the roles swapped: mu is folded into m, the residues are controlled by m.
std::vector<Gate> factor_free_line_swapped( const Cube& mu, const Cube& kappa1, const Cube& kappa2, unsigned target, unsigned free_line );

/*! Line i driven by mu, line j by mu*kappa:
 *  (x_i kappa -> j), (mu -> i), (x_i kappa -> j). */
std::vector<Gate> factor_shared_control( const Cube& mu, const Cube& kappa, unsigned i, unsigned j );

/*! Line i driven by mu*kappa1, line j by mu*kappa2, helper line m:
 *  (m kappa1 -> i), (m kappa2 -> j), (mu -> m), (m kappa1 -> i), (m kappa2 -> j), (mu -> m). */
std::vector<Gate> factor_shared_free_line( const Cube& mu, const Cube& kappa1, const Cube& kappa2, unsigned i, unsigned j, unsigned free_line );

struct FactorResult
{
  std::vector<Gate> gates;    ///< realises the whole line
  std::size_t rewrites = 0;
  bool no_free_line = false;  ///< some pair wanted a helper line and none was available
};

/// Factors pairs of terms sharing literals, when that lowers the weight.
FactorResult factor_within( const EsopLine& line );

/*! \brief One cross-line rewrite between two lines, if any qualifies.
 *
 * Throws template_inapplicable when no pair shares at least two literals,
 * when the shared literals appear complemented, or when a helper line is
 * needed and none is free.
 */
struct AcrossResult
{
  std::vector<Gate> gates;       ///< replaces `used_i` and `used_j`
  Cube used_i;
  Cube used_j;
};
AcrossResult factor_across( const EsopLine& line_i, const EsopLine& line_j );

/*! \brief Rewrites maximal runs of same-target evaluation gates.
 *
 * Duplicate cancellation, factoring within a run, then between adjacent runs.
 * Other gates pass through untouched. The result has the same permutation.
 */
std::vector<Gate> postprocess( std::span<const LoggedGate> log, unsigned n );

} // namespace mqm
