#pragma once

#include <span>
#include <vector>

#include "cube.hpp"
#include "function.hpp"
#include "gate.hpp"

namespace mqm
{

struct ScoredMinterm
{
  Minterm index = 0;
  int score = 0;

  friend bool operator==( const ScoredMinterm&, const ScoredMinterm& ) = default;
};

/*! \brief Scores the members of V_i.
 *
 * -1 when the member's partner across the main variable is also a member,
 * 0 otherwise. Of each such pair only the smaller index is kept.
 */
std::vector<ScoredMinterm> score_minterms( const DifferenceVector& v );

struct MergeResult
{
  std::vector<Cube> merged;    ///< deduplicated
  std::vector<bool> consumed;  ///< parallel to the input
};

/// One round of pairwise distance-1 merging among cubes with equal care sets.
MergeResult merge_pass( std::span<const Cube> cubes );

/// All maximal cubes inside `members`.
std::vector<Cube> prime_implicants( std::span<const Minterm> members, unsigned n );

/// Same, starting from scored seed cubes; scores add up through merges.
std::vector<Cube> prime_implicants( std::span<const Cube> seeds );

struct CoverSelection
{
  std::vector<Cube> cubes;
  bool used_fallback = false;  ///< leftover members were covered by single-minterm cubes
};

/*! \brief Greedy XOR cover.
 *
 * On return every member lies in an odd number of chosen cubes and every
 * minterm outside members and dont_cares in an even number.
 */
CoverSelection select_cover( std::span<const Cube> pis,
                             std::span<const Minterm> members,
                             std::span<const Minterm> dont_cares = {} );

/// Maximal cubes built from unpaired members, free in the main variable.
std::vector<Cube> detect_spis( const DifferenceVector& v );

enum class TemplateId
{
  t1 = 1,
  t2,
  t3,
  t4,
  t5,
  t6,
  t7,
  exorlink
};

const char* to_string( TemplateId id ) noexcept;

/*! \brief A rewrite of a few cubes into others with the same XOR.
 *
 * `extensions` are the cells the replacements cover twice.
 */
struct TemplateMatch
{
  TemplateId id = TemplateId::exorlink;
  std::vector<Cube> participants;
  std::vector<Cube> extensions;
  std::vector<Cube> replacements;
};

/// Which template a distance-2 pair falls under.
TemplateId classify_pair( const Cube& a, const Cube& b );

/*! \brief All pair and triple rewrites among `pis`, with `spis` allowed as partners.
 *
 * Ordered by template id, then by total participant size, largest first.
 */
std::vector<TemplateMatch> match_templates( std::span<const Cube> pis, std::span<const Cube> spis = {} );

/// XOR of product terms feeding one target line.
struct ControlExpression
{
  unsigned target = 1;
  std::vector<Cube> terms;
};

/*! \brief Gates realising `x_target ^= expr`.
 *
 * One C^mNOT per term; with `factor`, a pair of terms sharing a common part
 * where one residue is a single literal becomes a conjugated triple. A term
 * that mentions the target itself is only accepted in that factored shape.
 */
std::vector<Gate> emit_gates( const ControlExpression& expr, bool factor = true );

/// Sum of heuristic gate weights of the cubes read as controls.
std::uint64_t esop_weight( std::span<const Cube> cubes );

struct EsopOptions
{
  bool templates = true;  ///< template and exorlink rewrites after cover selection
};

/*! \brief ESOP over n variables: odd on `on`, free on `dc`, even elsewhere.
 *
 * Prime implicants, greedy cover, then weight-decreasing rewrites.
 */
std::vector<Cube> minimize_esop( std::span<const Minterm> on,
                                 std::span<const Minterm> dc,
                                 unsigned n,
                                 const EsopOptions& options = {} );

/// Weight-decreasing cancel / merge / rewrite loop; `dc_cubes` lie inside the don't-care set.
std::vector<Cube> improve_esop( std::vector<Cube> cubes, std::span<const Cube> dc_cubes, const EsopOptions& options = {} );

} // namespace mqm
