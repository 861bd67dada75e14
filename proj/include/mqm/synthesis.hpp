#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cube.hpp"
#include "function.hpp"
#include "gate.hpp"
#include "postprocess.hpp"

namespace mqm
{

enum class VectorOrder
{
  ascending,  ///< fewest members first
  descending
};

enum class DecomposeMode
{
  automatic,  ///< when n > 10 or a vector has more than 256 members
  on,
  off
};

struct SynthesisConfig
{
  VectorOrder order = VectorOrder::ascending;
  unsigned lookahead = 1;
  /// 0 means 4^n.
  std::uint64_t gate_budget = 0;
  bool templates = true;
  DecomposeMode decompose = DecomposeMode::automatic;
  std::optional<unsigned> mid;
  bool postprocess = true;
  /// Kept for interface stability; the engine is deterministic.
  std::uint64_t seed = 0;
};

/*! \brief Mutable synthesis state: the current function and its open vectors.
 *
 * `perm` is F composed with every logged gate on the input side. A line is
 * open while its difference vector is nonempty.
 */
class WorkList
{
public:
  explicit WorkList( const ReversibleFunction& f, VectorOrder order = VectorOrder::ascending );

  unsigned num_vars() const noexcept { return n_; }
  std::span<const Minterm> perm() const noexcept { return perm_; }
  const std::vector<LoggedGate>& log() const noexcept { return log_; }

  /// Open lines in processing order.
  const std::vector<unsigned>& open() const noexcept { return open_; }
  bool is_open( unsigned line ) const noexcept;
  bool done() const noexcept { return open_.empty(); }

  DifferenceVector vector( unsigned line ) const;
  std::size_t vector_size( unsigned line ) const;

  /// Applies g on the input side and logs it.
  void apply( const Gate& g, GateRole role );

  /// Recounts every open vector, drops emptied ones, restores the order.
  void refresh();

private:
  unsigned n_;
  VectorOrder order_;
  std::vector<Minterm> perm_;
  std::vector<unsigned> open_;
  std::vector<LoggedGate> log_;
};

/// Recomputes every open vector after applying `gates` (input side).
void update_vectors( WorkList& state, std::span<const Gate> gates, GateRole role = GateRole::evaluation );

/*! \brief The four segment-local CNOT options that make a and b adjacent.
 *
 * a and b must agree everywhere except one segment, where they hold
 * complementary literal pairs. Throws not_swappable otherwise.
 */
std::vector<Gate> swap_options( const Cube& a, const Cube& b );

/*! \brief Picks the swap option with the best one-step outcome.
 *
 * Options targeting the main line or a cleared line are skipped. Ranking:
 * unpaired members of V_main after the swap, then total vector size.
 */
struct SwapChoice
{
  Gate gate;
  std::size_t unpaired_after = 0;
  std::size_t total_after = 0;
};

SwapChoice swap_phase( const Cube& a, const Cube& b, const WorkList& state, unsigned main );

/// C^{n-1}NOT on `main` controlled by every other bit of m.
Gate fallback_eliminate( Minterm m, unsigned main, unsigned n );

/// Number of members of V_main whose partner across the main variable is not a member.
std::size_t unpaired_count( std::span<const Minterm> members, unsigned main, unsigned n );

/// Drives V_main of the state to empty, logging every gate, then refreshes the open lines.
void evaluate_vector( WorkList& state, unsigned main, const SynthesisConfig& config = {} );

/// Gates in log order; the circuit applies them left to right.
Circuit synthesize( const ReversibleFunction& f, const SynthesisConfig& config = {} );

struct SynthesisTrace
{
  Circuit circuit;
  std::vector<LoggedGate> log;  ///< before postprocessing
};

SynthesisTrace synthesize_traced( const ReversibleFunction& f, const SynthesisConfig& config = {} );

} // namespace mqm
