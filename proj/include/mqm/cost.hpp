#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "gate.hpp"

namespace mqm
{

/// Control count m -> number of gates with m controls.
using GateHistogram = std::map<unsigned, std::size_t>;

/*! \brief T-levels charged per C^mNOT, keyed by control count.
 *
 * Defaults cover m = 0..5. Larger m must be supplied by the user, either
 * through `parse` or the file named by MQM_COST_TABLE.
 */
class CostTable
{
public:
  CostTable();

  static CostTable defaults() { return {}; }

  /// Lines "m=<int> cost=<int>"; '#' starts a comment. Entries override defaults.
  static CostTable parse( std::string_view text );
  static CostTable load( const std::string& path );

  /// Defaults, overridden by MQM_COST_TABLE when that variable names a file.
  static CostTable from_environment();

  std::optional<std::uint64_t> find( unsigned m ) const;
  std::uint64_t at( unsigned m ) const;

  /// Throws invalid_cost_table if the table would stop being monotone.
  void set( unsigned m, std::uint64_t cost );

  const std::map<unsigned, std::uint64_t>& entries() const noexcept { return costs_; }

private:
  void validate() const;

  std::map<unsigned, std::uint64_t> costs_;
};

GateHistogram gate_histogram( std::span<const Gate> gates );
GateHistogram gate_histogram( const Circuit& c );

std::uint64_t t_levels( const GateHistogram& histogram, const CostTable& table = CostTable{} );
std::uint64_t t_levels( const Circuit& c, const CostTable& table = CostTable{} );

struct CostReport
{
  unsigned lines = 0;
  std::size_t gates = 0;
  GateHistogram histogram;
  /// Empty when the table has no entry for some control count in the circuit.
  std::optional<std::uint64_t> t_levels;
};

CostReport report( const Circuit& c, const CostTable& table = CostTable{} );

/// "m=2 count=11" lines, the same layout the histogram fixtures use.
GateHistogram parse_histogram( std::string_view text );
std::string write_histogram( const GateHistogram& h );

/*! Ranking weight used while minimizing: T-levels dominate, then control
 *  count, then gate count. Defined for every m (extrapolated past 5). */
std::uint64_t heuristic_weight( unsigned m ) noexcept;

} // namespace mqm
