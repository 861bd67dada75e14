#include "mqm/cost.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "mqm/error.hpp"

namespace mqm
{

namespace
{

/// Parses "key=<uint>" and returns the number; nullopt when the key differs.
std::optional<std::uint64_t> keyed_value( const std::string& token, std::string_view key )
{
  if ( token.size() <= key.size() + 1 || token.compare( 0, key.size(), key ) != 0 || token[key.size()] != '=' )
  {
    return std::nullopt;
  }
  const auto digits = token.substr( key.size() + 1 );
  if ( digits.find_first_not_of( "0123456789" ) != std::string::npos )
  {
    return std::nullopt;
  }
  return std::stoull( digits );
}

/// Splits "a=1 b=2" lines; '#' starts a comment.
template<typename Fn>
void for_each_pair( std::string_view text, std::string_view first, std::string_view second, ErrorCode code, Fn&& fn )
{
  std::istringstream in{ std::string( text ) };
  std::string line;
  while ( std::getline( in, line ) )
  {
    if ( const auto hash = line.find( '#' ); hash != std::string::npos )
    {
      line.erase( hash );
    }
    std::istringstream words( line );
    std::string a, b, extra;
    if ( !( words >> a ) )
    {
      continue;
    }
    words >> b;
    const auto ka = keyed_value( a, first );
    const auto kb = keyed_value( b, second );
    if ( !ka || !kb || ( words >> extra ) )
    {
      throw Error( code, "cannot read '" + line + "'" );
    }
    fn( static_cast<unsigned>( *ka ), *kb );
  }
}

} // namespace

CostTable::CostTable() : costs_{ { 0, 0 }, { 1, 0 }, { 2, 2 }, { 3, 12 }, { 4, 32 }, { 5, 68 } }
{
}

CostTable CostTable::parse( std::string_view text )
{
  CostTable table;
  for_each_pair( text, "m", "cost", ErrorCode::invalid_cost_table,
                 [&]( unsigned m, std::uint64_t cost ) { table.costs_[m] = cost; } );
  table.validate();
  return table;
}

CostTable CostTable::load( const std::string& path )
{
  std::ifstream in( path );
  if ( !in )
  {
    throw Error( ErrorCode::io_failure, "cannot open " + path );
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse( buffer.str() );
}

CostTable CostTable::from_environment()
{
  const char* path = std::getenv( "MQM_COST_TABLE" );
  if ( path == nullptr || *path == '\0' )
  {
    return {};
  }
  return load( path );
}

std::optional<std::uint64_t> CostTable::find( unsigned m ) const
{
  const auto it = costs_.find( m );
  if ( it == costs_.end() )
  {
    return std::nullopt;
  }
  return it->second;
}

std::uint64_t CostTable::at( unsigned m ) const
{
  const auto c = find( m );
  if ( !c )
  {
    throw Error( ErrorCode::unknown_cost, "no T-level cost for a gate with " + std::to_string( m ) + " controls" );
  }
  return *c;
}

void CostTable::set( unsigned m, std::uint64_t cost )
{
  auto copy = costs_;
  costs_[m] = cost;
  try
  {
    validate();
  }
  catch ( ... )
  {
    costs_ = std::move( copy );
    throw;
  }
}

void CostTable::validate() const
{
  std::uint64_t previous = 0;
  for ( const auto& [m, cost] : costs_ )
  {
    if ( cost < previous )
    {
      throw Error( ErrorCode::invalid_cost_table, "cost for m=" + std::to_string( m ) + " is below a smaller m" );
    }
    previous = cost;
  }
}

GateHistogram gate_histogram( std::span<const Gate> gates )
{
  GateHistogram h;
  for ( const auto& g : gates )
  {
    ++h[static_cast<unsigned>( g.num_controls() )];
  }
  return h;
}

GateHistogram gate_histogram( const Circuit& c )
{
  return gate_histogram( c.gates() );
}

std::uint64_t t_levels( const GateHistogram& histogram, const CostTable& table )
{
  std::uint64_t total = 0;
  for ( const auto& [m, count] : histogram )
  {
    if ( count != 0 )
    {
      total += table.at( m ) * count;
    }
  }
  return total;
}

std::uint64_t t_levels( const Circuit& c, const CostTable& table )
{
  return t_levels( gate_histogram( c ), table );
}

CostReport report( const Circuit& c, const CostTable& table )
{
  CostReport r;
  r.lines = c.num_lines();
  r.gates = c.size();
  r.histogram = gate_histogram( c );
  try
  {
    r.t_levels = t_levels( r.histogram, table );
  }
  catch ( const Error& e )
  {
    if ( e.code() != ErrorCode::unknown_cost )
    {
      throw;
    }
  }
  return r;
}

GateHistogram parse_histogram( std::string_view text )
{
  GateHistogram h;
  for_each_pair( text, "m", "count", ErrorCode::bad_row,
                 [&]( unsigned m, std::uint64_t count ) { h[m] += static_cast<std::size_t>( count ); } );
  return h;
}

std::string write_histogram( const GateHistogram& h )
{
  std::string out;
  for ( const auto& [m, count] : h )
  {
    out += "m=" + std::to_string( m ) + " count=" + std::to_string( count ) + "\n";
  }
  return out;
}

std::uint64_t heuristic_weight( unsigned m ) noexcept
{
  static constexpr std::uint64_t known[] = { 0, 0, 2, 12, 32, 68 };
  const std::uint64_t t = m < 6 ? known[m] : ( std::uint64_t{ 68 } << std::min( m - 5, 40u ) );
  return t * 16 + m + 1;
}

} // namespace mqm
