// Command line front end: synth, verify, cost, simulate, bench.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <mqm/cost.hpp>
#include <mqm/error.hpp>
#include <mqm/io.hpp>
#include <mqm/synthesis.hpp>

using namespace mqm;
using json = nlohmann::ordered_json;

namespace
{

json histogram_json( const GateHistogram& h )
{
  json out = json::object();
  for ( const auto& [m, count] : h )
  {
    out[std::to_string( m )] = count;
  }
  return out;
}

json levels_json( const std::optional<std::uint64_t>& levels )
{
  return levels ? json( *levels ) : json( nullptr );
}

std::string levels_text( const std::optional<std::uint64_t>& levels )
{
  return levels ? std::to_string( *levels ) : std::string( "unknown" );
}

CostTable table_from( const std::string& path )
{
  return path.empty() ? CostTable::from_environment() : CostTable::load( path );
}

struct SynthOptions
{
  std::string decompose = "auto";
  std::string order = "asc";
  bool no_postprocess = false;
  unsigned mid = 0;
};

SynthesisConfig config_from( const SynthOptions& o )
{
  SynthesisConfig cfg;
  cfg.decompose = o.decompose == "on" ? DecomposeMode::on : o.decompose == "off" ? DecomposeMode::off : DecomposeMode::automatic;
  cfg.order = o.order == "desc" ? VectorOrder::descending : VectorOrder::ascending;
  cfg.postprocess = !o.no_postprocess;
  if ( o.mid != 0 )
  {
    cfg.mid = o.mid;
  }
  return cfg;
}

struct Run
{
  Circuit circuit;
  bool verified = false;
  double millis = 0;
};

Run run_synthesis( const ReversibleFunction& f, const SynthesisConfig& cfg )
{
  const auto start = std::chrono::steady_clock::now();
  Run r{ synthesize( f, cfg ), false, 0 };
  r.millis = std::chrono::duration<double, std::milli>( std::chrono::steady_clock::now() - start ).count();
  r.verified = static_cast<bool>( verify( r.circuit, f ) );
  return r;
}

json run_json( const std::string& name, const Run& r, const CostTable& table )
{
  const auto rep = report( r.circuit, table );
  json j;
  j["benchmark"] = name;
  j["n"] = r.circuit.num_lines();
  j["gates"] = histogram_json( rep.histogram );
  j["t_levels"] = levels_json( rep.t_levels );
  j["verified"] = r.verified;
  j["millis"] = r.millis;
  return j;
}

bool is_function_file( const std::filesystem::path& p )
{
  const auto ext = p.extension().string();
  return ext == ".tt" || ext == ".perm" || ext == ".real";
}

std::vector<Minterm> parse_bits( const std::string& bits )
{
  std::vector<Minterm> out;
  Minterm x = 0;
  for ( const char c : bits )
  {
    if ( c != '0' && c != '1' )
    {
      throw Error( ErrorCode::bad_row, "input '" + bits + "' is not a bit string" );
    }
    x = ( x << 1 ) | static_cast<Minterm>( c == '1' );
  }
  out.push_back( x );
  return out;
}

std::string bit_string( Minterm x, unsigned n )
{
  std::string s;
  for ( unsigned v = 1; v <= n; ++v )
  {
    s += var_bit( x, v, n ) ? '1' : '0';
  }
  return s;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Multi-output Quine-McCluskey synthesis of reversible circuits" };
  app.require_subcommand( 1 );

  std::string function_path;
  std::string out_path;
  std::string circuit_path;
  std::string cost_table;
  std::string input_bits;
  std::string bench_dir;
  bool as_json = false;
  SynthOptions so;

  auto* synth = app.add_subcommand( "synth", "Synthesize a circuit for a reversible function" );
  synth->add_option( "function", function_path, "function file (.tt, .perm or .real)" )->required()->check( CLI::ExistingFile );
  synth->add_option( "-o,--output", out_path, "write the circuit as .real" );
  synth->add_option( "--decompose", so.decompose, "pattern decomposition" )->check( CLI::IsMember( { "auto", "on", "off" } ) );
  synth->add_option( "--order", so.order, "difference vector order" )->check( CLI::IsMember( { "asc", "desc" } ) );
  synth->add_flag( "--no-postprocess", so.no_postprocess, "skip the rewriting pass" );
  synth->add_option( "--mid", so.mid, "split point for decomposition" );
  synth->add_option( "--cost-table", cost_table, "cost table file" );
  synth->add_flag( "--json", as_json, "print a JSON report" );

  auto* ver = app.add_subcommand( "verify", "Check that a circuit realises a function" );
  ver->add_option( "function", function_path, "function file (.tt, .perm or .real)" )->required()->check( CLI::ExistingFile );
  ver->add_option( "circuit", circuit_path, ".real circuit" )->required()->check( CLI::ExistingFile );

  auto* cost = app.add_subcommand( "cost", "T-levels of a .real circuit or a gate histogram" );
  cost->add_option( "file", circuit_path, ".real circuit or .hist histogram" )->required()->check( CLI::ExistingFile );
  cost->add_option( "--cost-table", cost_table, "cost table file; MQM_COST_TABLE otherwise" );
  cost->add_flag( "--json", as_json, "print a JSON report" );

  auto* sim = app.add_subcommand( "simulate", "Run one basis state through a circuit" );
  sim->add_option( "circuit", circuit_path, ".real circuit" )->required()->check( CLI::ExistingFile );
  sim->add_option( "--input", input_bits, "input bits, x1 first" )->required();

  auto* bench = app.add_subcommand( "bench", "Synthesize every function file in a directory" );
  bench->add_option( "dir", bench_dir, "directory of .tt, .perm and .real files" )->required()->check( CLI::ExistingDirectory );
  bench->add_option( "--decompose", so.decompose, "pattern decomposition" )->check( CLI::IsMember( { "auto", "on", "off" } ) );
  bench->add_option( "--order", so.order, "difference vector order" )->check( CLI::IsMember( { "asc", "desc" } ) );
  bench->add_flag( "--no-postprocess", so.no_postprocess, "skip the rewriting pass" );
  bench->add_option( "--cost-table", cost_table, "cost table file" );
  bench->add_flag( "--json", as_json, "print a JSON array" );

  CLI11_PARSE( app, argc, argv );

  try
  {
    if ( *synth )
    {
      const auto f = load_function( function_path );
      const auto r = run_synthesis( f, config_from( so ) );
      const auto table = table_from( cost_table );
      if ( !out_path.empty() )
      {
        write_file( out_path, write_real( r.circuit ) );
      }
      if ( as_json )
      {
        auto j = run_json( std::filesystem::path( function_path ).filename().string(), r, table );
        j["circuit"] = json::array();
        for ( const auto& g : r.circuit.gates() )
        {
          j["circuit"].push_back( to_string( g ) );
        }
        std::cout << j.dump( 2 ) << "\n";
      }
      else
      {
        for ( const auto& g : r.circuit.gates() )
        {
          std::cout << to_string( g ) << "\n";
        }
        std::cout << "gates " << r.circuit.size() << ", T-levels " << levels_text( report( r.circuit, table ).t_levels ) << ", "
                  << ( r.verified ? "verified" : "NOT verified" ) << "\n";
      }
      return r.verified ? 0 : 1;
    }
    if ( *ver )
    {
      const auto f = load_function( function_path );
      const auto c = load_circuit( circuit_path );
      if ( c.num_lines() != f.num_vars() )
      {
        std::cout << "mismatch: circuit has " << c.num_lines() << " lines, function " << f.num_vars() << " variables\n";
        return 1;
      }
      const auto v = verify( c, f );
      if ( v )
      {
        std::cout << "verified\n";
        return 0;
      }
      const unsigned n = f.num_vars();
      std::cout << "mismatch at input " << bit_string( *v.witness, n ) << ": expected " << bit_string( v.expected, n ) << ", got "
                << bit_string( v.actual, n ) << "\n";
      return 1;
    }
    if ( *cost )
    {
      const auto table = table_from( cost_table );
      GateHistogram h;
      if ( std::filesystem::path( circuit_path ).extension() == ".hist" )
      {
        h = parse_histogram( read_file( circuit_path ) );
      }
      else
      {
        h = gate_histogram( load_circuit( circuit_path ) );
      }
      const auto levels = t_levels( h, table );
      if ( as_json )
      {
        json j;
        j["gates"] = histogram_json( h );
        j["t_levels"] = levels;
        std::cout << j.dump( 2 ) << "\n";
      }
      else
      {
        std::cout << levels << "\n";
      }
      return 0;
    }
    if ( *sim )
    {
      const auto c = load_circuit( circuit_path );
      if ( input_bits.size() != c.num_lines() )
      {
        throw Error( ErrorCode::line_mismatch, "input has " + std::to_string( input_bits.size() ) + " bits, circuit " +
                                                   std::to_string( c.num_lines() ) + " lines" );
      }
      std::cout << bit_string( eval_circuit( c, parse_bits( input_bits ).front() ), c.num_lines() ) << "\n";
      return 0;
    }
    if ( *bench )
    {
      std::vector<std::filesystem::path> files;
      for ( const auto& e : std::filesystem::directory_iterator( bench_dir ) )
      {
        if ( e.is_regular_file() && is_function_file( e.path() ) )
        {
          files.push_back( e.path() );
        }
      }
      std::sort( files.begin(), files.end(), []( const auto& a, const auto& b ) { return a.filename() < b.filename(); } );
      const auto table = table_from( cost_table );
      const auto cfg = config_from( so );
      json rows = json::array();
      bool all_ok = true;
      for ( const auto& p : files )
      {
        const auto r = run_synthesis( load_function( p.string() ), cfg );
        all_ok = all_ok && r.verified;
        rows.push_back( run_json( p.filename().string(), r, table ) );
      }
      if ( as_json )
      {
        std::cout << rows.dump( 2 ) << "\n";
      }
      else
      {
        for ( const auto& j : rows )
        {
          std::cout << j["benchmark"].get<std::string>() << " n=" << j["n"] << " gates=" << j["gates"].dump()
                    << " t_levels=" << j["t_levels"].dump() << " verified=" << j["verified"] << " millis=" << j["millis"] << "\n";
        }
      }
      return all_ok ? 0 : 1;
    }
  }
  catch ( const Error& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
