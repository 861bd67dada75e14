#include "mqm/io.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "mqm/error.hpp"

namespace mqm
{

namespace
{

std::vector<std::string> content_lines( std::string_view text )
{
  std::vector<std::string> out;
  std::istringstream in{ std::string( text ) };
  std::string line;
  while ( std::getline( in, line ) )
  {
    if ( const auto hash = line.find( '#' ); hash != std::string::npos )
    {
      line.erase( hash );
    }
    const auto first = line.find_first_not_of( " \t\r" );
    if ( first == std::string::npos )
    {
      continue;
    }
    const auto last = line.find_last_not_of( " \t\r" );
    out.push_back( line.substr( first, last - first + 1 ) );
  }
  return out;
}

std::vector<std::string> words( const std::string& line )
{
  std::istringstream in( line );
  std::vector<std::string> out;
  std::string w;
  while ( in >> w )
  {
    out.push_back( w );
  }
  return out;
}

std::optional<std::uint64_t> to_number( std::string_view s )
{
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars( s.data(), s.data() + s.size(), v );
  if ( ec != std::errc{} || p != s.data() + s.size() )
  {
    return std::nullopt;
  }
  return v;
}

/// Reads ".n <k>" from the first line; returns n and the remaining lines.
unsigned header_width( const std::vector<std::string>& lines )
{
  if ( lines.empty() )
  {
    throw Error( ErrorCode::bad_header, "missing .n line" );
  }
  const auto w = words( lines.front() );
  if ( w.size() != 2 || w[0] != ".n" )
  {
    throw Error( ErrorCode::bad_header, "expected '.n <int>', got '" + lines.front() + "'" );
  }
  const auto n = to_number( w[1] );
  if ( !n || *n == 0 || *n > kMaxVariables )
  {
    throw Error( ErrorCode::bad_header, "unsupported width '" + w[1] + "'" );
  }
  return static_cast<unsigned>( *n );
}

ReversibleFunction checked( unsigned n, const std::vector<Minterm>& images )
{
  try
  {
    return ReversibleFunction::from_truth_table( images, n );
  }
  catch ( const Error& e )
  {
    if ( e.code() == ErrorCode::not_bijective )
    {
      throw;
    }
    throw Error( ErrorCode::bad_row, e.what() );
  }
}

std::string line_name( unsigned line )
{
  return "x" + std::to_string( line );
}

} // namespace

ReversibleFunction parse_tt( std::string_view text )
{
  const auto lines = content_lines( text );
  const unsigned n = header_width( lines );
  const std::size_t rows = std::size_t{ 1 } << n;
  if ( lines.size() - 1 != rows )
  {
    throw Error( ErrorCode::bad_row, "expected " + std::to_string( rows ) + " rows, got " + std::to_string( lines.size() - 1 ) );
  }
  std::vector<Minterm> images;
  images.reserve( rows );
  for ( std::size_t r = 0; r < rows; ++r )
  {
    const auto& row = lines[r + 1];
    if ( row.size() != n || row.find_first_not_of( "01" ) != std::string::npos )
    {
      throw Error( ErrorCode::bad_row, "row " + std::to_string( r ) + " is '" + row + "'" );
    }
    Minterm y = 0;
    for ( const char c : row )
    {
      y = ( y << 1 ) | ( c == '1' ? 1u : 0u );
    }
    images.push_back( y );
  }
  return checked( n, images );
}

std::string write_tt( const ReversibleFunction& f )
{
  const unsigned n = f.num_vars();
  std::string out = ".n " + std::to_string( n ) + "\n";
  for ( const auto y : f.images() )
  {
    for ( unsigned v = 1; v <= n; ++v )
    {
      out += var_bit( y, v, n ) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

ReversibleFunction parse_perm( std::string_view text )
{
  const auto lines = content_lines( text );
  const unsigned n = header_width( lines );
  std::vector<Minterm> images;
  for ( std::size_t k = 1; k < lines.size(); ++k )
  {
    for ( const auto& w : words( lines[k] ) )
    {
      const auto v = to_number( w );
      if ( !v || *v >= ( std::uint64_t{ 1 } << n ) )
      {
        throw Error( ErrorCode::bad_row, "image '" + w + "' is not a " + std::to_string( n ) + "-bit number" );
      }
      images.push_back( static_cast<Minterm>( *v ) );
    }
  }
  if ( images.size() != ( std::size_t{ 1 } << n ) )
  {
    throw Error( ErrorCode::bad_row, "expected " + std::to_string( std::size_t{ 1 } << n ) + " images, got " + std::to_string( images.size() ) );
  }
  return checked( n, images );
}

std::string write_perm( const ReversibleFunction& f )
{
  std::string out = ".n " + std::to_string( f.num_vars() ) + "\n";
  std::size_t col = 0;
  for ( const auto y : f.images() )
  {
    out += std::to_string( y );
    out += ( ++col % 16 == 0 ) ? '\n' : ' ';
  }
  if ( col % 16 != 0 )
  {
    out.back() = '\n';
  }
  return out;
}

Circuit parse_real( std::string_view text )
{
  const auto lines = content_lines( text );
  std::optional<unsigned> numvars;
  std::map<std::string, unsigned> names;
  bool in_body = false;
  bool ended = false;
  std::vector<Gate> gates;
  for ( const auto& line : lines )
  {
    const auto w = words( line );
    const auto& head = w.front();
    if ( head[0] == '.' )
    {
      if ( head == ".numvars" )
      {
        const auto v = w.size() == 2 ? to_number( w[1] ) : std::nullopt;
        if ( !v || *v == 0 || *v > kMaxVariables )
        {
          throw Error( ErrorCode::bad_header, "bad .numvars line '" + line + "'" );
        }
        numvars = static_cast<unsigned>( *v );
      }
      else if ( head == ".variables" )
      {
        for ( std::size_t k = 1; k < w.size(); ++k )
        {
          if ( !names.emplace( w[k], static_cast<unsigned>( k ) ).second )
          {
            throw Error( ErrorCode::bad_header, "variable '" + w[k] + "' declared twice" );
          }
        }
      }
      else if ( head == ".begin" )
      {
        in_body = true;
      }
      else if ( head == ".end" )
      {
        in_body = false;
        ended = true;
      }
      continue;
    }
    if ( !in_body )
    {
      throw Error( ErrorCode::bad_row, "gate line outside .begin/.end: '" + line + "'" );
    }
    if ( head.size() < 2 || head[0] != 't' )
    {
      throw Error( ErrorCode::unknown_gate, "'" + head + "'" );
    }
    const auto arity = to_number( std::string_view( head ).substr( 1 ) );
    if ( !arity || *arity == 0 )
    {
      throw Error( ErrorCode::unknown_gate, "'" + head + "'" );
    }
    if ( *arity != w.size() - 1 )
    {
      throw Error( ErrorCode::line_mismatch, "'" + line + "' lists " + std::to_string( w.size() - 1 ) + " lines" );
    }
    std::vector<Control> controls;
    unsigned target = 0;
    for ( std::size_t k = 1; k < w.size(); ++k )
    {
      std::string name = w[k];
      const bool negative = name[0] == '-';
      if ( negative )
      {
        name.erase( 0, 1 );
      }
      const auto it = names.find( name );
      if ( it == names.end() )
      {
        throw Error( ErrorCode::line_mismatch, "unknown variable '" + name + "'" );
      }
      if ( k + 1 == w.size() )
      {
        if ( negative )
        {
          throw Error( ErrorCode::invalid_gate, "target '" + w[k] + "' cannot be negated" );
        }
        target = it->second;
      }
      else
      {
        controls.push_back( { it->second, negative ? Polarity::negative : Polarity::positive } );
      }
    }
    gates.emplace_back( target, std::move( controls ) );
  }
  if ( !numvars )
  {
    throw Error( ErrorCode::bad_header, "missing .numvars" );
  }
  if ( names.size() != *numvars )
  {
    throw Error( ErrorCode::line_mismatch, ".variables lists " + std::to_string( names.size() ) + " names for " + std::to_string( *numvars ) + " lines" );
  }
  if ( !ended )
  {
    throw Error( ErrorCode::bad_header, "missing .end" );
  }
  return Circuit( *numvars, std::move( gates ) );
}

std::string write_real( const Circuit& c )
{
  const unsigned n = c.num_lines();
  std::string names;
  for ( unsigned line = 1; line <= n; ++line )
  {
    names += ' ' + line_name( line );
  }
  std::string out = ".version 1.0\n.numvars " + std::to_string( n ) + "\n.variables" + names + "\n.inputs" + names +
                    "\n.outputs" + names + "\n.begin\n";
  for ( const auto& g : c.gates() )
  {
    out += 't' + std::to_string( g.num_controls() + 1 );
    for ( const auto& ctl : g.controls() )
    {
      out += ' ';
      if ( ctl.polarity == Polarity::negative )
      {
        out += '-';
      }
      out += line_name( ctl.line );
    }
    out += ' ' + line_name( g.target() ) + '\n';
  }
  out += ".end\n";
  return out;
}

SpecFormat detect_format( const std::string& path )
{
  const auto ext = std::filesystem::path( path ).extension().string();
  if ( ext == ".tt" )
  {
    return SpecFormat::truth_table;
  }
  if ( ext == ".perm" )
  {
    return SpecFormat::permutation;
  }
  if ( ext == ".real" )
  {
    return SpecFormat::real;
  }
  throw Error( ErrorCode::bad_header, "unknown file extension '" + ext + "' on " + path );
}

std::string read_file( const std::string& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
  {
    throw Error( ErrorCode::io_failure, "cannot open " + path );
  }
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file( const std::string& path, std::string_view text )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out || !out.write( text.data(), static_cast<std::streamsize>( text.size() ) ) )
  {
    throw Error( ErrorCode::io_failure, "cannot write " + path );
  }
}

ReversibleFunction load_function( const std::string& path )
{
  switch ( detect_format( path ) )
  {
  case SpecFormat::truth_table:
    return parse_tt( read_file( path ) );
  case SpecFormat::permutation:
    return parse_perm( read_file( path ) );
  case SpecFormat::real:
    return to_permutation( load_circuit( path ) );
  }
  throw Error( ErrorCode::bad_header, path );
}

Circuit load_circuit( const std::string& path )
{
  return parse_real( read_file( path ) );
}

} // namespace mqm
