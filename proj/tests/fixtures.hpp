#pragma once

#include <string>
#include <vector>

#include <mqm/function.hpp>
#include <mqm/io.hpp>

namespace fixtures
{

inline std::string path( const std::string& rel )
{
  return std::string( MQM_FIXTURES ) + "/" + rel;
}

inline mqm::ReversibleFunction example4()
{
  return mqm::load_function( path( "example4.tt" ) );
}

inline mqm::ReversibleFunction alu()
{
  return mqm::load_function( path( "alu_bdd_288.perm" ) );
}

/// One 7-bit binary word per line.
inline std::vector<mqm::Minterm> members( const std::string& rel )
{
  std::vector<mqm::Minterm> out;
  const auto text = mqm::read_file( path( rel ) );
  std::size_t pos = 0;
  while ( pos < text.size() )
  {
    auto end = text.find( '\n', pos );
    if ( end == std::string::npos )
    {
      end = text.size();
    }
    const auto word = text.substr( pos, end - pos );
    if ( !word.empty() )
    {
      out.push_back( static_cast<mqm::Minterm>( std::stoul( word, nullptr, 2 ) ) );
    }
    pos = end + 1;
  }
  return out;
}

inline std::vector<mqm::Minterm> bits( std::initializer_list<const char*> words )
{
  std::vector<mqm::Minterm> out;
  for ( const auto* w : words )
  {
    out.push_back( static_cast<mqm::Minterm>( std::stoul( w, nullptr, 2 ) ) );
  }
  return out;
}

} // namespace fixtures
