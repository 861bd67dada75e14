#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "cost.hpp"
#include "function.hpp"
#include "gate.hpp"

namespace mqm
{

/// ".n <int>" then 2^n rows of n-character output words, row x for input x.
ReversibleFunction parse_tt( std::string_view text );
std::string write_tt( const ReversibleFunction& f );

/// ".n <int>" then 2^n decimal images separated by whitespace.
ReversibleFunction parse_perm( std::string_view text );
std::string write_perm( const ReversibleFunction& f );

/*! \brief RevLib-style circuit text.
 *
 * Gate lines are "t<k> <vars>" with the target last; a leading '-' marks a
 * negative control. Variables are named by `.variables`.
 */
Circuit parse_real( std::string_view text );
std::string write_real( const Circuit& c );

enum class SpecFormat
{
  truth_table,
  permutation,
  real
};

/// Chosen from the extension: .tt, .perm, .real.
SpecFormat detect_format( const std::string& path );

std::string read_file( const std::string& path );
void write_file( const std::string& path, std::string_view text );

/// Loads a function from a .tt/.perm file, or the permutation of a .real circuit.
ReversibleFunction load_function( const std::string& path );
Circuit load_circuit( const std::string& path );

} // namespace mqm
