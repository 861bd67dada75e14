#pragma once

#include <stdexcept>
#include <string>

namespace mqm
{

enum class ErrorCode
{
  not_bijective,
  bad_length,
  index_out_of_range,
  invalid_gate,
  line_mismatch,
  not_swappable,
  no_free_line,
  template_inapplicable,
  limit_exceeded,
  unknown_cost,
  invalid_cost_table,
  bad_header,
  bad_row,
  unknown_gate,
  io_failure
};

const char* to_string( ErrorCode code ) noexcept;

/// Single exception type of the library; the code tells callers which contract was violated.
class Error : public std::runtime_error
{
public:
  Error( ErrorCode code, const std::string& message )
      : std::runtime_error( std::string( to_string( code ) ) + ": " + message ), code_( code )
  {
  }

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace mqm
