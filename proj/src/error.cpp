#include "mqm/error.hpp"

namespace mqm
{

const char* to_string( ErrorCode code ) noexcept
{
  switch ( code )
  {
  case ErrorCode::not_bijective: return "not bijective";
  case ErrorCode::bad_length: return "bad length";
  case ErrorCode::index_out_of_range: return "index out of range";
  case ErrorCode::invalid_gate: return "invalid gate";
  case ErrorCode::line_mismatch: return "line mismatch";
  case ErrorCode::not_swappable: return "not swappable";
  case ErrorCode::no_free_line: return "no free line";
  case ErrorCode::template_inapplicable: return "template inapplicable";
  case ErrorCode::limit_exceeded: return "limit exceeded";
  case ErrorCode::unknown_cost: return "unknown cost";
  case ErrorCode::invalid_cost_table: return "invalid cost table";
  case ErrorCode::bad_header: return "bad header";
  case ErrorCode::bad_row: return "bad row";
  case ErrorCode::unknown_gate: return "unknown gate";
  case ErrorCode::io_failure: return "io failure";
  }
  return "unknown error";
}

} // namespace mqm
