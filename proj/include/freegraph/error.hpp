#pragma once

#include <stdexcept>
#include <string>

namespace freegraph {

/// Failure categories shared by the C++ API and the C status codes.
enum class ErrorCode {
  invalid_argument = 1,
  parse,
  invalid_graph,
  edge_count,
  not_self_adjoint,
  not_cornered,
  depth_too_shallow,
  capacity_exceeded,
  loop_edge,
  not_exact,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Syntax errors carry the byte offset (expressions) or line number (files).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(ErrorCode::parse, what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace freegraph
