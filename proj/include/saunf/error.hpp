#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace saunf
{

/// Base of every exception thrown by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed circuit structure: cycles, dangling references, non-NNF or non-CNF input.
class StructuralError : public Error
{
public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error
{
public:
  using Error::Error;
};

/// The SAT oracle gave up (external crash, timeout, exhausted budget).
/// Never confused with an UNSAT verdict.
class ResourceError : public Error
{
public:
  using Error::Error;
};

class ParseError : public Error
{
public:
  ParseError( std::size_t line, const std::string& message )
      : Error( "line " + std::to_string( line ) + ": " + message ), line_( line )
  {
  }

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace saunf
