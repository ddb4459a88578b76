#pragma once

#include <stdexcept>
#include <string>

namespace amscheck {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad Minkowski shift bounds or a set that escapes its complement domain.
class IntervalError : public Error {
 public:
  using Error::Error;
};

class TraceError : public Error {
 public:
  using Error::Error;
};

// Atom lookup failures, unknown signals, NaN predicate values.
class EvalError : public Error {
 public:
  using Error::Error;
};

class CodegenError : public Error {
 public:
  using Error::Error;
};

class OracleError : public Error {
 public:
  using Error::Error;
};

}  // namespace amscheck
