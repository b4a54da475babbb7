#pragma once

#include <stdexcept>
#include <string>

namespace cvar {

/// Base of every error raised by the library. The CLI maps all of them to a
/// one-line diagnostic and a nonzero exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A tunable or threshold is out of range.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file or record.
class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class UnknownPropertyError : public Error {
 public:
  using Error::Error;
};

class EmptyQueryError : public Error {
 public:
  using Error::Error;
};

/// Average precision is undefined for a query with no relevant documents.
class UndefinedApError : public Error {
 public:
  using Error::Error;
};

}  // namespace cvar
