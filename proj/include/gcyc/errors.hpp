#pragma once

#include <stdexcept>
#include <string>

namespace gcyc {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated an operation's documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A point or argument lies outside the domain where a function is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Expression or numeric evaluation produced an invalid value.
class EvalError : public Error {
 public:
  using Error::Error;
};

class InvalidDensityError : public Error {
 public:
  using Error::Error;
};

/// A gap was requested for a tuple that is not (x in A_i, y,z in A_{i+1}).
class AdjacencyError : public Error {
 public:
  using Error::Error;
};

/// Scenario or expression configuration is malformed. `path` names the
/// offending field, e.g. "subsets[1].boxes[0].lower".
class ConfigError : public Error {
 public:
  enum class Code { Schema, InvalidConstants, Parse, UnboundVariable, Io };

  ConfigError(std::string path, const std::string& what, Code code = Code::Schema)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)), code_(code) {}

  const std::string& path() const noexcept { return path_; }
  Code code() const noexcept { return code_; }

 private:
  std::string path_;
  Code code_;
};

}  // namespace gcyc
