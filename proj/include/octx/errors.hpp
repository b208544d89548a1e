#pragma once

#include <stdexcept>
#include <string>

namespace octx {

/// Bad argument or configuration value (CLI exit code 2).
class ParameterError : public std::runtime_error {
 public:
  explicit ParameterError(const std::string& what) : std::runtime_error(what) {}
};

/// Missing or unreadable file (CLI exit code 3).
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Syntactically or structurally invalid input file (CLI exit code 4).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A documented invariant was violated at runtime (CLI exit code 5).
class InvariantError : public std::runtime_error {
 public:
  explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace octx
