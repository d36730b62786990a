#pragma once

#include <stdexcept>
#include <string>

namespace qctl {

/// Base class of every exception thrown by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula text. Line and column are 1-based.
class parse_error : public error {
public:
  parse_error(const std::string& what, int line, int column)
      : error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  int line_;
  int column_;
};

/// Malformed or inconsistent model file / structure.
class model_error : public error {
public:
  using error::error;
};

/// A formula or argument outside the fragment an operation accepts.
class unsupported_formula : public error {
public:
  using error::error;
};

/// An operation was applied to arguments with incompatible shapes
/// (direction sets, arities, alphabets).
class shape_error : public error {
public:
  using error::error;
};

/// A configured size or depth limit was exceeded.
class resource_error : public error {
public:
  using error::error;
};

}  // namespace qctl
