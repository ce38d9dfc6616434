#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cgs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ModeMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidCollection : public Error {
 public:
  using Error::Error;
};

class UnknownState : public Error {
 public:
  explicit UnknownState(const std::string& name) : Error("unknown state '" + name + "'") {}
};

/// Raised instead of returning a truncated enumeration.
class EnumerationCapExceeded : public Error {
 public:
  EnumerationCapExceeded(std::string what, std::size_t cap)
      : Error(what + " exceeds enumeration cap of " + std::to_string(cap)), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

}  // namespace cgs
