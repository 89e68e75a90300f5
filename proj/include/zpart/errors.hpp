#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zpart {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition or argument outside an operation's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A configured resource guard (enumeration size, table size, bit length) was exceeded.
class LimitError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace zpart
