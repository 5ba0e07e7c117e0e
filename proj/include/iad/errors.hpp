#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace iad {

// Argument outside the domain of a model formula (zero distance, zero elevation, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Requested operating point cannot be met by any geometry.
class InfeasibleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Collinear or coincident points where a proper triangle is required.
class DegenerateGeometryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what + " (line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace iad
