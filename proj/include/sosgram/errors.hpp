#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sosgram {

/// Operands live in different ambient rings (different variable counts,
/// incompatible matrix shapes).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Homogeneity violated: add/sub of different degrees, mixed-degree input.
class DegreeError : public std::invalid_argument {
 public:
  DegreeError(const std::string& what, int first, int second)
      : std::invalid_argument(what), first_degree(first), second_degree(second) {}
  int first_degree;
  int second_degree;
};

/// Parameters outside the range where a formula or operation is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::invalid_argument(what + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

}  // namespace sosgram
