#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace matula {

// Base class of every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A prime (or prime index) lies beyond the configured hard ceiling of the
// prime backend. Recoverable: the math is total, the tables are not.
class IndexOverflow : public Error {
 public:
  using Error::Error;
};

class NotPrime : public Error {
 public:
  using Error::Error;
};

// Carries the decimal text of the cofactor that could not be split.
class FactorizationFailure : public Error {
 public:
  FactorizationFailure(const std::string& message, std::string cofactor)
      : Error(message), cofactor_(std::move(cofactor)) {}

  const std::string& cofactor() const noexcept { return cofactor_; }

 private:
  std::string cofactor_;
};

// Input text rejected by a parser (decimal integers, Dyck words).
class ParseError : public Error {
 public:
  enum class Kind { invalid_symbol, unbalanced, non_canonical, bad_integer };

  ParseError(Kind kind, std::size_t offset, const std::string& message,
             std::size_t block_index = 0)
      : Error(message), kind_(kind), offset_(offset), block_index_(block_index) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }
  // Sibling index of the offending block; meaningful for non_canonical only.
  std::size_t block_index() const noexcept { return block_index_; }

 private:
  Kind kind_;
  std::size_t offset_;
  std::size_t block_index_;
};

// Argument outside the mathematical domain of a closed-form expression.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A table or buffer would not fit in memory / index types.
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace matula
