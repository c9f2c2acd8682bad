#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sevpredict {

// Base for every failure raised by the library. The CLI maps IoError to exit
// code 2 and everything else to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a contract (bad parameter, degenerate data, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Tabular input is missing a required column or has a malformed header.
class SchemaError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A single data row failed validation. `row()` is the 1-based data row index
// (the header is row 0).
class RowError : public DomainError {
 public:
  RowError(std::size_t row, const std::string& what)
      : DomainError("row " + std::to_string(row) + ": " + what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sevpredict
