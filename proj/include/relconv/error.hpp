#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace relconv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Factor lists of two relations do not line up. `position` is the first
/// mismatching factor (0-based).
class ArityMismatch : public Error {
 public:
  ArityMismatch(std::size_t position, const std::string& what)
      : Error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class LabelError : public Error {
 public:
  using Error::Error;
};

/// Tuple space of a relation does not fit the 64-bit key encoding, or a
/// carrier exceeds the configured size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class InvalidGroupoid : public Error {
 public:
  using Error::Error;
};

/// Input data does not satisfy the relational groupoid axioms where a
/// construction requires them.
class AxiomViolation : public Error {
 public:
  using Error::Error;
};

class QuotientError : public Error {
 public:
  using Error::Error;
};

class MeasureError : public Error {
 public:
  using Error::Error;
};

class NotInvariant : public Error {
 public:
  using Error::Error;
};

}  // namespace relconv
