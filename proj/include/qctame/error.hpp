#pragma once

#include <stdexcept>
#include <string>

namespace qctame {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter or input record is outside its domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure hit its work budget before meeting its tolerance.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

/// A file could not be read, parsed, or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qctame
