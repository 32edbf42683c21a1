#pragma once

#include <stdexcept>
#include <string>

namespace plspan {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (polygon files, rational literals, JSON meshes).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A projection frame fails one of the general-position conditions.
class GeneralPositionError : public Error {
 public:
  using Error::Error;
};

// A randomized search ran out of attempts.
class ExhaustedAttemptsError : public Error {
 public:
  using Error::Error;
};

// A constructed object failed its own certification checks.
class ValidationFailedError : public Error {
 public:
  using Error::Error;
};

}  // namespace plspan
