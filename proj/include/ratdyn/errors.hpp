#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "ratdyn/types.hpp"

namespace ratdyn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad caller input: malformed config, out-of-range option, violated precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class SingularError : public Error {
 public:
  SingularError(const std::string& what, double denominator_modulus)
      : Error(what), denominator_modulus(denominator_modulus) {}
  double denominator_modulus;
};

class DegenerateError : public Error {
 public:
  explicit DegenerateError(const std::string& what,
                           std::optional<Complex> linear_root = std::nullopt)
      : Error(what), linear_root(linear_root) {}
  // Set when beta = -1: the single root of -z - alpha = 0.
  std::optional<Complex> linear_root;
};

class NoDistinctCycleError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class OrbitDiedError : public Error {
 public:
  OrbitDiedError(const std::string& what, long step) : Error(what), step(step) {}
  long step;
};

class NonFiniteError : public Error {
 public:
  using Error::Error;
};

class NotConvergedError : public Error {
 public:
  using Error::Error;
};

}  // namespace ratdyn
