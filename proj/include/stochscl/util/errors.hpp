#ifndef STOCHSCL_UTIL_ERRORS_HPP
#define STOCHSCL_UTIL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace stochscl {

/// Base class for all toolkit errors so callers can catch one family.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InvalidDomain : public Error {
 public:
  using Error::Error;
};

class AssumptionViolated : public Error {
 public:
  using Error::Error;
};

class DerivativeMismatch : public Error {
 public:
  using Error::Error;
};

class SupportViolation : public Error {
 public:
  using Error::Error;
};

class NumericalBlowup : public Error {
 public:
  NumericalBlowup(const std::string& what, long step) : Error(what), step_index(step) {}
  long step_index;
};

class EnsembleMismatch : public Error {
 public:
  using Error::Error;
};

class VGridOverflow : public Error {
 public:
  using Error::Error;
};

class A4Violation : public Error {
 public:
  using Error::Error;
};

class PostShock : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace stochscl

#endif
