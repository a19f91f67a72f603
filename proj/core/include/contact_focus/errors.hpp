#pragma once

#include <stdexcept>
#include <string>

namespace contact_focus {

// Base of every error thrown by the library. The CLI maps the concrete
// subclasses onto exit codes, so new failure kinds should derive from one of
// the classes below rather than from Error directly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: dimension mismatches, non-finite or out-of-range parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a closed-form formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A regression window did not contain enough usable samples.
class TooFewPointsError : public Error {
 public:
  using Error::Error;
};

/// An integrator produced a non-finite value. Carries the time of failure.
class BlowUpError : public Error {
 public:
  BlowUpError(double t, const std::string& what) : Error(what), time_(t) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace contact_focus
