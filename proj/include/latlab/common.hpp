#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace latlab {

/// Input violates an operation's contract (bad dimensions, invalid point,
/// non-commuting family, ...). The CLI maps this to exit code 2.
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Point lies outside the domain on which a function is defined.
class DomainError : public PreconditionError {
public:
  using PreconditionError::PreconditionError;
};

/// Floating point cannot separate the candidate outcomes. Carries every
/// candidate so that callers can report rather than guess. Exit code 3.
class BorderlineError : public std::runtime_error {
public:
  BorderlineError(const std::string& what, std::vector<std::string> candidates)
      : std::runtime_error(what), candidates_(std::move(candidates)) {}
  const std::vector<std::string>& candidates() const { return candidates_; }

private:
  std::vector<std::string> candidates_;
};

/// An enumeration exceeded its configured size cap.
class CapExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Selects the serial reference path or the OpenMP kernel.
enum class Exec { Serial, Parallel };

}  // namespace latlab
