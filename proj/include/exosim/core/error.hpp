#pragma once

#include <stdexcept>
#include <string>

namespace exosim {

// Error taxonomy shared across the library. The CLI maps these onto its
// documented exit codes; library code throws and never exits.

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what) {}
};

class NotFound : public Error {
 public:
  explicit NotFound(const std::string& what) : Error(what) {}
};

// Linear-algebra level failure (indefinite mass matrix, failed solve).
class NumericalFailure : public Error {
 public:
  explicit NumericalFailure(const std::string& what) : Error(what) {}
};

// Integration produced non-finite state; carries the simulation time.
class SimulationDiverged : public Error {
 public:
  SimulationDiverged(const std::string& what, double time)
      : Error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

// Config / file-format problems; message carries field path or row number.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what) : Error(what) {}
};

class BoundViolation : public Error {
 public:
  explicit BoundViolation(const std::string& what) : Error(what) {}
};

// Policy/scenario observation-layout mismatch and similar.
class CompatibilityError : public Error {
 public:
  explicit CompatibilityError(const std::string& what) : Error(what) {}
};

}  // namespace exosim
