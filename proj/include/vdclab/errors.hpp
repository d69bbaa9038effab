#pragma once

#include <stdexcept>
#include <string>

namespace vdclab {

// Base class for everything this library throws on its own behalf.
// std::invalid_argument / std::out_of_range are still used for plain
// programming errors (bad index, wrong dimension).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A requested lattice point lies outside the window that must supply it.
class CoverageError : public Error {
 public:
  using Error::Error;
};

// A window's values do not belong to the domain an operation requires.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Level thresholds or horizon are incompatible with the requested window.
class ScheduleError : public Error {
 public:
  using Error::Error;
};

// Probability weights cannot be approximated by equal-weight atoms within
// the allotted budget.
class RationalizationError : public Error {
 public:
  using Error::Error;
};

// A Monte Carlo loop exceeded its replication cap before meeting its target.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// A value lies outside the convex hull it must be represented in.
class GeometryError : public Error {
 public:
  using Error::Error;
};

// A frequency collides with the grid resolution (h = 0 mod M).
class AliasError : public Error {
 public:
  using Error::Error;
};

// The LP solver hit its iteration cap or an infeasible/unbounded state
// it cannot certify.
class SolverError : public Error {
 public:
  using Error::Error;
};

// Condition-3 witnesses could not be produced at the requested tolerance.
class WitnessError : public Error {
 public:
  using Error::Error;
};

// Casebook lookup failure.
class UnknownCaseError : public Error {
 public:
  using Error::Error;
};

}  // namespace vdclab
