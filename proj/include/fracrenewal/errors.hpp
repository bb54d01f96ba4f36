#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace fracrenewal {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument outside the documented domain (bad order parameter, negative
/// time, malformed grid, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A series or quadrature could not reach the requested tolerance.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, double beta, double x)
      : Error(format(what, beta, x)), beta_(beta), x_(x) {}

  double beta() const { return beta_; }
  double x() const { return x_; }

 private:
  static std::string format(const std::string& what, double beta, double x) {
    std::ostringstream os;
    os.precision(17);
    os << what << " (beta=" << beta << ", x=" << x << ")";
    return os.str();
  }

  double beta_;
  double x_;
};

/// Cancellation in an alternating series could not be resolved even in
/// software high precision.
class CancellationError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

/// Result not representable as a double.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A counting series hit its index cap before the tail fell below tolerance.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double achieved_tail)
      : Error(what + " (achieved tail " + std::to_string(achieved_tail) + ")"), achieved_tail_(achieved_tail) {}

  double achieved_tail() const { return achieved_tail_; }

 private:
  double achieved_tail_;
};

/// The generic renewal-function sum needed more addends than allowed.
class SlowConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A pointwise density was requested for a distribution that is an atom
/// (the clock process waiting time, degenerate jumps). Use the cdf instead.
class AtomDistributionError : public Error {
 public:
  using Error::Error;
};

/// A simulated walker exceeded the per-walker event cap.
class RunawayError : public Error {
 public:
  using Error::Error;
};

}  // namespace fracrenewal
