#ifndef DECAYLAB_ERRORS_HPP
#define DECAYLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace decaylab {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Evaluation at a pole of Gamma (non-positive integer argument).
class PoleError : public Error {
 public:
  using Error::Error;
};

// Result exceeds the representable double range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Parameter outside the regime where a quantity is defined.
class RegimeError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : Error(what + " (achieved error estimate " + std::to_string(achieved) + ")"),
        achieved_(achieved) {}

  double achieved_tolerance() const noexcept { return achieved_; }

 private:
  double achieved_;
};

class CflError : public Error {
 public:
  using Error::Error;
};

// NaN or Inf detected inside a solver.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace decaylab

#endif  // DECAYLAB_ERRORS_HPP
