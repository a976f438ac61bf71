#pragma once

#include <stdexcept>
#include <string>

namespace xhermite {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument: empty Wronskian, l < ell, division by zero, order 0, ...
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Input that does not describe a partition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A gap set that no partition produces.
class InfeasibleGapsetError : public Error {
 public:
  enum class Reason { negative_entry, not_distinct, wrong_sum, not_partition };

  InfeasibleGapsetError(Reason reason, const std::string& what)
      : Error(what), reason_(reason) {}

  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

/// Degree n is exceptional (n in K_lambda), so H^lambda_n does not exist.
class GapDegreeError : public Error {
 public:
  GapDegreeError(long degree, const std::string& what)
      : Error(what), degree_(degree) {}

  long degree() const noexcept { return degree_; }

 private:
  long degree_;
};

/// Operation needs an even partition (non-singular weight).
class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

/// An identity that must hold exactly produced a non-zero residual.
class InconsistencyError : public Error {
 public:
  InconsistencyError(const std::string& identity, const std::string& residual)
      : Error(identity + ": non-zero residual " + residual),
        identity_(identity),
        residual_(residual) {}

  const std::string& identity() const noexcept { return identity_; }
  const std::string& residual() const noexcept { return residual_; }

 private:
  std::string identity_;
  std::string residual_;
};

}  // namespace xhermite
