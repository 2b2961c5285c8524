#pragma once

#include <stdexcept>
#include <string>

namespace hbk {

/// Base of every exception thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violated a documented precondition (parameter range, normalization).
class precondition_error : public error {
 public:
  using error::error;
};

/// Input outside the domain where the operation is defined or certified.
class domain_error : public error {
 public:
  using error::error;
};

/// Hypergeometric lower parameter at a nonpositive integer.
class pole_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// Iterative procedure did not reach its tolerance.
class convergence_error : public error {
 public:
  convergence_error(const std::string& what, double estimate, double error_bound)
      : error(what), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

/// Root finder found no sign change across its bracket.
class bracket_error : public error {
 public:
  bracket_error(const std::string& what, double lo, double hi, double f_lo, double f_hi)
      : error(what), lo_(lo), hi_(hi), f_lo_(f_lo), f_hi_(f_hi) {}

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double f_lo() const noexcept { return f_lo_; }
  double f_hi() const noexcept { return f_hi_; }

 private:
  double lo_, hi_, f_lo_, f_hi_;
};

/// A truncation tail could not be certified at the requested radius.
class accuracy_error : public error {
 public:
  using error::error;
};

}  // namespace hbk
