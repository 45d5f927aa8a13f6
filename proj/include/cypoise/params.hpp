#pragma once

#include <stdexcept>
#include <string>

namespace cypoise {

// ----------------------------------------------------------------------------
// Errors
// ----------------------------------------------------------------------------

/// Invalid parameters or an argument outside the function's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A bracketed search had no sign change to work with.
class NoRootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iteration cap reached before the tolerance was met.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested quantity does not exist in the classified regime.
class RegimeMismatchError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A flux value lies beyond the admissible branch of F.
class OutOfRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Numerical results contradict each other (e.g. tolerance-induced sign flips).
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ----------------------------------------------------------------------------
// Parameters
// ----------------------------------------------------------------------------

/// Carreau-Yasuda constants. mu_0 and mu_inf only enter through c.
class FluidParams {
 public:
  /// Throws DomainError unless alpha > 0, 0 <= c <= 1, cu >= 0 and all finite.
  FluidParams(double n, double alpha, double c, double cu);

  double n() const { return n_; }
  double alpha() const { return alpha_; }
  double c() const { return c_; }
  double cu() const { return cu_; }

  /// Viscosity collapses to 1 (c = 0, Cu = 0 or n = 1).
  bool newtonian() const { return c_ == 0.0 || cu_ == 0.0 || n_ == 1.0; }

 private:
  double n_;
  double alpha_;
  double c_;
  double cu_;
};

/// Pressure gradient and pipe radius. A negative gradient is stored as its
/// magnitude plus sign = -1; the solution is the negated positive-b solution.
class FlowParams {
 public:
  FlowParams(double b, double r);

  double b() const { return b_; }
  double r() const { return r_; }
  int sign() const { return sign_; }
  double signed_b() const { return sign_ * b_; }
  bool trivial() const { return b_ == 0.0; }

 private:
  double b_;
  double r_;
  int sign_;
};

struct EvalSettings {
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  /// Relative tolerance for the measure-zero equality branches.
  double eq_tol = 1e-9;
  int max_iter = 200;

  /// Throws DomainError on non-positive tolerances or max_iter < 1.
  void validate() const;
};

}  // namespace cypoise
