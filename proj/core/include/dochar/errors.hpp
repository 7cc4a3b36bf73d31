#pragma once

#include <stdexcept>
#include <string>

namespace dochar {

/// Parameter lies outside the domain of a chart or formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Resolvent applied to a function with a component along the kernel mode.
class KernelComponentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact polynomial degree would exceed the configured cap.
class DegreeCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Inverse iteration did not produce an eigenvector within max_iter sweeps.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grid refinement ran out of doublings before reaching the tolerance.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No eigenvalue in the small-eigenvalue window [-theta, theta].
class WindowEmpty : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// More than one eigenvalue in a window that must hold exactly one.
class WindowNotUnique : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unnormalized null solution leaves the double range.
class OverflowGuard : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Adaptive quadrature did not settle within its panel budget.
class QuadratureBudget : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A 3D probe grid would be too large for the requested lambda.
class GridBudget : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dochar
