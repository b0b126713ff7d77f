#pragma once

#include <stdexcept>
#include <string>

namespace dirac1d {

/// A parameter lies outside the domain an operation is defined on
/// (for example a non-positive integer `b` in 1F1).
class invalid_parameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Polynomial degree or quadrature order above the supported guard.
class order_out_of_range : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// An iterative kernel (series, Newton, order doubling) missed its tolerance.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class divergent_integral : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Continuity at the origin cannot fix the matching constant because the
/// odd family vanishes there.
class degenerate_matching : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dirac1d
