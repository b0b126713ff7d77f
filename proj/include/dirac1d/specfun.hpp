#pragma once

// Special functions and integral identities: Kummer's 1F1, Hermite and
// generalized Laguerre polynomials, Gauss-Hermite quadrature and the
// Gaussian integral over the whole line and the half line.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dirac1d/errors.hpp"

namespace dirac1d::specfun {

/// Largest polynomial degree accepted by hermite / laguerre / hermite_overlap.
inline constexpr int kMaxDegree = 170;

inline constexpr double kSeriesRelTol = 1e-15;
inline constexpr int kSeriesMaxTerms = 10000;
inline constexpr int kSeriesQuietTerms = 3;

inline constexpr int kMinRuleOrder = 2;
inline constexpr int kMaxRuleOrder = 128;
inline constexpr double kNewtonTol = 1e-14;
inline constexpr int kNewtonMaxIter = 100;

namespace detail {

inline void check_degree(int n, const char* who) {
  if (n < 0 || n > kMaxDegree) {
    throw order_out_of_range(std::string(who) + ": degree " + std::to_string(n) +
                             " outside [0, " + std::to_string(kMaxDegree) + "]");
  }
}

inline bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

// exp(x^2) * erfc(x) without overflow for large positive x.
inline double erfcx(double x) {
  if (x < 25.0) return std::exp(x * x) * std::erfc(x);
  // Asymptotic series; at x >= 25 the fifth term is below 1e-14 relative.
  const double inv2x2 = 1.0 / (2.0 * x * x);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 5; ++k) {
    term *= -(2.0 * k - 1.0) * inv2x2;
    sum += term;
  }
  return sum / (x * std::sqrt(std::numbers::pi));
}

}  // namespace detail

/// n! by iterative product in double precision; exact integers up to 22!,
/// finite up to 170!.
inline double factorial(int n) {
  detail::check_degree(n, "factorial");
  double result = 1.0;
  for (int k = 2; k <= n; ++k) result *= k;
  return result;
}

/// Kummer's confluent hypergeometric function 1F1(a; b; x).
///
/// For a in {0, -1, -2, ...} the series terminates and the finite sum is
/// returned. Otherwise the power series is summed until three consecutive
/// terms fall below 1e-15 of the partial sum.
inline double kummer_1f1(double a, double b, double x) {
  if (detail::is_nonpositive_integer(b)) {
    throw invalid_parameter("kummer_1f1: b must not be zero or a negative integer");
  }
  double term = 1.0;
  double sum = 1.0;
  if (detail::is_nonpositive_integer(a)) {
    const long terms = static_cast<long>(-a);
    for (long k = 0; k < terms; ++k) {
      term *= (a + k) / (b + k) * x / (k + 1.0);
      sum += term;
    }
    return sum;
  }
  int quiet = 0;
  for (int k = 0; k < kSeriesMaxTerms; ++k) {
    term *= (a + k) / (b + k) * x / (k + 1.0);
    sum += term;
    if (std::abs(term) < kSeriesRelTol * std::abs(sum)) {
      if (++quiet == kSeriesQuietTerms) return sum;
    } else {
      quiet = 0;
    }
  }
  throw convergence_error("kummer_1f1: series did not converge within " +
                          std::to_string(kSeriesMaxTerms) + " terms");
}

/// Physicists' Hermite polynomial H_n(x) by the three-term recurrence.
inline double hermite(int n, double x) {
  detail::check_degree(n, "hermite");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double curr = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * curr - 2.0 * k * prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

/// Generalized Laguerre polynomial L_n^alpha(x).
inline double laguerre(int n, double alpha, double x) {
  detail::check_degree(n, "laguerre");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double curr = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * curr - (k + alpha) * prev) / (k + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

/// Closed form of the Hermite overlap integral, 2^n n! sqrt(pi) when n == m
/// and zero otherwise. Overflows to +inf for n above roughly 150.
inline double hermite_overlap(int n, int m) {
  detail::check_degree(n, "hermite_overlap");
  detail::check_degree(m, "hermite_overlap");
  if (n != m) return 0.0;
  return std::ldexp(factorial(n), n) * std::sqrt(std::numbers::pi);
}

/// Gauss-Hermite rule for the weight e^{-x^2}. Immutable once built.
class QuadratureRule {
 public:
  QuadratureRule(std::vector<double> nodes, std::vector<double> weights)
      : nodes_(std::move(nodes)), weights_(std::move(weights)) {}

  [[nodiscard]] int order() const { return static_cast<int>(nodes_.size()); }
  [[nodiscard]] std::span<const double> nodes() const { return nodes_; }
  [[nodiscard]] std::span<const double> weights() const { return weights_; }

  /// Sum_i w_i f(x_i), i.e. the integral of f(x) e^{-x^2} over the line.
  template <typename F>
  [[nodiscard]] double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(nodes_[i]);
    return sum;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

namespace detail {

// Orthonormal Hermite recurrence; returns {p_n(x), p_n'(x)}.
inline std::pair<double, double> orthonormal_hermite(int n, double x) {
  double p1 = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
  double p2 = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double p3 = p2;
    p2 = p1;
    p1 = x * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
  }
  return {p1, std::sqrt(2.0 * n) * p2};
}

}  // namespace detail

/// Gauss-Hermite nodes (roots of H_order) and weights, orders 2..128.
///
/// Roots are seeded from the largest downward with the usual asymptotic
/// guesses and polished by Newton on the orthonormal recurrence, which keeps
/// all intermediate values representable up to order 128. Nodes are
/// returned in increasing order and are exactly antisymmetric.
inline QuadratureRule gauss_hermite_rule(int order) {
  if (order < kMinRuleOrder || order > kMaxRuleOrder) {
    throw invalid_parameter("gauss_hermite_rule: order " + std::to_string(order) +
                            " outside [2, 128]");
  }
  const int n = order;
  const int half = n / 2;
  std::vector<double> pos_nodes(half);
  std::vector<double> pos_weights(half);

  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * pos_nodes[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * pos_nodes[1];
    } else {
      z = 2.0 * z - pos_nodes[i - 2];
    }
    bool converged = false;
    for (int it = 0; it < kNewtonMaxIter; ++it) {
      const auto [p, dp] = detail::orthonormal_hermite(n, z);
      const double step = p / dp;
      z -= step;
      if (std::abs(step) <= kNewtonTol * std::max(1.0, std::abs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw convergence_error("gauss_hermite_rule: Newton failed for root " + std::to_string(i) +
                              " of order " + std::to_string(n));
    }
    const double dp = detail::orthonormal_hermite(n, z).second;
    pos_nodes[i] = z;
    pos_weights[i] = 2.0 / (dp * dp);
  }

  std::vector<double> nodes(n);
  std::vector<double> weights(n);
  for (int i = 0; i < half; ++i) {
    nodes[i] = -pos_nodes[i];
    weights[i] = pos_weights[i];
    nodes[n - 1 - i] = pos_nodes[i];
    weights[n - 1 - i] = pos_weights[i];
  }
  if (n % 2 == 1) {
    const double dp = detail::orthonormal_hermite(n, 0.0).second;
    nodes[half] = 0.0;
    weights[half] = 2.0 / (dp * dp);
  }
  return QuadratureRule(std::move(nodes), std::move(weights));
}

/// Integral of exp(-(a x^2 + b x + c)) over the whole real line.
/// Throws divergent_integral when a <= 0.
inline double gaussian_integral(double a, double b, double c) {
  if (!(a > 0.0)) {
    throw divergent_integral("gaussian_integral: requires a > 0 (got a = " + std::to_string(a) +
                             ")");
  }
  return std::sqrt(std::numbers::pi / a) * std::exp((b * b - 4.0 * a * c) / (4.0 * a));
}

/// Integral of exp(-(a x^2 + b x + c)) over [0, +inf). Throws
/// divergent_integral when a <= 0.
inline double half_line_gaussian_integral(double a, double b, double c) {
  if (!(a > 0.0)) {
    throw divergent_integral("half_line_gaussian_integral: requires a > 0 (got a = " +
                             std::to_string(a) + ")");
  }
  const double root_a = std::sqrt(a);
  return 0.5 * std::sqrt(std::numbers::pi) / root_a * detail::erfcx(b / (2.0 * root_a)) *
         std::exp(-c);
}

}  // namespace dirac1d::specfun
