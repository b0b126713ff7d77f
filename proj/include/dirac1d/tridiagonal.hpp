#pragma once

// Symmetric tridiagonal eigenvalues by Sturm-sequence bisection, and
// eigenvectors by inverse iteration with a pivoted tridiagonal solve.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "dirac1d/errors.hpp"

namespace dirac1d {

/// Symmetric tridiagonal matrix stored as its diagonal and a single
/// off-diagonal array, so symmetry holds by construction.
class SymTridiagonal {
 public:
  SymTridiagonal(std::vector<double> diag, std::vector<double> off)
      : diag_(std::move(diag)), off_(std::move(off)) {
    if (diag_.empty()) throw invalid_parameter("SymTridiagonal: empty diagonal");
    if (off_.size() + 1 != diag_.size()) {
      throw invalid_parameter("SymTridiagonal: off-diagonal must have size n-1");
    }
  }

  [[nodiscard]] std::size_t size() const { return diag_.size(); }
  [[nodiscard]] const std::vector<double>& diag() const { return diag_; }
  [[nodiscard]] const std::vector<double>& off() const { return off_; }

  /// Gershgorin interval containing every eigenvalue.
  [[nodiscard]] std::pair<double, double> gershgorin() const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < diag_.size(); ++i) {
      double r = 0.0;
      if (i > 0) r += std::abs(off_[i - 1]);
      if (i + 1 < diag_.size()) r += std::abs(off_[i]);
      lo = std::min(lo, diag_[i] - r);
      hi = std::max(hi, diag_[i] + r);
    }
    return {lo, hi};
  }

 private:
  std::vector<double> diag_;
  std::vector<double> off_;
};

/// Number of eigenvalues strictly below `lambda` (negative pivots of the
/// LDL^T factorization of T - lambda I).
inline std::size_t sturm_count(const SymTridiagonal& t, double lambda) {
  const auto& d = t.diag();
  const auto& e = t.off();
  // Pivots that land on exact zero are nudged off it, as in LAPACK's dstebz.
  constexpr double kPivotFloor = std::numeric_limits<double>::min() * 1e10;
  std::size_t count = 0;
  double q = d[0] - lambda;
  for (std::size_t i = 0;; ++i) {
    if (std::abs(q) < kPivotFloor) q = -kPivotFloor;
    if (q < 0.0) ++count;
    if (i + 1 == d.size()) break;
    q = d[i + 1] - lambda - e[i] * e[i] / q;
  }
  return count;
}

inline constexpr double kBisectionTol = 1e-12;

/// The k algebraically smallest eigenvalues in increasing order, each
/// bracketed to max(1e-12, 1e-12 |lambda|).
inline std::vector<double> lowest_eigenvalues(const SymTridiagonal& t, std::size_t k) {
  if (k == 0 || k > t.size()) {
    throw invalid_parameter("lowest_eigenvalues: k = " + std::to_string(k) +
                            " outside [1, " + std::to_string(t.size()) + "]");
  }
  auto [glo, ghi] = t.gershgorin();
  const double pad = 1e-10 * std::max({1.0, std::abs(glo), std::abs(ghi)});
  glo -= pad;
  ghi += pad;

  std::vector<double> values(k);
  double lower_start = glo;
  for (std::size_t j = 0; j < k; ++j) {
    // Invariant: count(lo) <= j < count(hi).
    double lo = lower_start;
    double hi = ghi;
    for (;;) {
      const double mid = 0.5 * (lo + hi);
      const double tol = std::max(kBisectionTol, kBisectionTol * std::abs(mid));
      if (hi - lo <= tol || mid <= lo || mid >= hi) break;
      if (sturm_count(t, mid) > j) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    values[j] = 0.5 * (lo + hi);
    lower_start = lo;
  }
  return values;
}

namespace detail {

// Solves (T - shift I) x = b with partial pivoting (the LAPACK gttrf/gttrs
// scheme); T - shift I may be indefinite.
inline std::vector<double> solve_shifted(const SymTridiagonal& t, double shift,
                                         std::vector<double> b) {
  const std::size_t n = t.size();
  std::vector<double> dl(t.off());
  std::vector<double> du(t.off());
  std::vector<double> d(t.diag());
  for (double& v : d) v -= shift;
  std::vector<double> du2(n > 2 ? n - 2 : 0, 0.0);
  std::vector<bool> swapped(n, false);
  constexpr double kTiny = std::numeric_limits<double>::min() * 1e10;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (std::abs(d[i]) < kTiny) d[i] = kTiny;
      const double f = dl[i] / d[i];
      dl[i] = f;
      d[i + 1] -= f * du[i];
    } else {
      swapped[i] = true;
      const double f = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = f;
      const double tmp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = tmp - f * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du[i + 1];
      }
    }
  }
  if (std::abs(d[n - 1]) < kTiny) d[n - 1] = kTiny;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (swapped[i]) {
      const double tmp = b[i];
      b[i] = b[i + 1];
      b[i + 1] = tmp - dl[i] * b[i + 1];
    } else {
      b[i + 1] -= dl[i] * b[i];
    }
  }
  b[n - 1] /= d[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
  for (std::size_t ii = n >= 2 ? n - 2 : 0; ii-- > 0;) {
    b[ii] = (b[ii] - du[ii] * b[ii + 1] - du2[ii] * b[ii + 2]) / d[ii];
  }
  return b;
}

}  // namespace detail

/// Eigenvector for `lambda` by a fixed number of inverse-iteration sweeps;
/// normalized to unit max-norm. The seed is a ramp rather than all ones so
/// it overlaps odd eigenvectors of mirror-symmetric matrices.
inline std::vector<double> inverse_iteration(const SymTridiagonal& t, double lambda,
                                             int sweeps = 3) {
  const double shift = lambda + 1e-10 * std::max(1.0, std::abs(lambda));
  std::vector<double> v(t.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 + static_cast<double>(i) / v.size();
  for (int s = 0; s < sweeps; ++s) {
    v = detail::solve_shifted(t, shift, std::move(v));
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::abs(x));
    if (peak > 0.0 && std::isfinite(peak)) {
      for (double& x : v) x /= peak;
    }
  }
  return v;
}

}  // namespace dirac1d
