#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "dirac1d/tridiagonal.hpp"

using namespace dirac1d;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Cyclic Jacobi rotations on a dense copy; slow but independent of bisection.
std::vector<double> jacobi_eigenvalues(const SymTridiagonal& t) {
  const std::size_t n = t.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    a[i][i] = t.diag()[i];
    if (i + 1 < n) a[i][i + 1] = a[i + 1][i] = t.off()[i];
  }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double tt = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(tt * tt + 1.0);
        const double s = tt * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

SymTridiagonal laplacian(std::size_t n) {
  return SymTridiagonal(std::vector<double>(n, 2.0), std::vector<double>(n - 1, -1.0));
}

std::vector<double> multiply(const SymTridiagonal& t, const std::vector<double>& v) {
  const std::size_t n = t.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = t.diag()[i] * v[i];
    if (i > 0) out[i] += t.off()[i - 1] * v[i - 1];
    if (i + 1 < n) out[i] += t.off()[i] * v[i + 1];
  }
  return out;
}

}  // namespace

TEST_CASE("construction checks", "[tridiagonal]") {
  CHECK_THROWS_AS(SymTridiagonal({}, {}), invalid_parameter);
  CHECK_THROWS_AS(SymTridiagonal({1.0, 2.0}, {}), invalid_parameter);
  CHECK_NOTHROW(SymTridiagonal({1.0}, {}));
  const auto [lo, hi] = laplacian(5).gershgorin();
  CHECK(lo == 0.0);
  CHECK(hi == 4.0);
}

TEST_CASE("diagonal and 2x2 cases", "[tridiagonal]") {
  const SymTridiagonal diag({3.0, -1.0, 2.0, 0.5}, {0.0, 0.0, 0.0});
  const auto ev = lowest_eigenvalues(diag, 4);
  CHECK_THAT(ev[0], WithinAbs(-1.0, 1e-11));
  CHECK_THAT(ev[1], WithinAbs(0.5, 1e-11));
  CHECK_THAT(ev[2], WithinAbs(2.0, 1e-11));
  CHECK_THAT(ev[3], WithinAbs(3.0, 1e-11));

  const SymTridiagonal two({2.0, 2.0}, {1.0});
  const auto ev2 = lowest_eigenvalues(two, 2);
  CHECK_THAT(ev2[0], WithinAbs(1.0, 1e-11));
  CHECK_THAT(ev2[1], WithinAbs(3.0, 1e-11));

  CHECK_THROWS_AS(lowest_eigenvalues(two, 0), invalid_parameter);
  CHECK_THROWS_AS(lowest_eigenvalues(two, 3), invalid_parameter);
}

TEST_CASE("discrete Laplacian spectrum", "[tridiagonal]") {
  const std::size_t n = 200;
  const auto t = laplacian(n);
  const auto ev = lowest_eigenvalues(t, 10);
  for (std::size_t k = 1; k <= 10; ++k) {
    const double exact = 2.0 - 2.0 * std::cos(k * std::numbers::pi / (n + 1));
    CHECK_THAT(ev[k - 1], WithinAbs(exact, 1e-11));
  }
}

TEST_CASE("sturm_count counts eigenvalues below lambda", "[tridiagonal][property]") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 4 + trial;
    std::vector<double> d(n), e(n - 1);
    for (auto& x : d) x = dist(rng);
    for (auto& x : e) x = dist(rng);
    const SymTridiagonal t(d, e);
    const auto exact = jacobi_eigenvalues(t);
    for (double lambda : {-5.0, -1.3, 0.0, 0.7, 2.2, 9.0}) {
      const auto expected = std::count_if(exact.begin(), exact.end(), [&](double v) { return v < lambda; });
      CHECK(sturm_count(t, lambda) == static_cast<std::size_t>(expected));
    }
    const auto ev = lowest_eigenvalues(t, n);
    for (std::size_t i = 0; i < n; ++i) CHECK_THAT(ev[i], WithinAbs(exact[i], 1e-9));
    CHECK(std::is_sorted(ev.begin(), ev.end()));
  }
}

TEST_CASE("inverse iteration recovers eigenvectors", "[tridiagonal]") {
  const std::size_t n = 101;
  const auto t = laplacian(n);
  const auto ev = lowest_eigenvalues(t, 3);
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto v = inverse_iteration(t, ev[k - 1]);
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::abs(x));
    CHECK_THAT(peak, WithinAbs(1.0, 1e-14));
    // Compare with sin(j k pi / (n + 1)) up to sign and scale.
    double best = 0.0;
    for (std::size_t j = 0; j < n; ++j) best = std::max(best, std::abs(std::sin((j + 1.0) * k * std::numbers::pi / (n + 1))));
    const double sign = v[0] > 0 ? 1.0 : -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double exact = std::sin((j + 1.0) * k * std::numbers::pi / (n + 1)) / best;
      CHECK_THAT(sign * v[j], WithinAbs(exact, 1e-8));
    }
    const auto tv = multiply(t, v);
    for (std::size_t j = 0; j < n; ++j) CHECK_THAT(tv[j], WithinAbs(ev[k - 1] * v[j], 1e-8));
  }
}

TEST_CASE("pivoted solve handles indefinite shifts", "[tridiagonal]") {
  const SymTridiagonal t({1e-20, 1.0, -2.0, 0.5}, {1.0, 3.0, -1.0});
  const std::vector<double> x = {0.3, -1.2, 2.5, 0.8};
  const auto b = multiply(t, x);
  const auto solved = detail::solve_shifted(t, 0.0, b);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK_THAT(solved[i], WithinAbs(x[i], 1e-12));
}
