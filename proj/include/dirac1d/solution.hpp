#pragma once

// Closed-form analysis of a spin-1/2 particle in the scalar potential
// V(x) = -V0 - gamma x in one space dimension.
//
// The printed energy formulas and normalization constants are evaluated
// exactly as published, including the places where they disagree with the
// completed-square spectrum of the underlying second-order equations. The
// oracle module quantifies those disagreements; nothing here corrects them.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dirac1d/errors.hpp"
#include "dirac1d/specfun.hpp"

namespace dirac1d {

enum class Region { PositiveX, NegativeX };
enum class Sign { Plus, Minus };

/// Parity of the cylinder-equation basis function in z. The source labels
/// these the other way round; we label by the function's actual symmetry.
enum class Parity { Even, Odd };

enum class NormalizationSource {
  PrintedClosedForm,  ///< the published constant N (needs n >= 1)
  Numeric,            ///< Gauss-Hermite quadrature
  PrintedZeroMode,    ///< the published zero-mode constant N'
};

inline const char* to_string(Region r) {
  return r == Region::PositiveX ? "PositiveX" : "NegativeX";
}
inline const char* to_string(Sign s) { return s == Sign::Plus ? "Plus" : "Minus"; }
inline const char* to_string(NormalizationSource s) {
  switch (s) {
    case NormalizationSource::PrintedClosedForm:
      return "PrintedClosedForm";
    case NormalizationSource::Numeric:
      return "Numeric";
    case NormalizationSource::PrintedZeroMode:
      return "PrintedZeroMode";
  }
  return "?";
}

/// Physical constants and potential parameters. Defaults to natural units
/// m = c = hbar = 1 with V0 = 0, gamma = 1.
class PotentialParams {
 public:
  PotentialParams() = default;
  PotentialParams(double mass, double c, double hbar, double v0, double gamma)
      : mass_(mass), c_(c), hbar_(hbar), v0_(v0), gamma_(gamma) {
    if (!(c > 0.0)) throw invalid_parameter("PotentialParams: c must be > 0");
    if (!(hbar > 0.0)) throw invalid_parameter("PotentialParams: hbar must be > 0");
    if (!(mass >= 0.0)) throw invalid_parameter("PotentialParams: mass must be >= 0");
    if (!std::isfinite(v0)) throw invalid_parameter("PotentialParams: V0 must be finite");
    if (gamma == 0.0 || !std::isfinite(gamma)) {
      throw invalid_parameter("PotentialParams: gamma must be finite and nonzero");
    }
  }

  [[nodiscard]] double mass() const { return mass_; }
  [[nodiscard]] double c() const { return c_; }
  [[nodiscard]] double hbar() const { return hbar_; }
  [[nodiscard]] double v0() const { return v0_; }
  [[nodiscard]] double gamma() const { return gamma_; }

  [[nodiscard]] double hbar_c() const { return hbar_ * c_; }
  /// m c^2
  [[nodiscard]] double rest_energy() const { return mass_ * c_ * c_; }

  [[nodiscard]] PotentialParams with_gamma(double gamma) const {
    return {mass_, c_, hbar_, v0_, gamma};
  }

 private:
  double mass_ = 1.0;
  double c_ = 1.0;
  double hbar_ = 1.0;
  double v0_ = 0.0;
  double gamma_ = 1.0;
};

inline double potential(double x, const PotentialParams& p) { return -p.v0() - p.gamma() * x; }

/// (E^2 - m^2 c^4) / (hbar c)^2, the eigenvalue of the second-order equations.
inline double reduced_energy(const PotentialParams& p, double energy) {
  const double mc2 = p.rest_energy();
  return (energy * energy - mc2 * mc2) / (p.hbar_c() * p.hbar_c());
}

/// Coefficients of psi'' = (alpha1 x^2 + alpha2 x + alpha3) psi.
struct CoefficientSet {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double alpha3 = 0.0;
  double alpha3_const = 0.0;  ///< alpha3 with the energy term removed
};

inline CoefficientSet coefficients(const PotentialParams& p, double energy) {
  const double hb = p.hbar();
  const double c = p.c();
  const double g = p.gamma();
  const double v0 = p.v0();
  const double m = p.mass();
  CoefficientSet k;
  k.alpha1 = (g * g) / (hb * hb * c * c);
  k.alpha2 = (2.0 * g / (hb * hb)) * (v0 / (c * c) - m);
  k.alpha3_const = (v0 / (hb * hb)) * (v0 / (c * c) - 2.0 * m) + g / (hb * c);
  k.alpha3 = k.alpha3_const + reduced_energy(p, energy);
  return k;
}

/// y = (4 alpha1)^{1/4} x
inline double to_y(double x, const CoefficientSet& k) {
  return std::pow(4.0 * k.alpha1, 0.25) * x;
}

/// z = y + 2 alpha2 / (4 alpha1)^{3/4}
inline double to_z(double x, const CoefficientSet& k) {
  const double four_a1 = 4.0 * k.alpha1;
  return std::pow(four_a1, 0.25) * x + 2.0 * k.alpha2 / std::pow(four_a1, 0.75);
}

/// The cylinder-equation constant as published:
/// alpha3 / (4 alpha1)^{1/2} - alpha2 / (4 alpha1)^{3/2}.
inline double quantity_A(const CoefficientSet& k) {
  const double four_a1 = 4.0 * k.alpha1;
  return k.alpha3 / std::sqrt(four_a1) - k.alpha2 / std::pow(four_a1, 1.5);
}

/// (E^2 - m^2 c^4) / (hbar c gamma)
inline double quantity_B(const PotentialParams& p, double energy) {
  const double mc2 = p.rest_energy();
  return (energy * energy - mc2 * mc2) / (p.hbar_c() * p.gamma());
}

struct ReducedQuantities {
  double y = 0.0;
  double z = 0.0;
  double A = 0.0;
  double B = 0.0;
};

inline ReducedQuantities reduced_quantities(double x, const PotentialParams& p, double energy) {
  const CoefficientSet k = coefficients(p, energy);
  return {to_y(x, k), to_z(x, k), quantity_A(k), quantity_B(p, energy)};
}

/// A/2 + 1/4 + n. Zero when the 1F1 series terminates at degree n.
inline double quantization_residual(int n, const CoefficientSet& k) {
  return quantity_A(k) / 2.0 + 0.25 + n;
}

struct EnergyLevel {
  int n = 0;
  double n_prime = 0.5;
  Region region = Region::PositiveX;
  Sign sign = Sign::Plus;
  double e_squared = 0.0;
  std::optional<double> energy;  ///< absent when e_squared < 0
  bool real = true;
};

inline EnergyLevel make_level(int n, Region region, Sign sign, double e_squared) {
  EnergyLevel lvl;
  lvl.n = n;
  lvl.n_prime = 2.0 * n + 0.5;
  lvl.region = region;
  lvl.sign = sign;
  lvl.e_squared = e_squared;
  lvl.real = e_squared >= 0.0;
  if (lvl.real) {
    const double e = std::sqrt(e_squared);
    lvl.energy = sign == Sign::Plus ? e : -e;
  }
  return lvl;
}

/// Printed energy squared: 2 n' hbar c gamma + 2 m^2 c^4 -/+ hbar c gamma,
/// with the minus sign on x > 0 and the plus sign on x < 0, n' = 2n + 1/2.
inline double printed_energy_squared(int n, Region region, const PotentialParams& p) {
  const double n_prime = 2.0 * n + 0.5;
  const double hcg = p.hbar_c() * p.gamma();
  const double mc2 = p.rest_energy();
  const double branch = region == Region::PositiveX ? -hcg : hcg;
  return 2.0 * n_prime * hcg + 2.0 * mc2 * mc2 + branch;
}

/// A negative radicand gives a non-real level rather than an error.
inline EnergyLevel energy_level(int n, Region region, Sign sign, const PotentialParams& p) {
  if (n < 0) throw invalid_parameter("energy_level: n must be >= 0");
  return make_level(n, region, sign, printed_energy_squared(n, region, p));
}

struct SweepRow {
  double gamma = 0.0;
  EnergyLevel level;
};

/// One Plus-sign level per (gamma, n), ordered by gamma then n.
inline std::vector<SweepRow> spectrum_sweep(std::span<const int> n_values,
                                            std::span<const double> gamma_values, Region region,
                                            const PotentialParams& base) {
  if (n_values.empty()) throw invalid_parameter("spectrum_sweep: empty level list");
  if (gamma_values.empty()) throw invalid_parameter("spectrum_sweep: empty gamma list");
  std::vector<SweepRow> rows;
  rows.reserve(n_values.size() * gamma_values.size());
  for (double g : gamma_values) {
    const PotentialParams p = base.with_gamma(g);
    for (int n : n_values) rows.push_back({g, energy_level(n, region, Sign::Plus, p)});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Eigenfunctions

/// Largest n for which the odd family (degree 2n+1) stays inside the
/// Hermite guard.
inline constexpr int kMaxBasisN = 85;

namespace detail {
inline void check_basis_n(int n) {
  if (n < 0 || n > kMaxBasisN) {
    throw order_out_of_range("basis index " + std::to_string(n) + " outside [0, 85]");
  }
}
}  // namespace detail

/// Terminating cylinder-equation solutions in z.
///   Even: e^{-z^2/4} 1F1(-n; 1/2; z^2/2)  ~ e^{-z^2/4} H_{2n}(z/sqrt 2)
///   Odd:  z e^{-z^2/4} 1F1(-n; 3/2; z^2/2) ~ e^{-z^2/4} H_{2n+1}(z/sqrt 2)
inline double psi_basis(int n, double z, Parity parity) {
  detail::check_basis_n(n);
  const double envelope = std::exp(-z * z / 4.0);
  if (parity == Parity::Even) return envelope * specfun::kummer_1f1(-n, 0.5, z * z / 2.0);
  return z * envelope * specfun::kummer_1f1(-n, 1.5, z * z / 2.0);
}

/// The published normalization constant
///   N = 1 / ((n-1)! (-1)^n) * sqrt((2n-1)! / (n 2^{2n-1} sqrt(pi))),
/// sign included. Undefined at n = 0 because of the (n-1)!.
inline double norm_constant_paper(int n) {
  if (n < 1) {
    throw std::domain_error("norm_constant_paper: n = " + std::to_string(n) +
                            " needs (n-1)! of a negative integer");
  }
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double radicand = specfun::factorial(2 * n - 1) /
                          (n * std::ldexp(1.0, 2 * n - 1) * std::sqrt(std::numbers::pi));
  return std::sqrt(radicand) / (specfun::factorial(n - 1) * sign);
}

namespace detail {

inline constexpr double kNormOrderRelTol = 1e-8;

// Integral of basis(z)^2 over the line. With z = sqrt(2) t the envelope
// e^{-z^2/2} becomes the Gauss-Hermite weight; two successive orders must
// agree.
inline double basis_square_integral(int n, Parity parity) {
  check_basis_n(n);
  const int needed = parity == Parity::Even ? 2 * n + 1 : 2 * n + 2;
  const int first = std::min(std::max(64, needed), specfun::kMaxRuleOrder - 1);
  double results[2] = {0.0, 0.0};
  for (int i = 0; i < 2; ++i) {
    const auto rule = specfun::gauss_hermite_rule(first + i);
    results[i] = std::numbers::sqrt2 * rule.integrate([&](double t) {
      const double z = std::numbers::sqrt2 * t;
      const double poly = parity == Parity::Even
                              ? specfun::kummer_1f1(-n, 0.5, t * t)
                              : z * specfun::kummer_1f1(-n, 1.5, t * t);
      return poly * poly;
    });
  }
  if (std::abs(results[0] - results[1]) > kNormOrderRelTol * std::abs(results[1])) {
    throw convergence_error("basis normalization: quadrature orders " + std::to_string(first) +
                            " and " + std::to_string(first + 1) + " disagree for n = " +
                            std::to_string(n));
  }
  return results[1];
}

}  // namespace detail

/// Positive constant c with c^2 * integral of psi_basis(n, z, Even)^2 dz = 1.
inline double norm_constant_numeric(int n) {
  return 1.0 / std::sqrt(detail::basis_square_integral(n, Parity::Even));
}

/// kappa with kappa * odd(z0) = even(z0), z0 = z(x = 0): continuity of the
/// component across the origin.
inline double matching_coefficient(int n, const PotentialParams& p) {
  detail::check_basis_n(n);
  const double z0 = to_z(0.0, coefficients(p, p.rest_energy()));
  const double odd = psi_basis(n, z0, Parity::Odd);
  if (std::abs(odd) < 1e-13) {
    throw degenerate_matching("matching_coefficient: odd family vanishes at z(0) = " +
                              std::to_string(z0) + "; continuity does not fix the constant");
  }
  return psi_basis(n, z0, Parity::Even) / odd;
}

struct WavefunctionSamples {
  std::vector<double> positions;  ///< z grid
  std::vector<double> upper;
  std::vector<double> lower;
  std::vector<double> density;
  double norm = 0.0;       ///< integral of density over the whole line
  double grid_norm = 0.0;  ///< trapezoid integral of density over the grid
  double matching = 0.0;   ///< lower = matching * scale * odd family
  NormalizationSource normalization_source = NormalizationSource::Numeric;
};

inline double trapezoid(std::span<const double> x, std::span<const double> y) {
  double sum = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) sum += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return sum;
}

/// Samples the spinor of level n on a z grid.
///
/// The upper component is the even family, the lower one the odd family
/// scaled by matching_coefficient so both agree at z(0). With Numeric
/// normalization the pair is scaled to unit total density. PrintedClosedForm
/// applies the published N and Hermite prefactor to the upper component and
/// the same factor to the lower one.
inline WavefunctionSamples eigenfunction_samples(
    int n, std::span<const double> grid, const PotentialParams& p,
    NormalizationSource source = NormalizationSource::Numeric) {
  if (grid.empty()) throw invalid_parameter("eigenfunction_samples: empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw invalid_parameter("eigenfunction_samples: grid must be strictly increasing");
    }
  }
  if (source == NormalizationSource::PrintedZeroMode) {
    throw invalid_parameter("eigenfunction_samples: zero-mode normalization does not apply");
  }

  const double kappa = matching_coefficient(n, p);
  const double even_sq = detail::basis_square_integral(n, Parity::Even);
  const double odd_sq = detail::basis_square_integral(n, Parity::Odd);

  double scale = 0.0;
  if (source == NormalizationSource::Numeric) {
    scale = 1.0 / std::sqrt(even_sq + kappa * kappa * odd_sq);
  } else {
    // N (-1)^n (n-1)!/(2n-1)! H_{2n}(z/sqrt2) e^{-z^2/4}, and
    // 1F1(-n; 1/2; z^2/2) = (-1)^n n!/(2n)! H_{2n}(z/sqrt2).
    const double printed = norm_constant_paper(n);
    const double prefactor = (n % 2 == 0 ? 1.0 : -1.0) * specfun::factorial(n - 1) /
                             specfun::factorial(2 * n - 1);
    const double to_hermite =
        (n % 2 == 0 ? 1.0 : -1.0) * specfun::factorial(2 * n) / specfun::factorial(n);
    scale = printed * prefactor * to_hermite;
  }

  WavefunctionSamples out;
  out.positions.assign(grid.begin(), grid.end());
  out.upper.reserve(grid.size());
  out.lower.reserve(grid.size());
  out.density.reserve(grid.size());
  for (double z : grid) {
    const double u = scale * psi_basis(n, z, Parity::Even);
    const double l = scale * kappa * psi_basis(n, z, Parity::Odd);
    out.upper.push_back(u);
    out.lower.push_back(l);
    out.density.push_back(u * u + l * l);
  }
  out.norm = scale * scale * (even_sq + kappa * kappa * odd_sq);
  out.grid_norm = trapezoid(out.positions, out.density);
  out.matching = kappa;
  out.normalization_source = source;
  return out;
}

// ---------------------------------------------------------------------------
// Zero modes

/// h(x) = a x^2 + b x + c
struct QuadraticExponent {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  [[nodiscard]] double operator()(double x) const { return (a * x + b) * x + c; }
};

struct ZeroModeFlags {
  bool psi_normalizable_pos = false;
  bool psi_normalizable_neg = false;
  bool phi_normalizable_pos = false;
  bool phi_normalizable_neg = false;
};

struct ZeroModeProfile {
  QuadraticExponent exponent_positive;
  QuadraticExponent exponent_negative;
  ZeroModeFlags flags;
  std::optional<double> norm_paper_as_printed;
  bool as_printed_invalid = false;
  std::optional<double> norm_numeric;        ///< N' from the convergent pieces
  std::optional<double> convergent_integral;  ///< sum of those pieces' integrals
};

inline QuadraticExponent zero_mode_exponent(Region region, const PotentialParams& p) {
  const double hc = p.hbar_c();
  const double quad = p.gamma() * p.gamma() / (2.0 * hc);
  const double lin = (p.v0() - p.rest_energy()) / hc;
  return {region == Region::PositiveX ? quad : -quad, lin, 0.0};
}

/// Unnormalized zero-mode spinor: psi = e^{h(x)}, phi = e^{-h(x)} with the
/// exponent of the half line containing x.
struct ZeroModeValue {
  double psi = 0.0;
  double phi = 0.0;
};

inline ZeroModeValue zero_mode_components(double x, const PotentialParams& p) {
  const double h = zero_mode_exponent(x >= 0.0 ? Region::PositiveX : Region::NegativeX, p)(x);
  return {std::exp(h), std::exp(-h)};
}

/// |component|^2 = e^{+-2h} decays on a half line iff its quadratic
/// coefficient is strictly negative.
inline ZeroModeFlags zero_mode_normalizability(const PotentialParams& p) {
  const double a_pos = zero_mode_exponent(Region::PositiveX, p).a;
  const double a_neg = zero_mode_exponent(Region::NegativeX, p).a;
  return {2.0 * a_pos < 0.0, 2.0 * a_neg < 0.0, -2.0 * a_pos < 0.0, -2.0 * a_neg < 0.0};
}

namespace detail {

// Integral of e^{2 s h(x)} over the half line of `region`, s = +1 for psi
// and -1 for phi. Mirrors x < 0 onto [0, inf).
inline double zero_mode_piece(const QuadraticExponent& h, Region region, double s) {
  const double b = region == Region::PositiveX ? -2.0 * s * h.b : 2.0 * s * h.b;
  return specfun::half_line_gaussian_integral(-2.0 * s * h.a, b, -2.0 * s * h.c);
}

}  // namespace detail

inline ZeroModeProfile zero_mode_profile(const PotentialParams& p) {
  ZeroModeProfile z;
  z.exponent_positive = zero_mode_exponent(Region::PositiveX, p);
  z.exponent_negative = zero_mode_exponent(Region::NegativeX, p);
  z.flags = zero_mode_normalizability(p);

  double total = 0.0;
  bool any = false;
  auto add = [&](bool ok, const QuadraticExponent& h, Region r, double s) {
    if (!ok) return;
    total += detail::zero_mode_piece(h, r, s);
    any = true;
  };
  add(z.flags.psi_normalizable_pos, z.exponent_positive, Region::PositiveX, 1.0);
  add(z.flags.psi_normalizable_neg, z.exponent_negative, Region::NegativeX, 1.0);
  add(z.flags.phi_normalizable_pos, z.exponent_positive, Region::PositiveX, -1.0);
  add(z.flags.phi_normalizable_neg, z.exponent_negative, Region::NegativeX, -1.0);
  if (any) {
    z.convergent_integral = total;
    z.norm_numeric = 1.0 / std::sqrt(total);
  }

  // Published N' = [sqrt(pi / sqrt(-gamma^2/(hbar c))) exp(-(mc^2 - V0)^2/(hbar c gamma))]^{-1/2}.
  // The inner radicand is negative for every real gamma; its magnitude is
  // used and the record is marked invalid.
  const double hc = p.hbar_c();
  const double radicand = -p.gamma() * p.gamma() / hc;
  z.as_printed_invalid = radicand < 0.0;
  const double shift = p.rest_energy() - p.v0();
  const double inner = std::sqrt(std::numbers::pi / std::sqrt(std::abs(radicand))) *
                       std::exp(-shift * shift / (hc * p.gamma()));
  z.norm_paper_as_printed = 1.0 / std::sqrt(inner);
  return z;
}

}  // namespace dirac1d
