#pragma once

// Command-line front end: spectrum, wavefunction, zeromode and verify.
//
// Exit codes: 0 success, 2 usage or validation error, 3 grid warnings under
// `verify --strict`.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dirac1d/oracle.hpp"
#include "dirac1d/report.hpp"
#include "dirac1d/solution.hpp"

namespace dirac1d::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitStrict = 3;

struct SharedOptions {
  double mass = 1.0;
  double c = 1.0;
  double hbar = 1.0;
  double v0 = 0.0;
  double gamma = 1.0;
  std::string out;

  [[nodiscard]] PotentialParams params() const { return {mass, c, hbar, v0, gamma}; }
};

struct SpectrumOptions {
  double gamma_min = 0.1;
  double gamma_max = 2.0;
  double gamma_step = 0.05;
  std::vector<int> levels = {0, 1, 2};
  std::string region = "both";
};

struct WavefunctionOptions {
  std::vector<int> n = {1, 2, 3};
  double zmin = -12.0;
  double zmax = 12.0;
  int points = 801;
};

struct ZeroModeOptions {
  double half_width = 5.0;
  int points = 201;
};

struct VerifyOptions {
  int nmax = 3;
  int grid_points = oracle::kDefaultPoints;
  double half_width = oracle::kDefaultScaledHalfWidth;  ///< in oscillator lengths
  bool strict = false;
};

/// Uniform samples including both ends.
inline std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> xs(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) xs[i] = lo + (hi - lo) * i / (points - 1);
  return xs;
}

inline std::vector<double> gamma_range(const SpectrumOptions& o) {
  if (!(o.gamma_step > 0.0)) throw invalid_parameter("--gamma-step must be > 0");
  if (!(o.gamma_max >= o.gamma_min)) throw invalid_parameter("--gamma-max must be >= --gamma-min");
  const auto count = static_cast<long>(std::floor((o.gamma_max - o.gamma_min) / o.gamma_step + 1e-9)) + 1;
  std::vector<double> gammas;
  for (long i = 0; i < count; ++i) gammas.push_back(o.gamma_min + i * o.gamma_step);
  return gammas;
}

inline std::vector<Region> parse_regions(const std::string& s) {
  if (s == "both") return {Region::PositiveX, Region::NegativeX};
  if (s == "pos") return {Region::PositiveX};
  if (s == "neg") return {Region::NegativeX};
  throw invalid_parameter("--region must be one of both|pos|neg");
}

inline std::string spectrum_document(const SharedOptions& shared, const SpectrumOptions& o) {
  const PotentialParams base = shared.params();
  const std::vector<double> gammas = gamma_range(o);
  const std::vector<Region> regions = parse_regions(o.region);
  if (o.levels.empty()) throw invalid_parameter("--levels must not be empty");
  for (int n : o.levels) {
    if (n < 0) throw invalid_parameter("--levels must be nonnegative");
  }
  for (double g : gammas) (void)base.with_gamma(g);  // validates gamma != 0

  std::vector<std::vector<SweepRow>> per_region;
  for (Region r : regions) per_region.push_back(spectrum_sweep(o.levels, gammas, r, base));

  std::vector<report::SpectrumRow> rows;
  const std::size_t per_gamma = o.levels.size();
  for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
    for (std::size_t ni = 0; ni < per_gamma; ++ni) {
      for (const auto& sweep : per_region) {
        const SweepRow& row = sweep[gi * per_gamma + ni];
        rows.push_back({row.gamma, row.level});
      }
    }
  }
  return report::spectrum_csv(rows);
}

inline std::string wavefunction_document(const SharedOptions& shared, const WavefunctionOptions& o) {
  const PotentialParams p = shared.params();
  if (o.n.empty()) throw invalid_parameter("--n must not be empty");
  for (int n : o.n) {
    if (n < 0 || n > kMaxBasisN) throw invalid_parameter("--n values must lie in [0, 85]");
  }
  if (o.points < 2) throw invalid_parameter("--points must be >= 2");
  if (!(o.zmax > o.zmin)) throw invalid_parameter("--zmax must exceed --zmin");
  const std::vector<double> grid = linspace(o.zmin, o.zmax, o.points);
  std::vector<WavefunctionSamples> samples;
  for (int n : o.n) samples.push_back(eigenfunction_samples(n, grid, p));
  return report::wavefunction_csv(o.n, samples);
}

struct ZeroModeDocuments {
  std::string csv;
  std::string summary;
};

inline ZeroModeDocuments zeromode_documents(const SharedOptions& shared, const ZeroModeOptions& o) {
  const PotentialParams p = shared.params();
  if (!(o.half_width > 0.0)) throw invalid_parameter("--half-width must be > 0");
  if (o.points < 2) throw invalid_parameter("--points must be >= 2");
  return {report::zero_mode_csv(linspace(-o.half_width, o.half_width, o.points), p),
          report::zero_mode_summary(zero_mode_profile(p))};
}

inline oracle::VerificationReport verify_report(const SharedOptions& shared, const VerifyOptions& o) {
  const PotentialParams p = shared.params();
  if (o.nmax < 0) throw invalid_parameter("--nmax must be >= 0");
  if (!(o.half_width > 0.0)) throw invalid_parameter("--half-width must be > 0");
  const oracle::GridSpec grid = oracle::scaled_grid(p, o.half_width, o.grid_points);
  const int k = std::max(oracle::kDefaultLevels, 2 * o.nmax + 1);
  if (grid.points() - 2 < k) {
    throw invalid_parameter("--grid-points leaves fewer interior nodes than the " +
                            std::to_string(k) + " levels needed");
  }
  return oracle::verify_levels(p, o.nmax, grid);
}

inline void write_file(const std::string& path, const std::string& contents) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  std::ofstream f(target, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << contents;
  if (!f) throw std::runtime_error("failed writing " + path);
}

inline void add_shared(CLI::App* cmd, SharedOptions& s, const std::string& default_out) {
  s.out = default_out;
  cmd->add_option("--mass", s.mass, "rest mass m")->capture_default_str();
  cmd->add_option("--c", s.c, "speed of light")->capture_default_str();
  cmd->add_option("--hbar", s.hbar, "reduced Planck constant")->capture_default_str();
  cmd->add_option("--v0", s.v0, "potential offset V0")->capture_default_str();
  cmd->add_option("--gamma", s.gamma, "potential slope gamma")->capture_default_str();
  cmd->add_option("--out", s.out, "output path")->capture_default_str();
}

/// Parses argv and runs one command. Output streams are parameters so tests
/// can capture them.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Exact spectrum, eigenfunctions and zero modes of a spin-1/2 particle in a "
               "linear scalar potential, with a finite-difference audit."};
  app.require_subcommand(1);

  SharedOptions s_spec, s_wave, s_zero, s_verify;
  SpectrumOptions spec;
  WavefunctionOptions wave;
  ZeroModeOptions zero;
  VerifyOptions verify;

  auto* c_spec = app.add_subcommand("spectrum", "printed energy levels versus gamma (CSV)");
  add_shared(c_spec, s_spec, "out/spectrum.csv");
  c_spec->add_option("--gamma-min", spec.gamma_min)->capture_default_str();
  c_spec->add_option("--gamma-max", spec.gamma_max)->capture_default_str();
  c_spec->add_option("--gamma-step", spec.gamma_step)->capture_default_str();
  c_spec->add_option("--levels", spec.levels, "comma-separated n values")->delimiter(',');
  c_spec->add_option("--region", spec.region, "both|pos|neg")->capture_default_str();

  auto* c_wave = app.add_subcommand("wavefunction", "normalized eigenfunctions versus z (CSV)");
  add_shared(c_wave, s_wave, "out/wavefunction.csv");
  c_wave->add_option("--n", wave.n, "comma-separated n values")->delimiter(',');
  c_wave->add_option("--zmin", wave.zmin)->capture_default_str();
  c_wave->add_option("--zmax", wave.zmax)->capture_default_str();
  c_wave->add_option("--points", wave.points)->capture_default_str();

  auto* c_zero = app.add_subcommand("zeromode", "zero-mode components (CSV) and summary");
  add_shared(c_zero, s_zero, "out/zeromode.csv");
  c_zero->add_option("--half-width", zero.half_width)->capture_default_str();
  c_zero->add_option("--points", zero.points)->capture_default_str();

  auto* c_verify = app.add_subcommand("verify", "audit printed levels against the grid (JSON)");
  add_shared(c_verify, s_verify, "out/verify.json");
  c_verify->add_option("--nmax", verify.nmax)->capture_default_str();
  c_verify->add_option("--grid-points", verify.grid_points, "odd number of grid nodes")
      ->capture_default_str();
  c_verify->add_option("--half-width", verify.half_width, "half width in oscillator lengths")
      ->capture_default_str();
  c_verify->add_flag("--strict", verify.strict, "exit 3 when the grid domain looks too small");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (c_spec->parsed()) {
      write_file(s_spec.out, spectrum_document(s_spec, spec));
      out << "wrote " << s_spec.out << '\n';
    } else if (c_wave->parsed()) {
      write_file(s_wave.out, wavefunction_document(s_wave, wave));
      out << "wrote " << s_wave.out << '\n';
    } else if (c_zero->parsed()) {
      const ZeroModeDocuments docs = zeromode_documents(s_zero, zero);
      write_file(s_zero.out, docs.csv);
      out << docs.summary;
    } else if (c_verify->parsed()) {
      const oracle::VerificationReport rep = verify_report(s_verify, verify);
      write_file(s_verify.out, report::report_json(rep).dump(2) + '\n');
      out << report::report_text(rep);
      if (verify.strict && report::has_grid_warnings(rep)) {
        err << "strict: grid warnings present\n";
        return kExitStrict;
      }
    }
  } catch (const std::logic_error& e) {
    // invalid_parameter, order_out_of_range and domain errors
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace dirac1d::cli
