#pragma once

// Text renderings shared by the CLI and the tests: CSV tables for the
// figure data, key=value summaries and the JSON audit report.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "dirac1d/oracle.hpp"
#include "dirac1d/solution.hpp"

namespace dirac1d::report {

/// 12 significant digits, "nan" for non-finite values.
inline std::string format_number(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline const char* format_bool(bool b) { return b ? "true" : "false"; }

struct SpectrumRow {
  double gamma = 0.0;
  EnergyLevel plus;
};

inline std::string spectrum_csv(const std::vector<SpectrumRow>& rows) {
  std::string out = "gamma,n,region,E_plus,E_minus,real\n";
  for (const auto& r : rows) {
    const double e = r.plus.energy.value_or(NAN);
    out += format_number(r.gamma) + ',' + std::to_string(r.plus.n) + ',' +
           to_string(r.plus.region) + ',' + format_number(e) + ',' + format_number(-e) + ',' +
           format_bool(r.plus.real) + '\n';
  }
  return out;
}

inline std::string wavefunction_csv(const std::vector<int>& ns,
                                    const std::vector<WavefunctionSamples>& samples) {
  std::string out = "z,n,psi,density\n";
  for (std::size_t k = 0; k < ns.size(); ++k) {
    const auto& s = samples[k];
    for (std::size_t i = 0; i < s.positions.size(); ++i) {
      out += format_number(s.positions[i]) + ',' + std::to_string(ns[k]) + ',' +
             format_number(s.upper[i]) + ',' + format_number(s.density[i]) + '\n';
    }
  }
  return out;
}

inline std::string zero_mode_csv(const std::vector<double>& xs, const PotentialParams& p) {
  std::string out = "x,psi,phi\n";
  for (double x : xs) {
    const ZeroModeValue v = zero_mode_components(x, p);
    out += format_number(x) + ',' + format_number(v.psi) + ',' + format_number(v.phi) + '\n';
  }
  return out;
}

inline std::string zero_mode_summary(const ZeroModeProfile& z) {
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : "absent"; };
  std::string out;
  out += "psi_normalizable_pos=" + std::string(format_bool(z.flags.psi_normalizable_pos)) + '\n';
  out += "psi_normalizable_neg=" + std::string(format_bool(z.flags.psi_normalizable_neg)) + '\n';
  out += "phi_normalizable_pos=" + std::string(format_bool(z.flags.phi_normalizable_pos)) + '\n';
  out += "phi_normalizable_neg=" + std::string(format_bool(z.flags.phi_normalizable_neg)) + '\n';
  out += "exponent_positive=" + format_number(z.exponent_positive.a) + ',' +
         format_number(z.exponent_positive.b) + ',' + format_number(z.exponent_positive.c) + '\n';
  out += "exponent_negative=" + format_number(z.exponent_negative.a) + ',' +
         format_number(z.exponent_negative.b) + ',' + format_number(z.exponent_negative.c) + '\n';
  out += "convergent_integral=" + opt(z.convergent_integral) + '\n';
  out += "norm_numeric=" + opt(z.norm_numeric) + '\n';
  out += "norm_paper_as_printed=" + opt(z.norm_paper_as_printed) + '\n';
  out += "as_printed_invalid=" + std::string(format_bool(z.as_printed_invalid)) + '\n';
  return out;
}

namespace detail {

inline nlohmann::ordered_json pairing_json(const oracle::PairingSummary& s) {
  nlohmann::ordered_json j;
  j["region"] = to_string(s.region);
  j["offset"] = s.offset;
  j["paired"] = s.paired;
  j["discarded"] = s.discarded;
  j["shift"] = s.shift;
  j["expected_shift"] = s.expected_shift;
  j["max_abs_delta"] = s.max_abs_delta;
  j["max_shift_deviation"] = s.max_shift_deviation;
  j["upper_mu"] = s.upper_mu;
  j["lower_mu"] = s.lower_mu;
  return j;
}

}  // namespace detail

/// Stable JSON document for a verification report. Key order is fixed and
/// doubles are written round-trip exact, so equal reports serialize to equal
/// bytes.
inline nlohmann::ordered_json report_json(const oracle::VerificationReport& rep) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["params"] = {{"mass", rep.params.mass()},
                 {"c", rep.params.c()},
                 {"hbar", rep.params.hbar()},
                 {"v0", rep.params.v0()},
                 {"gamma", rep.params.gamma()}};
  j["grid"] = {{"half_width", rep.grid.half_width()},
               {"scaled_half_width", rep.grid.half_width() / oracle::oscillator_length(rep.params)},
               {"points", rep.grid.points()},
               {"spacing", rep.grid.spacing()},
               {"levels_solved", rep.levels_solved}};
  j["tolerance"] = rep.tolerance;
  j["printed_source"] =
      rep.printed_source == oracle::PrintedSource::Published ? "Published" : "CompletedSquare";

  ordered_json levels = ordered_json::array();
  std::map<std::string, int> counts = {{"Match", 0},
                                       {"SignFlip", 0},
                                       {"Mismatch", 0},
                                       {"NonRealPrinted", 0},
                                       {"NonRealOracle", 0}};
  for (const auto& r : rep.levels) {
    ordered_json l;
    l["n"] = r.n;
    l["region"] = to_string(r.region);
    l["oracle_index"] = r.oracle_index;
    l["printed_E_squared"] = r.printed_e_squared;
    l["oracle_E_squared"] = r.oracle_e_squared;
    l["closed_square_E_squared"] = r.completed_square_e_squared;
    l["oracle_mu"] = r.oracle_mu;
    l["closed_square_mu"] = r.completed_square_mu;
    l["abs_diff"] = r.abs_diff;
    l["rel_diff"] = r.rel_diff;
    l["quantization_residual"] =
        r.quantization_residual ? ordered_json(*r.quantization_residual) : ordered_json(nullptr);
    l["reflected_other_region_match"] = r.reflected_other_region_match;
    l["classification"] = oracle::to_string(r.classification);
    levels.push_back(std::move(l));
    ++counts[oracle::to_string(r.classification)];
  }
  j["levels"] = std::move(levels);

  ordered_json classes;
  for (const char* name : {"Match", "SignFlip", "Mismatch", "NonRealPrinted", "NonRealOracle"}) {
    classes[name] = counts[name];
  }
  j["classifications"] = std::move(classes);

  j["partner_check"] = {
      {"shift", rep.partner_positive.shift},
      {"expected_shift", rep.partner_positive.expected_shift},
      {"max_shift_deviation", std::max(rep.partner_positive.max_shift_deviation,
                                       rep.partner_negative.max_shift_deviation)},
      {"by_region",
       ordered_json::array({detail::pairing_json(rep.partner_positive),
                            detail::pairing_json(rep.partner_negative)})}};

  std::vector<std::string> warnings = rep.warnings;
  warnings.insert(warnings.end(), rep.partner_positive.warnings.begin(),
                  rep.partner_positive.warnings.end());
  warnings.insert(warnings.end(), rep.partner_negative.warnings.begin(),
                  rep.partner_negative.warnings.end());
  j["warnings"] = warnings;
  return j;
}

inline std::string report_text(const oracle::VerificationReport& rep) {
  std::string out;
  out += "level audit (tolerance " + format_number(rep.tolerance) + ", grid " +
         std::to_string(rep.grid.points()) + " points on +-" +
         format_number(rep.grid.half_width()) + ")\n";
  for (const auto& r : rep.levels) {
    out += std::string("  ") + to_string(r.region) + " n=" + std::to_string(r.n) +
           "  printed E^2=" + format_number(r.printed_e_squared) +
           "  oracle E^2=" + format_number(r.oracle_e_squared) +
           "  baseline E^2=" + format_number(r.completed_square_e_squared) + "  -> " +
           oracle::to_string(r.classification) + '\n';
  }
  out += "partner shift (x>0) " + format_number(rep.partner_positive.shift) + " expected " +
         format_number(rep.partner_positive.expected_shift) + '\n';
  out += "partner shift (x<0) " + format_number(rep.partner_negative.shift) + " expected " +
         format_number(rep.partner_negative.expected_shift) + '\n';
  const std::size_t nwarn =
      rep.warnings.size() + rep.partner_positive.warnings.size() + rep.partner_negative.warnings.size();
  out += "grid warnings: " + std::to_string(nwarn) + '\n';
  return out;
}

inline bool has_grid_warnings(const oracle::VerificationReport& rep) {
  return !rep.warnings.empty() || !rep.partner_positive.warnings.empty() ||
         !rep.partner_negative.warnings.empty();
}

}  // namespace dirac1d::report
