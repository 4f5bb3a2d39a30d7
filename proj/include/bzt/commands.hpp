#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bzt/config.hpp"

namespace bzt {

struct CliOverrides {
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<int> modes;
  std::optional<double> sigma;
  std::optional<std::uint64_t> seed;
};

// Flags win over the config file.
void apply_overrides(RunConfig& cfg, const CliOverrides& o);

struct CommandResult {
  std::string body;
  int status = 0;
};

// Stirred runs get the single constant mode.
std::vector<SpectralMode> modes_for(const RunConfig& cfg);

CommandResult cmd_analyze(const RunConfig& cfg);
CommandResult cmd_transition(const RunConfig& cfg);
CommandResult cmd_simulate(const RunConfig& cfg);
CommandResult cmd_sweep(const RunConfig& cfg);

// Reference values for the worked example, kept as data so a tampered copy
// can be checked.
struct PaperFixture {
  double k1 = 1.34, k2 = 1.6e9, k3 = 8e3, k4 = 4e7, k5 = 1, conc = 6e-2, gamma = 1;
  double alpha = 77.27, beta = 8.375e-6;
  double delta_coeff = 1.035e2;  // delta = coeff * a
  double mu_coeff = 4.664e-6;    // mu_i = coeff * sigma_i / (l^2 a)
  double sigma = 700;
  double a = 9.74, b = 690.79, c = 8.21;
  double delta0 = 71.67;
  double A = 81.41, B = 7.27, C = 588.41, rho = 2.7;
  double E = 4e21, D0 = 1.3e-2, F1 = 8.3e-9, F2 = -2.6e-7, F3 = -8.4e-10;
  double D3 = 5e4, D4 = 4e2, D5 = 80, D6 = 3e7, D7 = -6e-3, D8 = 4;
  // Non-stirred example.
  double bracket_b = 691, bracket_C = 589, bracket_a = 10, bracket_x = 3.5;
  double law_slope = 47.7, law_offset = -12.5;
  double flip_z = 1.8;
  double q_coeff = 9.1, p_coeff = 0.7;
  double M1_00 = -0.7, M1_01 = -5.4e4, M1_10 = -1.25e-2, M1_11 = -12.5;
  double detM1_per_delta1 = -8.75;
  double detMj_slope = -1.5e4, detMj_offset = 4.9e3;
  std::vector<double> z_values{2, 3};
};

enum class RowKind { Absolute, Relative, Negative, Below, Match };

struct CheckRow {
  std::string section, name;
  RowKind kind = RowKind::Absolute;
  double paper = 0, computed = 0, tol = 0;
  std::string paper_text, computed_text;  // for Match rows
  std::string note;
  bool pass = false;
};

struct PaperReport {
  std::vector<CheckRow> gated;
  std::vector<CheckRow> deviations;
  bool all_pass() const;
};

PaperReport paper_check(const PaperFixture& fx = {});
CommandResult render_paper_report(const PaperReport& r, const std::string& format);

// The bracket of the non-stirred worked example with mu1 = mu2 = mu, mu3 = z mu,
// as a function of x = mu rho, evaluated exactly (no fixed C).
double delta1_bracket_exact(double a, double b, double c, double z, double x);
// The same bracket maximized over x > 0; returns {value, argmax}.
std::pair<double, double> delta1_bracket_max(double a, double b, double c, double z);

}  // namespace bzt
