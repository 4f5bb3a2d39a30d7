#pragma once

#include <optional>
#include <string>

#include "bzt/params.hpp"
#include "bzt/simulate.hpp"
#include "bzt/spectrum.hpp"

namespace bzt {

struct SweepSpec {
  double delta_min = 0, delta_max = 0;
  int steps = 0;
};

struct SimSpec {
  SimConfig config;
  bool model_given = false;
  bool monitor_region = false;
  double transient_fraction = 0.5;
  std::optional<double> delta;         // absolute control value
  std::optional<double> delta_factor;  // multiple of the critical value
  std::optional<std::string> trajectory_path;
};

struct RunConfig {
  std::optional<ChemKinetics> kinetics;
  std::optional<NondimParams> nondim;
  NondimOptions nondim_options;
  std::optional<Domain> domain;
  std::optional<SweepSpec> sweep;
  std::optional<SimSpec> sim;
  std::optional<std::string> output_path;
  std::string format = "json";
  std::optional<double> sigma_override;
  std::optional<bool> cube_condition;

  // Filled by resolve().
  NondimParams params;
  double sigma = 0;
};

// `origin` names the source in diagnostics. Throws ConfigError carrying the
// offending field path and, where it can be located, the line.
RunConfig parse_config(const std::string& text, const std::string& origin = "<config>");
RunConfig load_config(const std::string& path);

// Nondimensionalize, validate, apply the sigma override, derive the sim model.
void resolve(RunConfig& cfg);

}  // namespace bzt
