#pragma once

#include <optional>
#include <vector>

#include "bzt/critical.hpp"
#include "bzt/spectrum.hpp"

namespace bzt {

enum class PesVerdict { AllStable, HopfCrossing, SteadyCrossing };
const char* to_string(PesVerdict v);

struct ModeStability {
  int index = 0;
  double rho = 0;
  double max_real = 0;
  Stability hurwitz = Stability::Stable;
};

struct PesReport {
  double b = 0;
  PesVerdict verdict = PesVerdict::AllStable;
  CriticalNumbers critical;
  std::optional<double> critical_delta;
  int critical_mode = 0;                 // 1 for Hopf, k0 for steady
  std::vector<ModeStability> at_delta;   // spectrum at the requested delta
  bool all_stable_at_delta = false;
  // Spectrum at the critical delta.
  double designated_real = 0;            // real part of the crossing eigenvalue(s)
  double designated_imag = 0;
  double others_max_real = 0;            // over every other eigenvalue of every mode
  bool crossing_confirmed = false;       // |designated| < 1e-6 and others < -1e-8
};

PesReport pes_check(const NondimParams& p, double sigma, double delta,
                    const std::vector<SpectralMode>& modes);

}  // namespace bzt
