#pragma once

#include <optional>
#include <vector>

#include "bzt/params.hpp"
#include "bzt/spectrum.hpp"

namespace bzt {

struct AbcNumbers {
  double a = 0, b = 0, c = 0;
  double p = 0, q = 0;  // the two summands of a
};

AbcNumbers abc_numbers(const NondimParams& p, double sigma);

// Positive root of a delta^2 + (a^2 - b - c) delta - a b = 0, i.e. AB - C = 0
// with A = a + delta, B = a delta - b, C = c delta. Absent when b <= 0.
std::optional<double> delta0_from_abc(double a, double b, double c);
std::optional<double> delta0(const NondimParams& p, double sigma);

struct Delta1Result {
  double delta1 = 0;
  int k0 = 0;            // 1-based mode index
  double rho_k0 = 0;
  double continuous_max = 0;
  double continuous_rho = 0;
};

// Critical delta at which C_k vanishes, for one nonzero rho.
double delta_crit_mode(const NondimParams& p, double sigma, double rho);

// Max over nonzero modes; absent when b <= 0 or there are no nonzero modes.
std::optional<Delta1Result> delta1(const NondimParams& p, double sigma,
                                   const std::vector<SpectralMode>& modes);

enum class Scenario { HopfAtDelta0, SteadyAtDelta1, NoTransition };
const char* to_string(Scenario s);

struct CriticalNumbers {
  AbcNumbers abc;
  std::optional<double> delta0;
  std::optional<Delta1Result> d1;
  Scenario scenario = Scenario::NoTransition;
  bool degenerate = false;  // delta0 and delta1 coincide
  std::optional<double> delta1() const {
    return d1 ? std::optional<double>(d1->delta1) : std::nullopt;
  }
};

CriticalNumbers scenario(const NondimParams& p, double sigma, const std::vector<SpectralMode>& modes);

}  // namespace bzt
