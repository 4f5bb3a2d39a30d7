#pragma once

#include <string>
#include <vector>

namespace bzt {

// Dimensional kinetics. Rate constants k1..k4 in 1/(M s), k5 in 1/s,
// concentrations in M, diffusivities in l^2/s, length in l.
struct ChemKinetics {
  double k1 = 0, k2 = 0, k3 = 0, k4 = 0, k5 = 0;
  double a = 0, b = 0;
  double gamma = 0;
  double sigma1 = 0, sigma2 = 0, sigma3 = 0;
  double length = 0;
};

struct NondimParams {
  double mu1 = 0, mu2 = 0, mu3 = 0;
  double alpha = 0, beta = 0, gamma = 0;
  double delta = 0;
};

// Which rate pair scales the diffusivities.
enum class MuScale { K1K2, K1K3 };

struct NondimOptions {
  MuScale mu_scale = MuScale::K1K2;
};

// Both readings of the delta and mu scalings, for reporting.
struct ScalingReadings {
  double delta_inverse_sqrt = 0;  // k5 (k1 k3 a b)^(-1/2), the one we use
  double delta_sqrt = 0;          // k5 (k1 k3 a b)^(+1/2)
  double mu_k1k2[3] = {0, 0, 0};
  double mu_k1k3[3] = {0, 0, 0};
};

void validate(const ChemKinetics& c);
void validate(const NondimParams& p);

// Non-fatal remarks (gamma far from order one, ...).
std::vector<std::string> warnings(const ChemKinetics& c);

NondimParams nondimensionalize(const ChemKinetics& c, const NondimOptions& opt = {});
ScalingReadings scaling_readings(const ChemKinetics& c);

const char* to_string(MuScale s);

}  // namespace bzt
