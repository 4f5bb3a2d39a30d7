#include "bzt/params.hpp"

#include <cmath>
#include <string>

#include "bzt/error.hpp"

namespace bzt {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0) || !std::isfinite(v))
    throw Error(ErrorCode::NonPositiveParameter, "params",
                std::string(name) + " must be finite and > 0 (got " + std::to_string(v) + ")");
}

}  // namespace

void validate(const ChemKinetics& c) {
  require_positive(c.k1, "k1");
  require_positive(c.k2, "k2");
  require_positive(c.k3, "k3");
  require_positive(c.k4, "k4");
  require_positive(c.k5, "k5");
  require_positive(c.a, "a");
  require_positive(c.b, "b");
  require_positive(c.gamma, "gamma");
  require_positive(c.sigma1, "sigma1");
  require_positive(c.sigma2, "sigma2");
  require_positive(c.sigma3, "sigma3");
  require_positive(c.length, "length");
}

void validate(const NondimParams& p) {
  require_positive(p.mu1, "mu1");
  require_positive(p.mu2, "mu2");
  require_positive(p.mu3, "mu3");
  require_positive(p.alpha, "alpha");
  require_positive(p.beta, "beta");
  require_positive(p.gamma, "gamma");
  require_positive(p.delta, "delta");
}

std::vector<std::string> warnings(const ChemKinetics& c) {
  std::vector<std::string> w;
  if (c.gamma > 10) w.push_back("gamma > 10: stoichiometric factor is expected to be of order one");
  return w;
}

ScalingReadings scaling_readings(const ChemKinetics& c) {
  validate(c);
  ScalingReadings r;
  const double s13 = std::sqrt(c.k1 * c.k3 * c.a * c.b);
  const double s12 = std::sqrt(c.k1 * c.k2 * c.a * c.b);
  const double L2 = c.length * c.length;
  r.delta_inverse_sqrt = c.k5 / s13;
  r.delta_sqrt = c.k5 * s13;
  const double sig[3] = {c.sigma1, c.sigma2, c.sigma3};
  for (int i = 0; i < 3; ++i) {
    r.mu_k1k2[i] = sig[i] / (L2 * s12);
    r.mu_k1k3[i] = sig[i] / (L2 * s13);
  }
  return r;
}

NondimParams nondimensionalize(const ChemKinetics& c, const NondimOptions& opt) {
  validate(c);
  NondimParams p;
  p.alpha = std::sqrt(c.k3 * c.b / (c.k1 * c.a));
  p.beta = 2.0 * c.k1 * c.k4 * c.a / (c.k2 * c.k3 * c.b);
  p.gamma = c.gamma;

  // Time is scaled by (k1 k3 a b)^(-1/2), so delta must carry the inverse root.
  const ScalingReadings r = scaling_readings(c);
  p.delta = r.delta_inverse_sqrt;
  const double* mu = opt.mu_scale == MuScale::K1K2 ? r.mu_k1k2 : r.mu_k1k3;
  p.mu1 = mu[0];
  p.mu2 = mu[1];
  p.mu3 = mu[2];
  return p;
}

const char* to_string(MuScale s) { return s == MuScale::K1K2 ? "k1k2" : "k1k3"; }

}  // namespace bzt
