#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bzt/critical.hpp"
#include "bzt/model.hpp"
#include "bzt/spectrum.hpp"

namespace bzt {

// Closed forms exactly as printed (after the readings noted in the docs);
// kept for table reproduction and as a cross-check of the chain below.
struct HopfPrintedTable {
  double D0 = 0, D1 = 0, D2 = 0, D3 = 0, D4 = 0, D5 = 0, D6 = 0, D7 = 0, D8 = 0;
  double E = 0, H1 = 0, H2 = 0;
  double F1 = 0, F2 = 0, F3 = 0;
  double xi_xis = 0, xi_etas = 0;  // printed inner products
  double a20 = 0, a11 = 0, b20 = 0, b11 = 0, a30 = 0, a12 = 0, b03 = 0, b21 = 0;
  double b1_list = 0;     // quoted combination of the printed coefficients
  double b1_display = 0;  // long display formula
};

struct HopfChain {
  double sigma = 0, delta0 = 0;
  double A = 0, B = 0, C = 0, rho = 0;
  Vec3 xi, eta, xi_star, eta_star;
  Vec3 zeta, zeta_star;
  Vec3 zeta_printed;  // second entry carries the printed +1
  double xi_xis = 0, xi_etas = 0, eta_xis = 0, eta_etas = 0;
  Vec3 psi1, psi2;    // adjoint combinations
  Vec3 dual_x, dual_y;  // functionals returning the x, y coordinates
  Vec3 G11, G12, Gxz, Gze;
  double D0 = 0, D1 = 0, D2 = 0, Dsq = 0;
  double F1 = 0, F2 = 0, F3 = 0;
  double a20 = 0, a11 = 0, a02 = 0, a30 = 0, a21 = 0, a12 = 0, a03 = 0;
  double b20 = 0, b11 = 0, b02 = 0, b30 = 0, b21 = 0, b12 = 0, b03 = 0;
  double b1 = 0;
  double b1_scale = 0;  // largest term of the b1 combination
  // Residuals of the eigen relations, relative to |M| |v|.
  double res_eigen = 0, res_adjoint = 0, res_zeta = 0, res_zeta_star = 0, res_zeta_printed = 0;
  HopfPrintedTable printed;
};

HopfChain hopf_chain(const NondimParams& p, double sigma, double delta0);
HopfChain hopf_chain(const NondimParams& p, double sigma, const CriticalNumbers& cn);

enum class TransitionType { TypeI_Continuous, TypeII_Jump, TypeIII_Mixed };
const char* to_string(TransitionType t);

enum class BranchSide { BelowCritical, AboveCritical };
const char* to_string(BranchSide s);

struct AmplitudeLaw {
  std::string prefactor_rule;
  double coefficient = 0;          // amplitude^2 = coefficient * Re beta(delta)
  double coefficient_printed = 0;
  std::vector<Vec3> eigendirection;  // xi (and eta for Hopf)
  std::vector<int> mode;             // multi-index of the spatial mode
};

struct TransitionReport {
  Scenario scenario = Scenario::NoTransition;
  double critical_delta = 0;
  std::vector<std::pair<std::string, double>> coefficients;
  TransitionType classification = TransitionType::TypeI_Continuous;
  BranchSide side = BranchSide::BelowCritical;
  std::string branch_stability;
  AmplitudeLaw amplitude;
};

TransitionReport classify_hopf(const HopfChain& chain);

double steady_b0(const NondimParams& p, double sigma, double delta1, double rho_k0);

struct SteadyChain {
  int k0 = 0, j = 0;
  double rho = 0, rho_j = 0, delta1 = 0, length = 0;
  double R = 0;  // mu3 rho + delta1
  Vec3 xi, xi_star;
  double res_xi = 0, res_xi_star = 0;
  double b0 = 0;
  double b0_projection = 0;  // (G(xi,xi), xi*) / R^3 alpha (sigma - 1)
  double Cconst = 0;
  Vec3 G_xi;
  Vec3 phi0, phij;
  double det_M1 = 0, det_Mj = 0;
  Vec3 int_phi_e2;
  double xi_xis = 0, xi_xis_printed = 0;
  double mean_square = 0;
  double b1 = 0;
  double b1_scale = 0;
  double phi_residual = 0;
  bool cube_condition = false;
  std::vector<int> multi_index;
};

SteadyChain steady_chain(const NondimParams& p, double sigma, double delta1,
                         const SpectralMode& mode, const Domain& domain,
                         std::optional<bool> cube_condition_override = std::nullopt);
SteadyChain steady_chain(const NondimParams& p, double sigma, const CriticalNumbers& cn,
                         const std::vector<SpectralMode>& modes, const Domain& domain,
                         std::optional<bool> cube_condition_override = std::nullopt);

TransitionReport classify_steady(const SteadyChain& chain, double b0);

// Real eigenvalue of M_k(delta) closest to zero.
double critical_real_eigenvalue(const NondimParams& p, double sigma, double delta, double rho);

// Leading-order branch amplitude y with u = +-y xi e_k0 (absent on the empty side).
std::optional<double> steady_branch_amplitude(const NondimParams& p, double sigma,
                                              const SteadyChain& chain, double delta);

}  // namespace bzt
