#include "bzt/transition.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "bzt/error.hpp"

namespace bzt {

namespace {

double rel_residual(const Eigen::Vector3cd& r, const Mat3& m, const Eigen::Vector3cd& v) {
  return r.norm() / (std::max(m.norm(), 1e-300) * std::max(v.norm(), 1e-300));
}

double max_abs(std::initializer_list<double> xs) {
  double m = 0;
  for (double x : xs) m = std::max(m, std::abs(x));
  return m;
}

HopfPrintedTable printed_table(const NondimParams& p, double s, double d0, double A, double rho,
                               const AbcNumbers& n) {
  const double al = p.alpha, be = p.beta, ga = p.gamma;
  const double r2 = rho * rho, dr = d0 * d0 + r2;
  HopfPrintedTable t;
  t.H1 = al * (s - 1) * dr * dr;
  t.H2 = al * al * (s - 1) * (s - 1);
  t.D0 = ga * d0 / (al * n.a * n.a) + (n.a + 2 * d0) / (al * (s - 1));
  t.D1 = be / al + (al * A - 2) * (be * s + 2 * be + ga - 1) / (2 * al * (s - 1) * (s - 1));
  t.D2 = (2 - al * A) / (al * al * (s - 1) * (s - 1));
  t.D3 = d0 * (s - 1);
  t.D4 = A + al * be * s * s + al - 3 * al * be * s - al * be - al * ga;
  t.D5 = A + al - al * be * s - 2 * al * be - al * ga;
  t.D6 = dr * dr + ga * d0 * d0 * (s - 1);
  t.D7 = 1 - be * s - be - ga;
  t.D8 = be * s * s + be + 1 - 3 * be * s - ga;
  t.E = al * al * al * std::pow(s - 1, 3) * dr * dr;
  const double K = A * A + 4 * r2;
  t.F1 = t.D1 / A - 2 * r2 * t.D1 / (A * K) - rho * t.D2 / K;
  t.F2 = t.D2 / A - 4 * r2 * t.D2 / (A * K) + 2 * rho * t.D1 / K;
  t.F3 = 2 * rho * t.D1 / (A * K) + rho * t.D2 / K;
  t.xi_xis = -ga * r2 * t.D3 / t.H1;
  t.xi_etas = -rho * t.D6 / t.H1;

  const double Dsq = t.xi_xis * t.xi_xis + t.xi_etas * t.xi_etas;
  const double D3 = t.D3, D4 = t.D4, D5 = t.D5, D6 = t.D6, D7 = t.D7, D8 = t.D8;
  const double HHD = t.H1 * t.H2 * Dsq;
  t.a20 = -r2 / (2 * HHD) * (2 * al * ga * D3 * D8 + al * al * D6 * D7);
  t.a11 = -rho * r2 / HHD * (2 * ga * D3 + al * D6);
  t.b20 = rho / (2 * HHD) * (2 * al * D6 * D8 - ga * al * al * r2 * D3 * D7);
  t.b11 = r2 / (2 * HHD) * (2 * D6 - al * ga * r2 * D3);
  t.a30 = r2 * t.F1 / (t.D0 * HHD) * (2 * ga * D3 * D4 + al * D5 * D6);
  t.a12 = -r2 / (t.D0 * HHD) * ((2 * ga * D3 * D4 + al * D5 * D6) * t.F3 + (2 * ga * D3 + al * D6) * rho * t.F2);
  t.b03 = r2 * t.F3 / (t.D0 * HHD) * (2 * D6 - al * ga * r2 * D3);
  t.b21 = r2 / (t.D0 * HHD) *
          ((2 / rho * D4 * D6 - al * ga * rho * D3 * D5) * t.F2 + (2 * D6 - al * ga * r2 * D3) * t.F1);
  t.b1_list = 3 * (t.a30 + t.b03) + (t.a12 + t.b21) - 2 / rho * t.a20 * t.b20 +
              (t.a11 * t.a20 - t.b11 * t.b20) / rho;

  const double DE = Dsq * t.E;
  const double F1 = t.F1, F2 = t.F2, F3 = t.F3;
  const double inner =
      3 / t.D0 * ((2 * D6 - al * ga * r2 * D3) * F3 - (2 * ga * D3 * D4 + al * D5 * D6) * F1) -
      1 / t.D0 * ((al * ga * r2 * D3 - 2 * D6) * F1 + (2 * ga * D3 * D4 + al * D5 * D6) * F3) +
      1 / t.D0 * (2 * ga * rho * D3 + al * rho * D6 + al * ga * rho * D3 * D5 - 2 / rho * D4 * D6) * F2 +
      al / (2 * DE * rho) * (2 * ga * D3 * D8 + al * D6 * D7) * (2 / rho * D6 * D8 - al * ga * rho * D3 * D7) +
      al * r2 / (2 * DE) * (2 * ga * D3 + al * D6) * (2 * ga * D3 * D8 + al * D6 * D7) -
      al * r2 / (2 * DE) * (2 * D6 - al * ga * r2 * D3) * (2 / r2 * D6 * D8 - al * ga * D3 * D7);
  t.b1_display = r2 / DE * inner;
  return t;
}

}  // namespace

HopfChain hopf_chain(const NondimParams& p, double sigma, double delta0) {
  if (std::abs(sigma - 1) < 1e-12)
    throw Error(ErrorCode::SingularEigenbasis, "transition", "sigma = 1: eigenbasis formulas divide by sigma - 1");
  const AbcNumbers n = abc_numbers(p, sigma);
  const double al = p.alpha, be = p.beta, ga = p.gamma, s = sigma, d0 = delta0;
  HopfChain h;
  h.sigma = s;
  h.delta0 = d0;
  h.A = n.a + d0;
  h.B = n.a * d0 - n.b;
  h.C = d0 * n.c;
  if (!(h.B > 0))
    throw Error(ErrorCode::SingularEigenbasis, "transition", "B <= 0 at delta0: no imaginary pair");
  h.rho = std::sqrt(h.B);
  const double rho = h.rho, dr = d0 * d0 + rho * rho;

  h.xi = {1, -(ga + 3 * be * s - 1) / (2 * (s - 1)), d0 * d0 / dr};
  h.eta = {0, rho / (al * (s - 1)), rho * d0 / dr};
  h.xi_star = {-(s + 1) / (al * al * (s - 1)), 1, ga * d0 / (al * dr)};
  h.eta_star = {-rho / (al * (s - 1)), 0, -ga * rho / (al * dr)};
  h.zeta = {1, (h.A - al / 2 * (ga + 3 * be * s - 1)) / (al * (s - 1)), -d0 / n.a};
  h.zeta_printed = {1, (h.A - al / 2 * (ga + 3 * be * s + 1)) / (al * (s - 1)), -d0 / n.a};
  h.zeta_star = {(h.A - (s + 1) / al) / (al * (s - 1)), 1, -ga / (al * n.a)};

  NondimParams q = p;
  q.delta = d0;
  const Mat3 M = m_matrix(q, s, 0.0);
  const std::complex<double> I(0, 1);
  const Eigen::Vector3cd z = h.xi.cast<cplx>() + I * h.eta.cast<cplx>();
  const Eigen::Vector3cd zs = h.xi_star.cast<cplx>() + I * h.eta_star.cast<cplx>();
  h.res_eigen = rel_residual(M.cast<cplx>() * z + I * rho * z, M, z);
  h.res_adjoint = rel_residual(M.transpose().cast<cplx>() * zs - I * rho * zs, M, zs);
  auto real_res = [&](const Mat3& m, const Vec3& v) {
    return (m * v + h.A * v).norm() / (m.norm() * v.norm());
  };
  h.res_zeta = real_res(M, h.zeta);
  h.res_zeta_star = real_res(M.transpose(), h.zeta_star);
  h.res_zeta_printed = real_res(M, h.zeta_printed);

  h.xi_xis = h.xi.dot(h.xi_star);
  h.xi_etas = h.xi.dot(h.eta_star);
  h.eta_xis = h.eta.dot(h.xi_star);
  h.eta_etas = h.eta.dot(h.eta_star);
  h.Dsq = h.xi_xis * h.xi_xis + h.xi_etas * h.xi_etas;
  h.psi1 = (h.xi_xis * h.xi_star + h.xi_etas * h.eta_star) / h.xi_xis;
  h.psi2 = (h.eta_xis * h.xi_star + h.eta_etas * h.eta_star) / h.eta_etas;
  h.dual_x = (h.xi_xis * h.xi_star + h.xi_etas * h.eta_star) / h.Dsq;
  h.dual_y = (h.eta_xis * h.xi_star + h.eta_etas * h.eta_star) / h.Dsq;

  h.G11 = bilinear_g(p, h.xi, h.xi);
  h.G12 = bilinear_g(p, h.xi, h.eta) + bilinear_g(p, h.eta, h.xi);
  h.Gxz = bilinear_g(p, h.xi, h.zeta) + bilinear_g(p, h.zeta, h.xi);
  h.Gze = bilinear_g(p, h.zeta, h.eta) + bilinear_g(p, h.eta, h.zeta);

  h.D0 = h.zeta.dot(h.zeta_star);
  h.D1 = h.G11.dot(h.zeta_star);
  h.D2 = h.G12.dot(h.zeta_star);
  const double A = h.A, r2 = rho * rho, K = A * A + 4 * r2;
  h.F2 = (A * h.D2 + 2 * rho * h.D1) / K;
  h.F1 = (h.D1 - rho * h.F2) / A;
  h.F3 = rho * h.F2 / A;

  // Reduced equations on the center manifold, coefficient by coefficient.
  const Vec3& fx = h.dual_x;
  const Vec3& fy = h.dual_y;
  struct { double xz_x, ze_x, xz_y, ze_y; } cube{fx.dot(h.Gxz), fx.dot(h.Gze), fy.dot(h.Gxz), fy.dot(h.Gze)};
  h.a20 = fx.dot(h.G11);
  h.a11 = fx.dot(h.G12);
  h.b20 = fy.dot(h.G11);
  h.b11 = fy.dot(h.G12);
  const double inv = 1.0 / h.D0;
  h.a30 = inv * h.F1 * cube.xz_x;
  h.a21 = inv * (h.F2 * cube.xz_x + h.F1 * cube.ze_x);
  h.a12 = inv * (h.F3 * cube.xz_x + h.F2 * cube.ze_x);
  h.a03 = inv * h.F3 * cube.ze_x;
  h.b30 = inv * h.F1 * cube.xz_y;
  h.b21 = inv * (h.F2 * cube.xz_y + h.F1 * cube.ze_y);
  h.b12 = inv * (h.F3 * cube.xz_y + h.F2 * cube.ze_y);
  h.b03 = inv * h.F3 * cube.ze_y;
  h.b1 = 3 * (h.a30 + h.b03) + (h.a12 + h.b21) + 2 / rho * (h.a02 * h.b02 - h.a20 * h.b20) +
         (h.a11 * h.a20 - h.b11 * h.b20) / rho;
  h.b1_scale = max_abs({3 * h.a30, 3 * h.b03, h.a12, h.b21, 2 * h.a20 * h.b20 / rho,
                        h.a11 * h.a20 / rho, h.b11 * h.b20 / rho});

  h.printed = printed_table(p, s, d0, A, rho, n);
  return h;
}

HopfChain hopf_chain(const NondimParams& p, double sigma, const CriticalNumbers& cn) {
  if (cn.scenario != Scenario::HopfAtDelta0)
    throw Error(ErrorCode::ScenarioMismatch, "transition",
                std::string("Hopf chain requested but scenario is ") + to_string(cn.scenario));
  return hopf_chain(p, sigma, *cn.delta0);
}

const char* to_string(TransitionType t) {
  switch (t) {
    case TransitionType::TypeI_Continuous: return "TypeI_Continuous";
    case TransitionType::TypeII_Jump: return "TypeII_Jump";
    case TransitionType::TypeIII_Mixed: return "TypeIII_Mixed";
  }
  return "TypeI_Continuous";
}

const char* to_string(BranchSide s) {
  return s == BranchSide::BelowCritical ? "below_critical" : "above_critical";
}

TransitionReport classify_hopf(const HopfChain& h) {
  if (!(std::abs(h.b1) > 1e-12 * h.b1_scale))
    throw Error(ErrorCode::IndeterminateType, "transition", "b1 is zero to working precision");
  TransitionReport r;
  r.scenario = Scenario::HopfAtDelta0;
  r.critical_delta = h.delta0;
  r.coefficients = {{"b1", h.b1}, {"rho", h.rho}};
  if (h.b1 < 0) {
    r.classification = TransitionType::TypeI_Continuous;
    r.side = BranchSide::BelowCritical;
    r.branch_stability = "stable periodic orbit (attractor)";
  } else {
    r.classification = TransitionType::TypeII_Jump;
    r.side = BranchSide::AboveCritical;
    r.branch_stability = "unstable periodic orbit (repeller)";
  }
  // b1 is eight times the Cartesian normal-form cubic coefficient.
  r.amplitude.prefactor_rule =
      "u = x xi + y eta, x^2 + y^2 = -(8/b1) Re beta11(delta), x = r cos(rho t), y = r sin(rho t)";
  r.amplitude.coefficient = -8.0 / h.b1;
  r.amplitude.coefficient_printed = -1.0 / h.b1;
  r.amplitude.eigendirection = {h.xi, h.eta};
  r.amplitude.mode = {0};
  return r;
}

double steady_b0(const NondimParams& p, double sigma, double delta1, double rho) {
  (void)delta1;
  const AbcNumbers n = abc_numbers(p, sigma);
  return p.alpha * p.beta * (sigma - 1) * (p.mu2 * rho + n.q) -
         (p.alpha * p.mu2 * rho + 2 * sigma) * (p.mu1 * rho + n.p);
}

double critical_real_eigenvalue(const NondimParams& p, double sigma, double delta, double rho) {
  NondimParams q = p;
  q.delta = delta;
  const EigenTriple t = eigen3(m_matrix(q, sigma, rho));
  int best = -1;
  for (int i = 0; i < 3; ++i) {
    if (t.values[i].imag() != 0) continue;
    if (best < 0 || std::abs(t.values[i].real()) < std::abs(t.values[best].real())) best = i;
  }
  if (best < 0)
    throw Error(ErrorCode::SingularSolve, "transition", "no real eigenvalue near the steady crossing");
  return t.values[best].real();
}

SteadyChain steady_chain(const NondimParams& p, double sigma, double delta1, const SpectralMode& mode,
                         const Domain& domain, std::optional<bool> cube_condition_override) {
  validate(domain);
  if (mode.rho <= 0)
    throw Error(ErrorCode::InvalidArgument, "transition", "steady chain needs a nonconstant mode");
  const bool cube = cube_condition_override ? *cube_condition_override : !mode.cube_integral_zero;
  if (domain.kind != DomainKind::Interval && !cube)
    throw Error(ErrorCode::NotSupported, "transition",
                "the cubic steady-branch coefficient is implemented for the interval only");
  const AbcNumbers n = abc_numbers(p, sigma);
  const double al = p.alpha, s = sigma, rho = mode.rho;
  SteadyChain c;
  c.k0 = mode.index;
  c.multi_index = mode.multi_index;
  c.rho = rho;
  c.delta1 = delta1;
  c.length = domain.lengths[0];
  c.mean_square = mode.mean_square;
  c.cube_condition = cube;
  c.R = p.mu3 * rho + delta1;
  const double R = c.R;
  const double P = p.mu1 * rho + n.p, Q = p.mu2 * rho + n.q;
  c.xi = {al * (s - 1) * R, -P * R, al * delta1 * (s - 1)};
  c.xi_star = {-Q * R, al * (s - 1) * R, p.gamma * (s - 1)};

  NondimParams q = p;
  q.delta = delta1;
  const Mat3 Mk = m_matrix(q, s, rho);
  c.res_xi = (Mk * c.xi).norm() / (Mk.norm() * c.xi.norm());
  c.res_xi_star = (Mk.transpose() * c.xi_star).norm() / (Mk.norm() * c.xi_star.norm());

  c.b0 = steady_b0(p, s, delta1, rho);
  c.G_xi = bilinear_g(p, c.xi, c.xi);
  c.b0_projection = c.G_xi.dot(c.xi_star) / (al * (s - 1) * R * R * R);
  c.xi_xis = c.xi.dot(c.xi_star);
  c.xi_xis_printed = al * (1 - s) * ((P + Q) * R * R - p.gamma * delta1 * (s - 1));
  // Printed C with the ratio of the two mode integrals factored out.
  c.Cconst = ((P + Q) * R * R - (s - 1) * p.gamma * delta1) / (c.b0 * R * R * R);
  if (cube) return c;

  c.j = 2 * c.k0 - 1;
  c.rho_j = 4 * rho;
  const Mat3 M1 = m_matrix(q, s, 0.0), Mj = m_matrix(q, s, c.rho_j);
  auto check = [](const Mat3& m, const char* name) {
    const double scale = m.row(0).norm() * m.row(1).norm() * m.row(2).norm();
    const double d = m.determinant();
    if (std::abs(d) < 1e-12 * scale)
      throw Error(ErrorCode::SingularBlock, "transition", std::string(name) + " is singular");
    return d;
  };
  c.det_M1 = check(M1, "M_1");
  c.det_Mj = check(Mj, "M_j");
  const Vec3 rhs = -0.5 * c.G_xi;
  c.phi0 = M1.partialPivLu().solve(rhs);
  c.phij = Mj.partialPivLu().solve(rhs);
  c.phi_residual = std::max((M1 * c.phi0 - rhs).norm(), (Mj * c.phij - rhs).norm()) /
                   std::max(c.G_xi.norm(), 1e-300);

  const double L = c.length;
  c.int_phi_e2 = c.phi0 * (L / 2) + c.phij * (L / 4);
  const double t1 = -P * (al * p.mu2 * rho + 2) * c.int_phi_e2(0);
  const double t2 = 2 * al * al * p.beta * (s - 1) * Q * c.int_phi_e2(0);
  const double t3 = al * (s - 1) * (al * p.mu2 * rho + 2) * c.int_phi_e2(1);
  c.b1 = (t1 + t2 + t3) / c.xi_xis_printed;
  c.b1_scale = max_abs({t1, t2, t3}) / std::abs(c.xi_xis_printed);
  return c;
}

SteadyChain steady_chain(const NondimParams& p, double sigma, const CriticalNumbers& cn,
                         const std::vector<SpectralMode>& modes, const Domain& domain,
                         std::optional<bool> cube_condition_override) {
  if (cn.scenario != Scenario::SteadyAtDelta1)
    throw Error(ErrorCode::ScenarioMismatch, "transition",
                std::string("steady chain requested but scenario is ") + to_string(cn.scenario));
  const auto it = std::find_if(modes.begin(), modes.end(),
                               [&](const SpectralMode& m) { return m.index == cn.d1->k0; });
  return steady_chain(p, sigma, cn.d1->delta1, *it, domain, cube_condition_override);
}

TransitionReport classify_steady(const SteadyChain& c, double b0) {
  TransitionReport r;
  r.scenario = Scenario::SteadyAtDelta1;
  r.critical_delta = c.delta1;
  r.amplitude.eigendirection = {c.xi};
  r.amplitude.mode = c.multi_index;
  if (c.cube_condition) {
    if (b0 == 0 || !std::isfinite(b0))
      throw Error(ErrorCode::IndeterminateType, "transition", "b0 vanishes");
    r.classification = TransitionType::TypeIII_Mixed;
    r.side = BranchSide::BelowCritical;
    r.branch_stability = "single branch: saddle for delta > delta1, attractor for delta < delta1";
    r.coefficients = {{"b0", b0}, {"C", c.Cconst}};
    r.amplitude.prefactor_rule = "u = C beta(delta) xi e_k0";
    r.amplitude.coefficient = c.Cconst;
    r.amplitude.coefficient_printed = c.Cconst;
    return r;
  }
  if (!(std::abs(c.b1) > 1e-12 * c.b1_scale))
    throw Error(ErrorCode::IndeterminateType, "transition", "steady b1 is zero to working precision");
  r.coefficients = {{"b0", b0}, {"b1", c.b1}};
  if (c.b1 < 0) {
    r.classification = TransitionType::TypeI_Continuous;
    r.side = BranchSide::BelowCritical;
    r.branch_stability = "two steady states u+, u- (attractors)";
  } else {
    r.classification = TransitionType::TypeII_Jump;
    r.side = BranchSide::AboveCritical;
    r.branch_stability = "two steady states u+, u- (saddles)";
  }
  r.amplitude.prefactor_rule =
      "u = +-y xi e_k0, y^2 = -(int e_k0^2) beta(delta) / ((mu3 rho_k0 + delta1)^2 b1)";
  r.amplitude.coefficient = -c.mean_square / (c.R * c.R * c.b1);
  r.amplitude.coefficient_printed = r.amplitude.coefficient;
  return r;
}

std::optional<double> steady_branch_amplitude(const NondimParams& p, double sigma,
                                              const SteadyChain& c, double delta) {
  const double beta = critical_real_eigenvalue(p, sigma, delta, c.rho);
  const double y2 = -c.mean_square * beta / (c.R * c.R * c.b1);
  if (!(y2 > 0)) return std::nullopt;
  return std::sqrt(y2);
}

}  // namespace bzt
