#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "bzt/critical.hpp"
#include "bzt/equilibria.hpp"
#include "bzt/error.hpp"
#include "bzt/lyapunov.hpp"
#include "bzt/transition.hpp"

using namespace bzt;

namespace {

const NondimParams kExample{1, 1, 1, 77.27, 8.375e-6, 1.0, 1.0};

// Planar coefficients: f = sum f_ij x^i y^j / (i! j!) over i + j = 2.
struct Planar {
  double fxx, fxy, fyy, gxx, gxy, gyy;
};

// Reference value for x' = -w y + f, y' = w x + g (quadratic f, g).
double planar_reference(const Planar& c, double w) {
  return (c.fxy * (c.fxx + c.fyy) - c.gxy * (c.gxx + c.gyy) - c.fxx * c.gxx + c.fyy * c.gyy) / (16 * w);
}

Mat3 planar_jacobian(double w) {
  Mat3 j;
  j << 0, -w, 0, w, 0, 0, 0, 0, -1;
  return j;
}

BilinearForm planar_form(const Planar& c) {
  return [c](const Vec3c& u, const Vec3c& v) -> Vec3c {
    Vec3c r;
    r(0) = c.fxx * u(0) * v(0) + c.fxy * (u(0) * v(1) + u(1) * v(0)) + c.fyy * u(1) * v(1);
    r(1) = c.gxx * u(0) * v(0) + c.gxy * (u(0) * v(1) + u(1) * v(0)) + c.gyy * u(1) * v(1);
    r(2) = 0;
    return r;
  };
}

std::vector<NondimParams> random_hopf_sets(int n, unsigned seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<NondimParams> out;
  while (static_cast<int>(out.size()) < n) {
    NondimParams p{1, 1, 1, 0.5 + 80 * u(g), std::pow(10.0, -6 + 5 * u(g)), 0.3 + 2 * u(g), 1};
    const double s = sigma_root(p);
    if (!delta0(p, s)) continue;
    out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("first_lyapunov on the planar normal form x^2, x^2") {
  const Planar c{2, 0, 0, 2, 0, 0};
  const LyapunovResult r = first_lyapunov(planar_jacobian(1.0), planar_form(c));
  // Reference value -1/4 with a unit-norm eigenvector q = (1, -i)/sqrt 2: l1 = 2 a / w.
  CHECK(r.omega == doctest::Approx(1.0));
  CHECK(r.l1 == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("first_lyapunov cubic term") {
  const double s = -0.3;
  const TrilinearForm cube = [s](const Vec3c& u, const Vec3c& v, const Vec3c& w) -> Vec3c {
    // f = s (x^3 + x y^2), g = s (x^2 y + y^3), symmetrized with C(x,x,x) = 6 f.
    Vec3c r;
    r(0) = s * (6.0 * u(0) * v(0) * w(0) + 2.0 * (u(0) * v(1) * w(1) + u(1) * v(0) * w(1) + u(1) * v(1) * w(0)));
    r(1) = s * (2.0 * (u(0) * v(0) * w(1) + u(0) * v(1) * w(0) + u(1) * v(0) * w(0)) + 6.0 * u(1) * v(1) * w(1));
    r(2) = 0;
    return r;
  };
  const BilinearForm zero = [](const Vec3c&, const Vec3c&) -> Vec3c { return Vec3c::Zero(); };
  const LyapunovResult r = first_lyapunov(planar_jacobian(1.0), zero, cube);
  CHECK(r.l1 == doctest::Approx(2 * s).epsilon(1e-12));
}

TEST_CASE("first_lyapunov against the planar reference formula") {
  std::mt19937_64 g(17);
  std::normal_distribution<double> n(0, 1);
  for (int i = 0; i < 100; ++i) {
    const Planar c{n(g), n(g), n(g), n(g), n(g), n(g)};
    const double w = 0.5 + std::abs(n(g));
    const LyapunovResult r = first_lyapunov(planar_jacobian(w), planar_form(c));
    const double ref = 2 * planar_reference(c, w) / w;
    CHECK(r.l1 == doctest::Approx(ref).epsilon(1e-10).scale(1e-12));
  }
}

TEST_CASE("Hopf chain at the worked example") {
  const double d0 = *delta0(kExample, 700);
  const HopfChain ch = hopf_chain(kExample, 700, d0);
  CHECK(ch.rho == doctest::Approx(std::sqrt(ch.B)));
  CHECK(ch.A * ch.B == doctest::Approx(ch.C).epsilon(1e-10));
  CHECK(ch.res_eigen < 1e-12);
  CHECK(ch.res_adjoint < 1e-12);
  CHECK(ch.res_zeta < 1e-12);
  CHECK(ch.res_zeta_star < 1e-12);
  // The printed second entry of zeta is not an eigenvector.
  CHECK(ch.res_zeta_printed > 1e-6);
  CHECK(std::abs(ch.a02) == 0.0);
  CHECK(std::abs(ch.b02) == 0.0);
  CHECK(ch.b1 < 0);

  const HopfPrintedTable& t = ch.printed;
  CHECK(t.D3 == doctest::Approx(5e4).epsilon(0.05));
  CHECK(t.D4 == doctest::Approx(4e2).epsilon(0.05));
  CHECK(t.D5 == doctest::Approx(80).epsilon(0.05));
  CHECK(t.D6 == doctest::Approx(3e7).epsilon(0.05));
  CHECK(t.D7 == doctest::Approx(-6e-3).epsilon(0.05));
  CHECK(t.D8 == doctest::Approx(4).epsilon(0.05));
  CHECK(t.E == doctest::Approx(4e21).epsilon(0.05));
  CHECK(t.D0 == doctest::Approx(1.3e-2).epsilon(0.05));
  CHECK(t.F1 == doctest::Approx(8.3e-9).epsilon(0.05));
  CHECK(t.F3 == doctest::Approx(-8.4e-10).epsilon(0.05));
  // Documented: one decade below the printed -2.6e-7.
  CHECK(t.F2 == doctest::Approx(-2.6e-8).epsilon(0.05));

  const TransitionReport rep = classify_hopf(ch);
  CHECK(rep.classification == TransitionType::TypeI_Continuous);
  CHECK(rep.side == BranchSide::BelowCritical);
  CHECK(rep.amplitude.coefficient == doctest::Approx(-8 / ch.b1));
}

TEST_CASE("chain b1 equals the scaled first Lyapunov coefficient") {
  auto sets = random_hopf_sets(40, 23);
  sets.push_back(kExample);
  for (const auto& p : sets) {
    const double s = &p == &sets.back() ? 700.0 : sigma_root(p);
    const double d0 = *delta0(p, s);
    const HopfChain ch = hopf_chain(p, s, d0);
    const LyapunovResult ly = lyapunov_oracle_full(p, s, d0);
    const double n2 = ch.xi.squaredNorm() + ch.eta.squaredNorm();
    CHECK(ch.b1 == doctest::Approx(2 * ly.omega * n2 * ly.l1).epsilon(1e-7));
    CHECK(ly.omega == doctest::Approx(ch.rho).epsilon(1e-9));
  }
}

TEST_CASE("printed b1 forms at the worked example") {
  const HopfChain ch = hopf_chain(kExample, 700, *delta0(kExample, 700));
  // Away from this point the printed list disagrees in sign often; only the
  // example itself is checked.
  CHECK(ch.printed.b1_list < 0);
  CHECK(ch.printed.b1_display < 0);
}

TEST_CASE("hopf_chain preconditions") {
  CHECK_THROWS_AS(hopf_chain(kExample, 700, 1.0), Error);  // B < 0
  Domain d{DomainKind::Interval, {std::numbers::pi}, 50};
  NondimParams p = kExample;
  p.mu1 = p.mu2 = 2.4704367;
  p.mu3 = 2 * p.mu1;
  const CriticalNumbers cn = scenario(p, 700, laplace_modes(d));
  try {
    hopf_chain(p, 700, cn);
    FAIL("expected ScenarioMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ScenarioMismatch);
  }
}

TEST_CASE("Type-II when b1 > 0") {
  const auto sets = random_hopf_sets(200, 5);
  int found = 0;
  for (const auto& p : sets) {
    const double s = sigma_root(p);
    const HopfChain ch = hopf_chain(p, s, *delta0(p, s));
    if (ch.b1 > 0) {
      ++found;
      CHECK(classify_hopf(ch).classification == TransitionType::TypeII_Jump);
    }
  }
  CHECK(found > 0);
}

namespace {

struct SteadyFixture {
  NondimParams p = kExample;
  Domain d{DomainKind::Interval, {std::numbers::pi}, 50};
  std::vector<SpectralMode> modes;
  CriticalNumbers cn;
  SteadyChain ch;
  SteadyFixture() {
    p.mu1 = p.mu2 = 2.4704367;
    p.mu3 = 2 * p.mu1;
    modes = laplace_modes(d);
    cn = scenario(p, 700, modes);
    ch = steady_chain(p, 700, cn, modes, d);
  }
};

}  // namespace

TEST_CASE("steady chain at the non-stirred example") {
  SteadyFixture f;
  const SteadyChain& c = f.ch;
  CHECK(c.k0 == 2);
  CHECK(c.j == 3);
  CHECK(c.rho_j == doctest::Approx(4.0));
  CHECK(c.res_xi < 1e-12);
  CHECK(c.res_xi_star < 1e-12);
  CHECK(c.phi_residual < 1e-12);
  CHECK(c.xi_xis == doctest::Approx(c.xi_xis_printed).epsilon(1e-10));
  CHECK(c.b1 < 0);
  const TransitionReport r = classify_steady(c, c.b0);
  CHECK(r.classification == TransitionType::TypeI_Continuous);
  CHECK(r.branch_stability.find("attractors") != std::string::npos);
}

TEST_CASE("steady b0 printed form and projection") {
  SteadyFixture f;
  const NondimParams& p = f.p;
  const double s = 700, rho = f.ch.rho, d1 = f.ch.delta1;
  const double P = p.mu1 * rho + p.alpha / 2 * (3 * p.beta * s + p.gamma - 1);
  const double Q = p.mu2 * rho + (s + 1) / p.alpha;
  const double printed = p.alpha * p.beta * (s - 1) * Q - (p.alpha * p.mu2 * rho + 2 * s) * P;
  CHECK(f.ch.b0 == doctest::Approx(printed).epsilon(1e-13));
  const double R = p.mu3 * rho + d1;
  const Vec3 xi(p.alpha * (s - 1) * R, -P * R, p.alpha * d1 * (s - 1));
  const Vec3 xs(-Q * R, p.alpha * (s - 1) * R, p.gamma * (s - 1));
  const Vec3 G(-p.alpha * xi(0) * xi(1) - p.alpha * p.beta * xi(0) * xi(0), -xi(0) * xi(1) / p.alpha, 0);
  const double proj = G.dot(xs) / (p.alpha * (s - 1) * R * R * R);
  CHECK(f.ch.b0_projection == doctest::Approx(proj).epsilon(1e-12));
  const double derived = p.alpha * p.alpha * p.beta * (s - 1) * Q - (p.alpha * p.mu2 * rho + 2) * P;
  CHECK(f.ch.b0_projection == doctest::Approx(derived).epsilon(1e-10));
}

TEST_CASE("square of the critical mode splits into modes 1 and j") {
  SteadyFixture f;
  const double L = f.d.lengths[0];
  const int n = 20000;
  double s1 = 0, sj = 0;
  for (int i = 0; i < n; ++i) {
    const double x = (i + 0.5) * L / n;
    const double e = std::cos(std::numbers::pi * x / L);
    s1 += e * e * 1.0;
    sj += e * e * std::cos(2 * std::numbers::pi * x / L);
  }
  CHECK(s1 * L / n == doctest::Approx(L / 2).epsilon(1e-8));
  CHECK(sj * L / n == doctest::Approx(L / 4).epsilon(1e-6));
}

TEST_CASE("steady branch amplitude exists only below delta1") {
  SteadyFixture f;
  CHECK(steady_branch_amplitude(f.p, 700, f.ch, f.ch.delta1 * 0.98));
  CHECK_FALSE(steady_branch_amplitude(f.p, 700, f.ch, f.ch.delta1 * 1.02));
  const double beta = critical_real_eigenvalue(f.p, 700, f.ch.delta1, f.ch.rho);
  CHECK(std::abs(beta) < 1e-9);
}

TEST_CASE("cube condition switches to the mixed type") {
  SteadyFixture f;
  const SteadyChain c = steady_chain(f.p, 700, f.cn, f.modes, f.d, true);
  CHECK(c.cube_condition);
  CHECK(classify_steady(c, c.b0).classification == TransitionType::TypeIII_Mixed);
}

TEST_CASE("rectangle without the cube condition is not supported") {
  NondimParams p = kExample;
  p.mu1 = p.mu2 = 2.4704367;
  p.mu3 = 2 * p.mu1;
  Domain d{DomainKind::Rectangle, {std::numbers::pi, 1.0}, 50};
  const auto modes = laplace_modes(d);
  const CriticalNumbers cn = scenario(p, 700, modes);
  REQUIRE(cn.scenario == Scenario::SteadyAtDelta1);
  CHECK_THROWS_AS(steady_chain(p, 700, cn, modes, d), Error);
}
