#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "bzt/critical.hpp"
#include "bzt/equilibria.hpp"
#include "bzt/error.hpp"
#include "bzt/pes.hpp"

using namespace bzt;

namespace {

const NondimParams kExample{1, 1, 1, 77.27, 8.375e-6, 1.0, 1.0};

// Sign change of A B - C on a bracket, found by plain bisection.
double bisect_delta0(const NondimParams& p, double sigma) {
  auto f = [&](double d) {
    NondimParams q = p;
    q.delta = d;
    const CubicCoeffs c = cubic_coeffs(q, sigma, 0.0);
    return c.A * c.B - c.C;
  };
  double lo = 1e-9, hi = 1.0;
  while (f(hi) < 0) hi *= 2;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("delta0 stepwise from the printed a, b, c") {
  const auto d = delta0_from_abc(9.74, 690.79, 8.21);
  REQUIRE(d);
  CHECK(*d == doctest::Approx(71.67).epsilon(0.05 / 71.67));
}

TEST_CASE("delta0 against bisection") {
  CHECK(*delta0(kExample, 700) == doctest::Approx(bisect_delta0(kExample, 700)).epsilon(1e-12));
  std::mt19937_64 g(9);
  std::uniform_real_distribution<double> u(0.1, 3);
  int n = 0;
  for (int i = 0; i < 200; ++i) {
    NondimParams p{1, 1, 1, u(g) * 3, u(g) * 0.05, u(g), 1};
    const double s = sigma_root(p);
    const auto d = delta0(p, s);
    if (!d) {
      CHECK(b_parameter(p, s) <= 0);
      continue;
    }
    ++n;
    CHECK(*d == doctest::Approx(bisect_delta0(p, s)).epsilon(1e-10));
  }
  CHECK(n > 20);
}

TEST_CASE("b <= 0 gives no critical numbers") {
  NondimParams p{1, 1, 1, 1.2, 0.4, 1.1, 0.9};
  const double s = sigma_root(p);
  CHECK_FALSE(delta0(p, s));
  Domain d{DomainKind::Interval, {1.0}, 20};
  const CriticalNumbers cn = scenario(p, s, laplace_modes(d));
  CHECK(cn.scenario == Scenario::NoTransition);
}

TEST_CASE("C_k vanishes at delta_crit_mode") {
  std::mt19937_64 g(2);
  std::uniform_real_distribution<double> u(0.1, 5);
  for (int i = 0; i < 200; ++i) {
    NondimParams p{u(g), u(g), u(g) * 4, 77.27, 8.375e-6, 1.0, 1};
    const double rho = u(g);
    p.delta = delta_crit_mode(p, 700, rho);
    if (p.delta <= 0) continue;
    const CubicCoeffs c = cubic_coeffs(p, 700, rho);
    CHECK(std::abs(c.C) <= 1e-10 * (std::abs(c.A) * std::abs(c.B) + 1e3));
  }
}

TEST_CASE("delta1 is linear in z when mu3 = z mu1") {
  Domain d{DomainKind::Interval, {std::numbers::pi}, 50};
  const auto modes = laplace_modes(d);
  NondimParams p = kExample;
  p.mu1 = p.mu2 = 2.47;
  double g = 0;
  for (double z : {1.5, 2.0, 3.0, 5.0}) {
    p.mu3 = z * p.mu1;
    const auto r = delta1(p, 700, modes);
    REQUIRE(r);
    if (g == 0) g = r->delta1 / z;
    CHECK(r->delta1 / z == doctest::Approx(g).epsilon(1e-12));
    CHECK(r->k0 == 2);
  }
}

TEST_CASE("scenario selection in the worked example") {
  Domain d{DomainKind::Interval, {std::numbers::pi}, 50};
  const auto modes = laplace_modes(d);
  NondimParams p = kExample;
  p.mu1 = p.mu2 = 2.4704367;
  p.mu3 = 2 * p.mu1;
  const CriticalNumbers cn = scenario(p, 700, modes);
  CHECK(cn.scenario == Scenario::SteadyAtDelta1);
  CHECK(cn.d1->k0 == 2);
  CHECK(*cn.delta1() > *cn.delta0);
  // The continuous maximizer coincides with rho_2 = 1 by construction.
  CHECK(cn.d1->continuous_rho == doctest::Approx(1.0).epsilon(1e-4));
  p.mu3 = p.mu1;
  CHECK(scenario(p, 700, modes).scenario == Scenario::HopfAtDelta0);
  const CriticalNumbers st = scenario(kExample, 700, {SpectralMode{}});
  CHECK(st.scenario == Scenario::HopfAtDelta0);
  CHECK_FALSE(st.d1);
}

TEST_CASE("mode cap too small") {
  // Long interval: the maximizing rho sits far down the list.
  Domain d{DomainKind::Interval, {200.0}, 5};
  NondimParams p = kExample;
  p.mu1 = p.mu2 = 2.47;
  p.mu3 = 5;
  CHECK_THROWS_AS(delta1(p, 700, laplace_modes(d)), Error);
}

TEST_CASE("PES at delta0 (stirred and spatial)") {
  const double d0 = *delta0(kExample, 700);
  const PesReport r = pes_check(kExample, 700, d0, {SpectralMode{}});
  CHECK(r.verdict == PesVerdict::HopfCrossing);
  CHECK(std::abs(r.designated_real) < 1e-8);
  CHECK(r.designated_imag > 0);
  CHECK(r.others_max_real < -1e-8);
  CHECK(r.crossing_confirmed);

  Domain d{DomainKind::Interval, {1.0}, 50};
  NondimParams p = kExample;
  const PesReport s = pes_check(p, 700, d0, laplace_modes(d));
  CHECK(s.crossing_confirmed);
  CHECK(s.at_delta.size() == 50);
}

TEST_CASE("PES at delta1") {
  Domain d{DomainKind::Interval, {std::numbers::pi}, 50};
  NondimParams p = kExample;
  p.mu1 = p.mu2 = 2.4704367;
  p.mu3 = 2 * p.mu1;
  const auto modes = laplace_modes(d);
  const CriticalNumbers cn = scenario(p, 700, modes);
  const PesReport r = pes_check(p, 700, *cn.delta1(), modes);
  CHECK(r.verdict == PesVerdict::SteadyCrossing);
  CHECK(r.critical_mode == 2);
  CHECK(std::abs(r.designated_real) < 1e-8);
  CHECK(r.designated_imag == 0.0);
  CHECK(r.others_max_real < -1e-8);
  // Just above delta1 everything is stable, just below mode 2 is unstable.
  const PesReport above = pes_check(p, 700, *cn.delta1() * 1.01, modes);
  CHECK(above.all_stable_at_delta);
  const PesReport below = pes_check(p, 700, *cn.delta1() * 0.99, modes);
  CHECK_FALSE(below.all_stable_at_delta);
}
