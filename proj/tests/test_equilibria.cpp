#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "bzt/equilibria.hpp"
#include "bzt/error.hpp"

using namespace bzt;

namespace {

NondimParams random_params(std::mt19937_64& g) {
  std::uniform_real_distribution<double> lg(-6, 1);
  std::uniform_real_distribution<double> u(0.1, 5);
  NondimParams p;
  p.alpha = u(g) * 20;
  p.beta = std::pow(10.0, lg(g));
  p.gamma = u(g);
  p.delta = u(g);
  p.mu1 = p.mu2 = p.mu3 = 1;
  return p;
}

}  // namespace

TEST_CASE("U1 is an equilibrium of the kinetics") {
  std::mt19937_64 g(11);
  for (int i = 0; i < 500; ++i) {
    const NondimParams p = random_params(g);
    const auto [u0, u1] = steady_states(p);
    CHECK(reaction(p, u0.vec()).norm() == 0.0);
    const Vec3 r = reaction(p, u1.vec());
    const double scale = p.alpha * (u1.u1 + u1.u2 + u1.u1 * u1.u2 + p.beta * u1.u1 * u1.u1) +
                         (p.gamma * u1.u3 + u1.u2 + u1.u1 * u1.u2) / p.alpha;
    CHECK(r.norm() <= 1e-13 * scale);
    CHECK(steady_state_forms_agree(p, u1));
    CHECK(u1.sigma > 0);
  }
}

TEST_CASE("sigma root survives tiny beta") {
  NondimParams p{1, 1, 1, 77.27, 1e-14, 1.0, 1};
  const double s = sigma_root(p);
  // beta s^2 - (1 - gamma - beta) s - (1 + gamma) = 0
  const double t = 1 - p.gamma - p.beta;
  CHECK(std::abs(p.beta * s * s - t * s - (1 + p.gamma)) <= 1e-12 * (1 + p.gamma));
}

TEST_CASE("worked example at the printed sigma") {
  NondimParams p{1, 1, 1, 77.27, 8.375e-6, 1.0, 1};
  CHECK(b_parameter(p, 700.0) == doctest::Approx(690.79).epsilon(1e-4));
  // The true root differs from the printed 700.
  CHECK(sigma_root(p) == doctest::Approx(488.18).epsilon(1e-4));
}

TEST_CASE("b negative for large beta") {
  NondimParams p{1, 1, 1, 1.2, 0.4, 1.1, 0.9};
  CHECK(b_parameter(p) < 0);
}

TEST_CASE("invariant box: inward flux on every face") {
  std::mt19937_64 g(5);
  for (int i = 0; i < 200; ++i) {
    const NondimParams p = random_params(g);
    const RegionBox box = invariant_region(p);
    CHECK(region_box_valid(p, box));
    CHECK(inward_flux_check(p, box, 64));
    const auto u1 = steady_states(p).second;
    CHECK(box.contains(u1.vec()));
  }
}

TEST_CASE("a box failing the conditions leaks") {
  NondimParams p{1, 1, 1, 1.0, 0.5, 1.0, 1.0};
  RegionBox box{3.0, 0.5, 3.3};  // a2 < gamma a3
  CHECK_FALSE(region_box_valid(p, box));
  CHECK_FALSE(inward_flux_check(p, box, 64));
}

TEST_CASE("degenerate box") {
  NondimParams p{1, 1, 1, 1.0, 0.5, 1.0, 1.0};
  CHECK_THROWS_AS(inward_flux_check(p, RegionBox{0, 1, 1}, 8), Error);
  CHECK_THROWS_AS(invariant_region(p, 0.0), Error);
}
