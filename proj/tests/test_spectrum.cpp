#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "bzt/equilibria.hpp"
#include "bzt/error.hpp"
#include "bzt/spectrum.hpp"

using namespace bzt;
constexpr double kPi = std::numbers::pi;

namespace {

NondimParams random_params(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(0.05, 3);
  NondimParams p;
  p.alpha = u(g) * 5;
  p.beta = u(g) * 0.1;
  p.gamma = u(g);
  p.delta = u(g) * 5;
  p.mu1 = u(g);
  p.mu2 = u(g);
  p.mu3 = u(g);
  return p;
}

}  // namespace

TEST_CASE("interval modes") {
  Domain d{DomainKind::Interval, {2.5}, 12};
  const auto m = laplace_modes(d);
  REQUIRE(m.size() == 12);
  for (int k = 1; k <= 12; ++k) {
    CHECK(m[k - 1].index == k);
    CHECK(m[k - 1].rho == doctest::Approx(std::pow((k - 1) * kPi / 2.5, 2)).epsilon(1e-14));
    CHECK(m[k - 1].cube_integral_zero == (k >= 2));
  }
  CHECK(m[0].mean_square == doctest::Approx(2.5));
  CHECK(m[3].mean_square == doctest::Approx(1.25));
}

TEST_CASE("rectangle ordering against brute force") {
  Domain d{DomainKind::Rectangle, {kPi, 2 * kPi}, 6};
  const auto m = laplace_modes(d);
  std::vector<double> brute;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) brute.push_back(i * i + j * j / 4.0);
  std::sort(brute.begin(), brute.end());
  REQUIRE(m.size() == 6);
  const double expect[6] = {0, 0.25, 1, 1, 1.25, 2};
  for (int k = 0; k < 6; ++k) {
    CHECK(m[k].rho == doctest::Approx(brute[k]));
    CHECK(m[k].rho == doctest::Approx(expect[k]));
  }
  // Ties broken by multi-index.
  CHECK(m[2].multi_index == std::vector<int>{0, 2});
  CHECK(m[3].multi_index == std::vector<int>{1, 0});
}

TEST_CASE("mean square and cube integral by quadrature") {
  Domain d{DomainKind::Rectangle, {1.3, 0.7}, 10};
  const int n = 400;
  for (const auto& m : laplace_modes(d)) {
    double sq = 0, cu = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double x = (i + 0.5) * 1.3 / n, y = (j + 0.5) * 0.7 / n;
        const double e = std::cos(m.multi_index[0] * kPi * x / 1.3) * std::cos(m.multi_index[1] * kPi * y / 0.7);
        sq += e * e;
        cu += e * e * e;
      }
    const double w = 1.3 * 0.7 / (n * n);
    CHECK(sq * w == doctest::Approx(m.mean_square).epsilon(1e-4));
    CHECK((std::abs(cu * w) < 1e-6) == m.cube_integral_zero);
  }
}

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(validate(Domain{DomainKind::Interval, {1.0, 2.0}, 10}), Error);
  CHECK_THROWS_AS(validate(Domain{DomainKind::Interval, {-1.0}, 10}), Error);
  CHECK_THROWS_AS(validate(Domain{DomainKind::Interval, {1.0}, 0}), Error);
}

TEST_CASE("cubic coefficients equal trace, minor sum and determinant") {
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> r(0, 20);
  for (int i = 0; i < 500; ++i) {
    const NondimParams p = random_params(g);
    const double s = sigma_root(p), rho = r(g);
    const CubicCoeffs a = cubic_coeffs(p, s, rho);
    const Mat3 m = m_matrix(p, s, rho);
    const double tr = m.trace();
    const double minors = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) +
                          m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    const double scale = m.cwiseAbs().maxCoeff();
    CHECK(a.A == doctest::Approx(-tr).epsilon(1e-12));
    CHECK(std::abs(a.B - minors) <= 1e-11 * scale * scale);
    CHECK(std::abs(a.C + m.determinant()) <= 1e-11 * scale * scale * scale);
  }
}

TEST_CASE("m_matrix at rho = 0 is the kinetic Jacobian at U1") {
  std::mt19937_64 g(8);
  for (int i = 0; i < 100; ++i) {
    const NondimParams p = random_params(g);
    const auto u1 = steady_states(p).second;
    const Mat3 diff = m_matrix(p, u1.sigma, 0.0) - reaction_jacobian(p, u1.vec());
    CHECK(diff.norm() <= 1e-10 * reaction_jacobian(p, u1.vec()).norm());
  }
}

TEST_CASE("eigen3 against the general solver") {
  std::mt19937_64 g(4);
  std::normal_distribution<double> n(0, 1);
  for (int i = 0; i < 300; ++i) {
    Mat3 m;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m(r, c) = n(g) * std::pow(10.0, (r - c));
    const EigenTriple t = eigen3(m);
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> ces(m.cast<cplx>());
    for (int k = 0; k < 3; ++k) {
      double best = 1e300;
      for (int j = 0; j < 3; ++j) best = std::min(best, std::abs(t.values[k] - ces.eigenvalues()(j)));
      CHECK(best <= 1e-9 * (1 + m.norm()));
      const Eigen::Vector3cd res = m.cast<cplx>() * t.vectors[k] - t.values[k] * t.vectors[k];
      CHECK(res.norm() <= 1e-8 * m.norm());
      CHECK(t.vectors[k].norm() == doctest::Approx(1.0));
    }
    CHECK(t.values[0].real() >= t.values[1].real() - 1e-12);
    CHECK(t.values[1].real() >= t.values[2].real() - 1e-12);
  }
}

TEST_CASE("eigen3 of triangular matrices is exact") {
  const EigenTriple t = eigen3(Mat3::Identity());
  for (const auto& v : t.values) CHECK(v == cplx(1, 0));
  Mat3 u;
  u << 3, 1, 2, 0, -1, 5, 0, 0, 2;
  const EigenTriple s = eigen3(u);
  CHECK(s.values[0] == cplx(3, 0));
  CHECK(s.values[1] == cplx(2, 0));
  CHECK(s.values[2] == cplx(-1, 0));
}

TEST_CASE("Hurwitz matches eigenvalue signs on random cubics") {
  std::mt19937_64 g(21);
  std::uniform_real_distribution<double> u(-1, 1);
  int tested = 0;
  for (int i = 0; i < 1000; ++i) {
    CubicCoeffs c{u(g) * 10, u(g) * 10, u(g) * 10};
    const auto roots = cubic_roots(c);
    const double mr = roots[0].real();
    if (std::abs(mr) < 1e-6) continue;
    ++tested;
    CHECK((hurwitz(c) == Stability::Stable) == (mr < 0));
  }
  CHECK(tested > 990);
}

TEST_CASE("Hurwitz marginal cases") {
  // (l^2 + 1)(l + 1)
  CHECK(hurwitz(CubicCoeffs{1, 1, 1}) == Stability::Marginal);
  // l (l + 1)(l + 2)
  CHECK(hurwitz(CubicCoeffs{3, 2, 0}) == Stability::Marginal);
  CHECK(hurwitz(CubicCoeffs{3, 3, 1}) == Stability::Stable);
  CHECK(hurwitz(CubicCoeffs{-1, 1, 1}) == Stability::Unstable);
}
