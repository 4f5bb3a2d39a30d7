#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "bzt/model.hpp"
#include "bzt/params.hpp"

namespace bzt {

enum class DomainKind { Interval, Rectangle, Box };

struct Domain {
  DomainKind kind = DomainKind::Interval;
  std::vector<double> lengths{1.0};
  int mode_cap = 50;
};

void validate(const Domain& d);
const char* to_string(DomainKind k);

struct SpectralMode {
  int index = 1;                 // 1-based position in the sorted list
  std::vector<int> multi_index;  // cosine wave numbers per axis
  double rho = 0;
  bool cube_integral_zero = false;
  double mean_square = 0;        // integral of e_k^2 over the domain
};

std::vector<SpectralMode> laplace_modes(const Domain& d);

// Linear block of the system around U1 at Laplacian eigenvalue rho.
Mat3 m_matrix(const NondimParams& p, double sigma, double rho);

struct CubicCoeffs {
  double A = 0, B = 0, C = 0;  // lambda^3 + A lambda^2 + B lambda + C
};

CubicCoeffs cubic_coeffs(const NondimParams& p, double sigma, double rho);

// Coefficients read off the matrix itself: -trace, principal minors, -det.
CubicCoeffs char_poly(const Mat3& m);

using cplx = std::complex<double>;

struct EigenTriple {
  std::array<cplx, 3> values;
  std::array<Eigen::Vector3cd, 3> vectors;  // unit norm
  std::array<bool, 3> degenerate{false, false, false};
  double max_real() const { return values[0].real(); }
};

EigenTriple eigen3(const Mat3& m);

// Roots of a monic cubic, sorted by descending real part.
std::array<cplx, 3> cubic_roots(const CubicCoeffs& c);

enum class Stability { Stable, Marginal, Unstable };
const char* to_string(Stability s);

Stability hurwitz(const CubicCoeffs& c, double tol = 1e-9);

}  // namespace bzt
