#include "bzt/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "bzt/error.hpp"

namespace bzt {

namespace {

constexpr double kPi = std::numbers::pi;

int expected_dims(DomainKind k) {
  switch (k) {
    case DomainKind::Interval: return 1;
    case DomainKind::Rectangle: return 2;
    case DomainKind::Box: return 3;
  }
  return 1;
}

cplx poly(const CubicCoeffs& c, cplx z) { return ((z + c.A) * z + c.B) * z + c.C; }
cplx dpoly(const CubicCoeffs& c, cplx z) { return (3.0 * z + 2.0 * c.A) * z + c.B; }

// Power-of-two diagonal similarity so row and column norms are comparable.
void balance(Mat3& m) {
  bool changed = true;
  for (int sweep = 0; changed && sweep < 50; ++sweep) {
    changed = false;
    for (int i = 0; i < 3; ++i) {
      double r = 0, c = 0;
      for (int j = 0; j < 3; ++j) {
        if (j == i) continue;
        r += std::abs(m(i, j));
        c += std::abs(m(j, i));
      }
      if (r == 0 || c == 0) continue;
      double f = 1.0;
      const double s = r + c;
      while (c < r / 2) { c *= 2; r /= 2; f *= 2; }
      while (c >= r * 2) { c /= 2; r *= 2; f /= 2; }
      if ((c + r) < 0.95 * s) {
        changed = true;
        m.row(i) /= f;
        m.col(i) *= f;
      }
    }
  }
}

Eigen::Vector3cd null_vector(const Mat3& m, cplx lambda, bool& degenerate) {
  Eigen::Matrix3cd n = m.cast<cplx>();
  for (int i = 0; i < 3; ++i) n(i, i) -= lambda;
  Eigen::Vector3cd best = Eigen::Vector3cd::Zero();
  double best_norm = -1;
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (const auto& pr : pairs) {
    // Bilinear cross product: orthogonal (without conjugation) to both rows.
    Eigen::Vector3cd r0 = n.row(pr[0]).transpose(), r1 = n.row(pr[1]).transpose();
    Eigen::Vector3cd v(r0(1) * r1(2) - r0(2) * r1(1), r0(2) * r1(0) - r0(0) * r1(2),
                       r0(0) * r1(1) - r0(1) * r1(0));
    const double nv = v.norm();
    if (nv > best_norm) { best_norm = nv; best = v; }
  }
  const double scale = std::max(n.norm(), 1e-300);
  degenerate = best_norm <= 1e-8 * scale * scale;
  if (degenerate) {
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> ces(m.cast<cplx>());
    int k = 0;
    for (int i = 1; i < 3; ++i)
      if (std::abs(ces.eigenvalues()(i) - lambda) < std::abs(ces.eigenvalues()(k) - lambda)) k = i;
    best = ces.eigenvectors().col(k);
  }
  // Fix the phase so the largest entry is real and positive.
  int imax = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(best(i)) > std::abs(best(imax))) imax = i;
  best *= std::conj(best(imax)) / std::abs(best(imax));
  return best / best.norm();
}

}  // namespace

const char* to_string(DomainKind k) {
  switch (k) {
    case DomainKind::Interval: return "interval";
    case DomainKind::Rectangle: return "rectangle";
    case DomainKind::Box: return "box";
  }
  return "interval";
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "Stable";
    case Stability::Marginal: return "Marginal";
    case Stability::Unstable: return "Unstable";
  }
  return "Stable";
}

void validate(const Domain& d) {
  if (static_cast<int>(d.lengths.size()) != expected_dims(d.kind))
    throw Error(ErrorCode::InvalidArgument, "spectrum",
                std::string("domain kind ") + to_string(d.kind) + " needs " +
                    std::to_string(expected_dims(d.kind)) + " lengths");
  for (double l : d.lengths)
    if (!(l > 0) || !std::isfinite(l))
      throw Error(ErrorCode::NonPositiveParameter, "spectrum", "domain lengths must be > 0");
  if (d.mode_cap < 2) throw Error(ErrorCode::InvalidArgument, "spectrum", "mode_cap must be >= 2");
}

std::vector<SpectralMode> laplace_modes(const Domain& d) {
  validate(d);
  const int dim = static_cast<int>(d.lengths.size());
  const double lmax = *std::max_element(d.lengths.begin(), d.lengths.end());
  // mode_cap modes already lie at or below this value along the longest axis.
  const double rho_max = std::pow((d.mode_cap - 1) * kPi / lmax, 2);
  std::vector<int> cap(dim);
  for (int i = 0; i < dim; ++i)
    cap[i] = static_cast<int>(std::ceil(std::sqrt(rho_max) * d.lengths[i] / kPi)) + 1;

  std::vector<SpectralMode> modes;
  std::vector<int> idx(dim, 0);
  while (true) {
    SpectralMode m;
    m.multi_index = idx;
    m.mean_square = 1.0;
    bool constant = true;
    for (int i = 0; i < dim; ++i) {
      const double w = idx[i] * kPi / d.lengths[i];
      m.rho += w * w;
      m.mean_square *= idx[i] == 0 ? d.lengths[i] : d.lengths[i] / 2;
      if (idx[i] != 0) constant = false;
    }
    m.cube_integral_zero = !constant;
    if (m.rho <= rho_max * (1 + 1e-12)) modes.push_back(std::move(m));
    int i = dim - 1;
    while (i >= 0 && ++idx[i] > cap[i]) idx[i--] = 0;
    if (i < 0) break;
  }
  std::stable_sort(modes.begin(), modes.end(), [](const SpectralMode& x, const SpectralMode& y) {
    if (x.rho != y.rho) return x.rho < y.rho;
    return x.multi_index < y.multi_index;
  });
  if (static_cast<int>(modes.size()) > d.mode_cap) modes.resize(d.mode_cap);
  for (std::size_t k = 0; k < modes.size(); ++k) modes[k].index = static_cast<int>(k) + 1;
  return modes;
}

Mat3 m_matrix(const NondimParams& p, double sigma, double rho) {
  const double pp = p.alpha / 2 * (3 * p.beta * sigma + p.gamma - 1);
  const double qq = (sigma + 1) / p.alpha;
  Mat3 m;
  m << -pp - p.mu1 * rho, -p.alpha * (sigma - 1), 0,
      -(1 + p.gamma - p.beta * sigma) / (2 * p.alpha), -qq - p.mu2 * rho, p.gamma / p.alpha,
      p.delta, 0, -p.delta - p.mu3 * rho;
  return m;
}

CubicCoeffs cubic_coeffs(const NondimParams& p, double sigma, double rho) {
  const double pp = p.alpha / 2 * (3 * p.beta * sigma + p.gamma - 1);
  const double qq = (sigma + 1) / p.alpha;
  const double a = pp + qq;
  const double b = (1 - p.beta) * sigma - 2 * p.beta * sigma * sigma - p.gamma;
  const double s = qq * p.mu1 + pp * p.mu2;
  const double m12 = p.mu1 * p.mu2;
  CubicCoeffs c;
  c.A = p.delta + a + (p.mu1 + p.mu2 + p.mu3) * rho;
  c.B = a * p.delta - b + p.delta * (p.mu1 + p.mu2) * rho + a * p.mu3 * rho + s * rho +
        (m12 + p.mu1 * p.mu3 + p.mu2 * p.mu3) * rho * rho;
  c.C = (p.delta + p.mu3 * rho) * (-b + s * rho + m12 * rho * rho) +
        p.gamma * p.delta * (sigma - 1);
  return c;
}

CubicCoeffs char_poly(const Mat3& m) {
  CubicCoeffs c;
  c.A = -m.trace();
  c.B = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) +
        m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  c.C = -m.determinant();
  return c;
}

std::array<cplx, 3> cubic_roots(const CubicCoeffs& c) {
  Mat3 comp;
  comp << -c.A, -c.B, -c.C, 1, 0, 0, 0, 1, 0;
  balance(comp);
  Eigen::EigenSolver<Mat3> es(comp, false);
  std::array<cplx, 3> r;
  for (int i = 0; i < 3; ++i) r[i] = es.eigenvalues()(i);

  for (auto& z : r) {
    const cplx f = poly(c, z), df = dpoly(c, z);
    if (std::abs(df) == 0) continue;
    const cplx zn = z - f / df;
    if (std::abs(poly(c, zn)) < std::abs(f)) z = zn;
  }

  // A real cubic has at least one real root; pair the other two.
  const double scale = std::max({std::abs(c.A), std::sqrt(std::abs(c.B)), std::cbrt(std::abs(c.C)), 1e-300});
  int ireal = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(r[i].imag()) < std::abs(r[ireal].imag())) ireal = i;
  r[ireal] = {r[ireal].real(), 0.0};
  cplx& z1 = r[(ireal + 1) % 3];
  cplx& z2 = r[(ireal + 2) % 3];
  if (std::abs(z1.imag()) + std::abs(z2.imag()) <= 1e-12 * scale) {
    z1 = {z1.real(), 0.0};
    z2 = {z2.real(), 0.0};
  } else {
    const double re = 0.5 * (z1.real() + z2.real());
    const double im = 0.5 * (std::abs(z1.imag()) + std::abs(z2.imag()));
    z1 = {re, im};
    z2 = {re, -im};
  }
  std::sort(r.begin(), r.end(), [](cplx x, cplx y) {
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  return r;
}

EigenTriple eigen3(const Mat3& m) {
  EigenTriple t;
  const bool upper = m(1, 0) == 0 && m(2, 0) == 0 && m(2, 1) == 0;
  const bool lower = m(0, 1) == 0 && m(0, 2) == 0 && m(1, 2) == 0;
  if (upper || lower) {
    // Exact spectrum; a companion solve would smear repeated diagonal entries.
    for (int i = 0; i < 3; ++i) t.values[i] = m(i, i);
    std::sort(t.values.begin(), t.values.end(),
              [](cplx x, cplx y) { return x.real() > y.real(); });
  } else {
    t.values = cubic_roots(char_poly(m));
  }
  for (int i = 0; i < 3; ++i) {
    bool deg = false;
    t.vectors[i] = null_vector(m, t.values[i], deg);
    t.degenerate[i] = deg;
  }
  return t;
}

Stability hurwitz(const CubicCoeffs& c, double tol) {
  // tol is a band on the real part of the roots. A root e near zero makes
  // C ~ e B; a pair e +- i w next to a root -r makes AB - C ~ -2e (r^2 + w^2).
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double H = c.A * c.B - c.C;
  const double tA = tol;
  const double tC = tol * std::abs(c.B) + tol * tol * std::abs(c.A) + tol * tol * tol;
  const double tH = 2 * tol * (c.A * c.A + std::abs(c.B)) + 8 * eps * (std::abs(c.A * c.B) + std::abs(c.C));
  if (c.A > tA && c.C > tC && H > tH) return Stability::Stable;
  if (c.A < -tA || c.C < -tC || H < -tH) return Stability::Unstable;
  return Stability::Marginal;
}

}  // namespace bzt
