#include "bzt/lyapunov.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "bzt/error.hpp"
#include "bzt/spectrum.hpp"

namespace bzt {

namespace {

using Mat3c = Eigen::Matrix3cd;

Vec3c solve_checked(const Mat3c& m, const Vec3c& rhs) {
  Eigen::FullPivLU<Mat3c> lu(m);
  double scale = 1;
  for (int i = 0; i < 3; ++i) scale *= m.row(i).norm();
  if (lu.rank() < 3 || std::abs(lu.determinant()) < 1e-13 * scale)
    throw Error(ErrorCode::SingularSolve, "transition", "bordered system is numerically singular");
  return lu.solve(rhs);
}

}  // namespace

LyapunovResult first_lyapunov(const Mat3& J, const BilinearForm& B,
                              const std::optional<TrilinearForm>& C) {
  Eigen::ComplexEigenSolver<Mat3c> right(J.cast<cplx>());
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (right.eigenvalues()(i).imag() > right.eigenvalues()(k).imag()) k = i;
  const cplx lam = right.eigenvalues()(k);
  if (!(lam.imag() > 0))
    throw Error(ErrorCode::SingularSolve, "transition", "no eigenvalue pair on the imaginary axis");
  LyapunovResult r;
  r.omega = lam.imag();
  const cplx I(0, 1);
  const cplx iw = I * r.omega;
  const Mat3c Jc = J.cast<cplx>();

  r.q = right.eigenvectors().col(k);
  r.q /= r.q.norm();
  // Adjoint vector: J^T p = -i omega p, normalized so that <p, q> = p^H q = 1.
  Eigen::ComplexEigenSolver<Mat3c> left(J.transpose().cast<cplx>());
  int kl = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(left.eigenvalues()(i) + iw) < std::abs(left.eigenvalues()(kl) + iw)) kl = i;
  r.p = left.eigenvectors().col(kl);
  r.p /= std::conj(r.p.dot(r.q));

  const Vec3c qb = r.q.conjugate();
  const Vec3c h11 = -solve_checked(Jc, B(r.q, qb));
  const Vec3c h20 = solve_checked(2.0 * iw * Mat3c::Identity() - Jc, B(r.q, r.q));
  cplx s = r.p.dot(B(qb, h20)) + 2.0 * r.p.dot(B(r.q, h11));
  if (C) s += r.p.dot((*C)(r.q, r.q, qb));
  r.l1 = s.real() / (2 * r.omega);
  return r;
}

LyapunovResult lyapunov_oracle_full(const NondimParams& p, double sigma, double delta0) {
  NondimParams q = p;
  q.delta = delta0;
  const Mat3 J = m_matrix(q, sigma, 0.0);
  const BilinearForm B = [&p](const Vec3c& u, const Vec3c& v) -> Vec3c {
    return bilinear_g(p, u, v) + bilinear_g(p, v, u);
  };
  return first_lyapunov(J, B);
}

double lyapunov_oracle(const NondimParams& p, double sigma, double delta0) {
  return lyapunov_oracle_full(p, sigma, delta0).l1;
}

}  // namespace bzt
