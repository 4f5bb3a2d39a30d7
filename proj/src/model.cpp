#include "bzt/model.hpp"

namespace bzt {

Vec3 reaction(const NondimParams& p, const Vec3& u) {
  const double u1 = u(0), u2 = u(1), u3 = u(2);
  return {p.alpha * (u1 + u2 - u1 * u2 - p.beta * u1 * u1),
          (p.gamma * u3 - u2 - u1 * u2) / p.alpha,
          p.delta * (u1 - u3)};
}

Mat3 reaction_jacobian(const NondimParams& p, const Vec3& u) {
  const double u1 = u(0), u2 = u(1);
  Mat3 j;
  j << p.alpha * (1 - u2 - 2 * p.beta * u1), p.alpha * (1 - u1), 0,
      -u2 / p.alpha, -(1 + u1) / p.alpha, p.gamma / p.alpha,
      p.delta, 0, -p.delta;
  return j;
}

}  // namespace bzt
