#pragma once

#include <Eigen/Dense>

#include "bzt/params.hpp"

namespace bzt {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Reaction terms of the kinetic system in original (untranslated) variables.
Vec3 reaction(const NondimParams& p, const Vec3& u);

// Jacobian of reaction() at u (no diffusion).
Mat3 reaction_jacobian(const NondimParams& p, const Vec3& u);

// Quadratic part of the system written around U1: w' = M w + G(w, w).
// Not symmetric in its arguments.
template <class V>
V bilinear_g(const NondimParams& p, const V& u, const V& v) {
  V r;
  r(0) = -p.alpha * u(0) * v(1) - p.alpha * p.beta * u(0) * v(0);
  r(1) = -u(0) * v(1) / p.alpha;
  r(2) = 0.0 * u(0);
  return r;
}

}  // namespace bzt
