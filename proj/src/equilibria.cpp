#include "bzt/equilibria.hpp"

#include <algorithm>
#include <cmath>

#include "bzt/error.hpp"

namespace bzt {

namespace {

double radical_inverse(unsigned base, unsigned long i) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

}  // namespace

double sigma_root(const NondimParams& p) {
  validate(p);
  const double t = 1.0 - p.gamma - p.beta;
  const double disc = t * t + 4.0 * p.beta * (1.0 + p.gamma);
  const double sq = std::sqrt(disc);
  if (t >= 0) return (t + sq) / (2.0 * p.beta);
  // t + sq cancels; use the conjugate product (t + sq)(sq - t) = 4 beta (1 + gamma).
  return 2.0 * (1.0 + p.gamma) / (sq - t);
}

std::pair<SteadyState, SteadyState> steady_states(const NondimParams& p) {
  const double s = sigma_root(p);
  SteadyState u0;
  SteadyState u1{s, p.gamma * s / (1.0 + s), s, s};
  return {u0, u1};
}

bool steady_state_forms_agree(const NondimParams& p, const SteadyState& s) {
  const double alt = 0.5 * (1.0 + p.gamma - p.beta * s.sigma);
  return std::abs(s.u2 - alt) <= 1e-10 * (1.0 + std::abs(s.u2));
}

double b_parameter(const NondimParams& p, std::optional<double> sigma) {
  const double s = sigma ? *sigma : sigma_root(p);
  return (1.0 - p.beta) * s - 2.0 * p.beta * s * s - p.gamma;
}

RegionBox invariant_region(const NondimParams& p, double margin) {
  if (!(margin > 0)) throw Error(ErrorCode::InvalidArgument, "equilibria", "margin must be > 0");
  const double s = sigma_root(p);
  RegionBox box;
  // sigma <= max(1, 1/beta) already, so U1 sits inside once a1 exceeds both.
  box.a1 = (1.0 + margin) * std::max({1.0, 1.0 / p.beta, s});
  box.a3 = (1.0 + margin) * box.a1;
  box.a2 = (1.0 + margin) * p.gamma * box.a3;
  return box;
}

bool region_box_valid(const NondimParams& p, const RegionBox& box) {
  return box.a1 > std::max(1.0, 1.0 / p.beta) && box.a2 > p.gamma * box.a3 && box.a3 > box.a1;
}

bool inward_flux_check(const NondimParams& p, const RegionBox& box, int samples) {
  if (box.a1 <= 0 || box.a2 <= 0 || box.a3 <= 0)
    throw Error(ErrorCode::DegenerateBox, "equilibria", "box bounds must be positive");
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "equilibria", "samples must be >= 1");
  const double a[3] = {box.a1, box.a2, box.a3};
  for (int axis = 0; axis < 3; ++axis) {
    const int i = (axis + 1) % 3, j = (axis + 2) % 3;
    for (int side = 0; side < 2; ++side) {
      for (int n = 1; n <= samples; ++n) {
        Vec3 u;
        u(axis) = side == 0 ? 0.0 : a[axis];
        u(i) = radical_inverse(2, static_cast<unsigned long>(n)) * a[i];
        u(j) = radical_inverse(3, static_cast<unsigned long>(n)) * a[j];
        const double f = reaction(p, u)(axis);
        if (side == 0 ? !(f > 0) : !(f < 0)) return false;
      }
    }
  }
  return true;
}

}  // namespace bzt
