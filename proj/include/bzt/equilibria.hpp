#pragma once

#include <optional>
#include <utility>

#include "bzt/model.hpp"
#include "bzt/params.hpp"

namespace bzt {

struct SteadyState {
  double u1 = 0, u2 = 0, u3 = 0;
  double sigma = 0;
  Vec3 vec() const { return {u1, u2, u3}; }
};

struct RegionBox {
  double a1 = 0, a2 = 0, a3 = 0;
  bool contains(const Vec3& u) const {
    return u(0) > 0 && u(0) < a1 && u(1) > 0 && u(1) < a2 && u(2) > 0 && u(2) < a3;
  }
};

double sigma_root(const NondimParams& p);

std::pair<SteadyState, SteadyState> steady_states(const NondimParams& p);

// |u2 - (1 + gamma - beta sigma)/2| small: the two closed forms of u2 agree.
bool steady_state_forms_agree(const NondimParams& p, const SteadyState& s);

// sigma defaults to sigma_root(p).
double b_parameter(const NondimParams& p, std::optional<double> sigma = std::nullopt);

RegionBox invariant_region(const NondimParams& p, double margin = 0.1);
bool region_box_valid(const NondimParams& p, const RegionBox& box);

// Strict sign of the vector field on the six faces of the box.
bool inward_flux_check(const NondimParams& p, const RegionBox& box, int samples);

}  // namespace bzt
