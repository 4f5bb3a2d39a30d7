#pragma once

#include <functional>
#include <optional>

#include "bzt/model.hpp"
#include "bzt/params.hpp"

namespace bzt {

using Vec3c = Eigen::Vector3cd;
using BilinearForm = std::function<Vec3c(const Vec3c&, const Vec3c&)>;
using TrilinearForm = std::function<Vec3c(const Vec3c&, const Vec3c&, const Vec3c&)>;

struct LyapunovResult {
  double l1 = 0;      // with <q, q> = 1 and <p, q> = 1
  double omega = 0;
  Vec3c q, p;
};

// First Lyapunov coefficient of x' = J x + B(x,x)/2 + C(x,x,x)/6 at a Hopf point,
// B and C symmetric. J must have a simple pair +-i omega and a third nonzero root.
LyapunovResult first_lyapunov(const Mat3& J, const BilinearForm& B,
                              const std::optional<TrilinearForm>& C = std::nullopt);

// The stirred system at delta0; B(u,v) = G(u,v) + G(v,u), no cubic part.
double lyapunov_oracle(const NondimParams& p, double sigma, double delta0);
LyapunovResult lyapunov_oracle_full(const NondimParams& p, double sigma, double delta0);

}  // namespace bzt
