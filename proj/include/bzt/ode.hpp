#pragma once

#include <functional>

#include <Eigen/Dense>

namespace bzt {

using VecX = Eigen::VectorXd;
using RhsFn = std::function<void(double, const VecX&, VecX&)>;

struct Dopri5Options {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  double h_init = 1e-3;
  double h_max = 0;  // 0: unlimited
  long max_steps = 50'000'000;
};

// Continuous extension of one accepted step.
class DenseStep {
public:
  double t0 = 0, h = 0;
  VecX r1, r2, r3, r4, r5;
  VecX at(double t) const;
};

struct Dopri5Stats {
  long accepted = 0, rejected = 0;
};

// Called after every accepted step; returning false stops the integration.
using StepObserver = std::function<bool(const DenseStep&, const VecX& y1)>;

// Dormand-Prince 5(4) with FSAL and the standard fourth-order dense output.
Dopri5Stats dopri5(const RhsFn& f, double t0, double t1, VecX& y, const Dopri5Options& opt,
                   const StepObserver& obs);

}  // namespace bzt
