#include "bzt/ode.hpp"

#include <algorithm>
#include <cmath>

#include "bzt/error.hpp"

namespace bzt {

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

}  // namespace

VecX DenseStep::at(double t) const {
  const double th = (t - t0) / h, th1 = 1 - th;
  return r1 + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5)));
}

Dopri5Stats dopri5(const RhsFn& f, double t0, double t1, VecX& y, const Dopri5Options& opt,
                   const StepObserver& obs) {
  const Eigen::Index n = y.size();
  VecX k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), yt(n), y1(n), err(n);
  Dopri5Stats st;
  double t = t0, h = std::min(opt.h_init, t1 - t0);
  const double hmax = opt.h_max > 0 ? opt.h_max : (t1 - t0);
  double err_old = 1e-4;
  bool reject_prev = false;
  f(t, y, k1);
  DenseStep ds;
  while (t < t1) {
    if (st.accepted + st.rejected >= opt.max_steps)
      throw Error(ErrorCode::SingularSolve, "simulate", "step budget exhausted");
    bool last = false;
    if (t + h >= t1 || t + 1.01 * h >= t1) {
      h = t1 - t;
      last = true;
    }
    yt = y + h * a21 * k1;
    f(t + c2 * h, yt, k2);
    yt = y + h * (a31 * k1 + a32 * k2);
    f(t + c3 * h, yt, k3);
    yt = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    f(t + c4 * h, yt, k4);
    yt = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    f(t + c5 * h, yt, k5);
    yt = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    f(t + h, yt, k6);
    y1 = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    f(t + h, y1, k7);
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double e = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double sc = opt.abs_tol + opt.rel_tol * std::max(std::abs(y(i)), std::abs(y1(i)));
      e += (err(i) / sc) * (err(i) / sc);
    }
    e = std::sqrt(e / static_cast<double>(n));
    if (!std::isfinite(e)) e = 1e10;

    if (e <= 1.0) {
      ds.t0 = t;
      ds.h = h;
      ds.r1 = y;
      ds.r2 = y1 - y;
      ds.r3 = h * k1 - ds.r2;
      ds.r4 = ds.r2 - h * k7 - ds.r3;
      ds.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
      ++st.accepted;
      t = last ? t1 : t + h;
      y = y1;
      k1 = k7;
      if (obs && !obs(ds, y)) return st;
      // PI controller (Hairer's beta = 0.04).
      double fac = std::pow(e, 0.17) / std::pow(err_old, 0.04) / 0.9;
      fac = std::clamp(fac, 0.1, 5.0);
      if (reject_prev) fac = std::max(fac, 1.0);
      h = std::min(h / fac, hmax);
      err_old = std::max(e, 1e-4);
      reject_prev = false;
    } else {
      ++st.rejected;
      h /= std::min(5.0, std::pow(e, 0.2) / 0.9);
      reject_prev = true;
      if (h < 1e-14 * std::max(1.0, std::abs(t)))
        throw Error(ErrorCode::SingularSolve, "simulate", "step size underflow at t=" + std::to_string(t));
    }
  }
  return st;
}

}  // namespace bzt
