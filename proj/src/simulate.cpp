#include "bzt/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "bzt/error.hpp"
#include "bzt/ode.hpp"

namespace bzt {

const char* to_string(ModelKind m) {
  switch (m) {
    case ModelKind::StirredOde: return "stirred_ode";
    case ModelKind::PdeInterval: return "pde_interval";
    case ModelKind::PdeRectangle: return "pde_rectangle";
  }
  return "stirred_ode";
}

const char* to_string(IcKind k) {
  switch (k) {
    case IcKind::NearU1: return "near_U1";
    case IcKind::Explicit: return "explicit";
    case IcKind::RandomInD: return "random_in_D";
  }
  return "near_U1";
}

const char* to_string(PdeScheme s) { return s == PdeScheme::Imex ? "imex" : "explicit"; }

const char* to_string(CycleStatus s) {
  switch (s) {
    case CycleStatus::Converged: return "Converged";
    case CycleStatus::NotConverged: return "NotConverged";
    case CycleStatus::NoOscillation: return "NoOscillation";
  }
  return "NoOscillation";
}

int Trajectory::nodes() const {
  int n = 1;
  for (int g : grid) n *= g;
  return n;
}

void validate(const SimConfig& c) {
  auto bad = [](const std::string& m) { throw Error(ErrorCode::ConfigError, "simulate", m); };
  if (!(c.t_end > 0)) bad("t_end must be > 0");
  if (!(c.dt_init > 0)) bad("dt_init must be > 0");
  if (!(c.abs_tol > 1e-12 && c.abs_tol < 1e-2)) bad("abs_tol must lie in (1e-12, 1e-2)");
  if (!(c.rel_tol > 1e-12 && c.rel_tol < 1e-2)) bad("rel_tol must lie in (1e-12, 1e-2)");
  if (!(c.output_interval > 0)) bad("output_interval must be > 0");
  if (c.model != ModelKind::StirredOde && c.grid < 16) bad("grid must be >= 16 points per axis");
  if (!(c.blowup > 0)) bad("blowup threshold must be > 0");
  if (!(c.stability_factor > 0)) bad("stability_factor must be > 0");
}

Trajectory integrate_ode(const NondimParams& p, double sigma, const SimConfig& cfg) {
  validate(cfg);
  if (cfg.model != ModelKind::StirredOde)
    throw Error(ErrorCode::ConfigError, "simulate", "integrate_ode needs model stirred_ode");
  const Mat3 M = m_matrix(p, sigma, 0.0);
  Trajectory tr;
  tr.offset = {sigma, p.gamma * sigma / (1 + sigma), sigma};

  VecX y(3);
  switch (cfg.ic.kind) {
    case IcKind::NearU1:
      y = cfg.ic.amplitude * cfg.ic.direction;
      break;
    case IcKind::Explicit:
      if (cfg.ic.values.size() != 3)
        throw Error(ErrorCode::ConfigError, "simulate", "explicit ODE initial condition needs 3 values");
      y << cfg.ic.values[0], cfg.ic.values[1], cfg.ic.values[2];
      break;
    case IcKind::RandomInD: {
      const RegionBox box = invariant_region(p, cfg.ic.margin);
      std::mt19937_64 rng(cfg.ic.seed);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      const double a[3] = {box.a1, box.a2, box.a3};
      for (int i = 0; i < 3; ++i) y(i) = u(rng) * a[i] - tr.offset(i);
      break;
    }
  }

  const RhsFn f = [&](double, const VecX& w, VecX& dw) {
    const Vec3 v = w.head<3>();
    dw = M * v + bilinear_g(p, v, v);
  };

  const double dt_out = cfg.output_interval;
  long next = 1;
  tr.t.push_back(0.0);
  tr.x.push_back({y(0), y(1), y(2)});
  Dopri5Options opt;
  opt.abs_tol = cfg.abs_tol;
  opt.rel_tol = cfg.rel_tol;
  opt.h_init = cfg.dt_init;
  const StepObserver obs = [&](const DenseStep& ds, const VecX& y1) {
    const double t1 = ds.t0 + ds.h;
    if (!(y1.cwiseAbs().maxCoeff() <= cfg.blowup))
      throw Error(ErrorCode::BlowUp, "simulate", "state exceeded blow-up threshold at t=" + std::to_string(t1));
    if (cfg.monitor_box) {
      const Vec3 u = y1.head<3>() + tr.offset;
      const RegionBox& b = *cfg.monitor_box;
      if (u(0) < 0 || u(1) < 0 || u(2) < 0 || u(0) > b.a1 || u(1) > b.a2 || u(2) > b.a3) {
        if (tr.region_exits++ < 10) tr.events.push_back({t1, "region_exit", ""});
      }
    }
    while (true) {
      const double to = std::min(next * dt_out, cfg.t_end);
      if (to > t1 + 1e-12 * std::max(1.0, t1) || tr.t.back() >= cfg.t_end) break;
      const VecX v = std::abs(to - t1) <= 1e-12 * std::max(1.0, t1) ? y1 : ds.at(to);
      tr.t.push_back(to);
      tr.x.push_back({v(0), v(1), v(2)});
      ++next;
    }
    return true;
  };
  const Dopri5Stats st = dopri5(f, 0.0, cfg.t_end, y, opt, obs);
  tr.accepted_steps = st.accepted;
  tr.rejected_steps = st.rejected;
  if (st.rejected > 0) tr.events.push_back({cfg.t_end, "step_rejections", std::to_string(st.rejected)});
  return tr;
}

CycleDiagnostics detect_cycle(const std::vector<double>& t, const std::vector<std::vector<double>>& x,
                              double transient_fraction, int component) {
  if (t.size() != x.size() || t.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "simulate", "trajectory too short for cycle detection");
  if (!(transient_fraction >= 0 && transient_fraction < 1))
    throw Error(ErrorCode::InvalidArgument, "simulate", "transient_fraction must lie in [0, 1)");
  CycleDiagnostics d;
  const double t0 = t.front() + transient_fraction * (t.back() - t.front());
  d.transient_time = t0 - t.front();
  const std::size_t first = static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), t0) - t.begin());
  const std::size_t ncomp = x.front().size();

  std::vector<double> cross;
  std::vector<std::size_t> cross_idx;
  for (std::size_t k = first + 1; k < t.size(); ++k) {
    const double a = x[k - 1][component], b = x[k][component];
    if (a < 0 && b >= 0) {
      cross.push_back(t[k - 1] + (0 - a) * (t[k] - t[k - 1]) / (b - a));
      cross_idx.push_back(k);
    }
  }
  d.crossings = static_cast<int>(cross.size());

  auto half_p2p = [&](std::size_t lo, std::size_t hi, std::size_t c) {
    double mn = x[lo][c], mx = x[lo][c];
    for (std::size_t k = lo; k < hi; ++k) {
      mn = std::min(mn, x[k][c]);
      mx = std::max(mx, x[k][c]);
    }
    return 0.5 * (mx - mn);
  };

  d.amplitude.assign(ncomp, 0.0);
  if (cross.size() < 3) {
    d.status = CycleStatus::NoOscillation;
    if (first < t.size())
      for (std::size_t c = 0; c < ncomp; ++c) d.amplitude[c] = half_p2p(first, t.size(), c);
    return d;
  }

  std::vector<double> iv;
  for (std::size_t i = 1; i < cross.size(); ++i) iv.push_back(cross[i] - cross[i - 1]);
  const std::size_t nlast = std::min<std::size_t>(5, iv.size());
  double mean = 0;
  for (std::size_t i = iv.size() - nlast; i < iv.size(); ++i) mean += iv[i];
  mean /= static_cast<double>(nlast);
  d.period = mean;

  bool ok = iv.size() >= 5;
  for (std::size_t i = iv.size() - nlast; i < iv.size(); ++i)
    if (std::abs(iv[i] - mean) > 0.01 * mean) ok = false;

  const std::size_t m = cross_idx.size();
  const std::size_t lo = cross_idx[m - 1 - nlast], hi = cross_idx[m - 1];
  for (std::size_t c = 0; c < ncomp; ++c) d.amplitude[c] = half_p2p(lo, hi, c);

  // A decaying or growing spiral has a steady period; require steady amplitude too.
  if (ok) {
    std::vector<double> amps;
    for (std::size_t i = m - 1 - nlast; i + 1 < m; ++i)
      amps.push_back(half_p2p(cross_idx[i], cross_idx[i + 1], static_cast<std::size_t>(component)));
    const auto [mn, mx] = std::minmax_element(amps.begin(), amps.end());
    if (*mx - *mn > 0.01 * *mx) ok = false;
  }
  d.converged = ok;
  d.status = ok ? CycleStatus::Converged : CycleStatus::NotConverged;
  return d;
}

CycleDiagnostics detect_cycle(const Trajectory& traj, double transient_fraction) {
  if (traj.grid.empty()) return detect_cycle(traj.t, traj.x, transient_fraction, 0);
  // Node average per species.
  const int nn = traj.nodes();
  std::vector<std::vector<double>> mean(traj.x.size(), std::vector<double>(3, 0.0));
  for (std::size_t k = 0; k < traj.x.size(); ++k)
    for (int s = 0; s < 3; ++s) {
      double acc = 0;
      for (int n = 0; n < nn; ++n) acc += traj.x[k][s * nn + n];
      mean[k][s] = acc / nn;
    }
  return detect_cycle(traj.t, mean, transient_fraction, 0);
}

AmplitudeReport amplitude_scaling_check(const NondimParams& p, double sigma, const HopfChain& chain,
                                        const std::vector<double>& deltas, const AmplitudeOptions& opt) {
  AmplitudeReport rep;
  rep.normal_form_ratio = -8.0 / chain.b1;
  for (double delta : deltas) {
    if (!(delta > 0)) throw Error(ErrorCode::InvalidArgument, "simulate", "delta must be > 0");
    NondimParams q = p;
    q.delta = delta;
    const EigenTriple ev = eigen3(m_matrix(q, sigma, 0.0));
    AmplitudePoint pt;
    pt.delta = delta;
    pt.re_beta = ev.values[0].real();
    pt.im_beta = std::abs(ev.values[0].imag());
    pt.predicted_period = pt.im_beta > 0 ? 2 * std::numbers::pi / pt.im_beta : 0;

    const double T = pt.predicted_period > 0 ? pt.predicted_period : 1.0;
    SimConfig cfg;
    cfg.model = ModelKind::StirredOde;
    cfg.abs_tol = opt.tol;
    cfg.rel_tol = opt.tol;
    cfg.output_interval = T / 400;
    cfg.ic.kind = IcKind::Explicit;
    double start = opt.perturbation;
    if (start <= 0) {
      const double pred2 = rep.normal_form_ratio * pt.re_beta;
      start = pred2 > 0 ? 0.8 * std::sqrt(pred2) : 1e-2;
    }
    const Vec3 w0 = start * chain.xi;
    cfg.ic.values = {w0(0), w0(1), w0(2)};
    const double rate = std::max(std::abs(pt.re_beta), 1e-6);
    cfg.t_end = opt.t_end > 0 ? opt.t_end : std::max(30.0 / rate, 60 * T);
    const Trajectory tr = integrate_ode(q, sigma, cfg);

    std::vector<std::vector<double>> xy(tr.x.size());
    for (std::size_t k = 0; k < tr.x.size(); ++k) {
      const Vec3 w(tr.x[k][0], tr.x[k][1], tr.x[k][2]);
      xy[k] = {chain.dual_x.dot(w), chain.dual_y.dot(w)};
    }
    const CycleDiagnostics cd = detect_cycle(tr.t, xy, opt.transient_fraction, 0);
    pt.status = cd.status;
    pt.period = cd.period;
    pt.amplitude = cd.amplitude[0];
    if (delta >= chain.delta0 && cd.status != CycleStatus::Converged) rep.empty_branch_side = true;
    if (cd.status == CycleStatus::Converged && pt.re_beta != 0)
      pt.ratio = pt.amplitude * pt.amplitude / std::abs(pt.re_beta);
    rep.points.push_back(pt);
  }
  double mn = 0, mx = 0, sum = 0;
  int n = 0;
  for (const auto& pt : rep.points) {
    if (pt.status != CycleStatus::Converged) continue;
    if (n == 0) mn = mx = pt.ratio;
    mn = std::min(mn, pt.ratio);
    mx = std::max(mx, pt.ratio);
    sum += pt.ratio;
    ++n;
    if (pt.predicted_period > 0)
      rep.max_period_error = std::max(rep.max_period_error,
                                      std::abs(pt.period - pt.predicted_period) / pt.predicted_period);
  }
  rep.ratio_spread = n > 0 ? (mx - mn) / (sum / n) : 0;
  return rep;
}

}  // namespace bzt
