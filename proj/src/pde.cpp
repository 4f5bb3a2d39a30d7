#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "bzt/error.hpp"
#include "bzt/simulate.hpp"

namespace bzt {

namespace {

constexpr double kPi = std::numbers::pi;

// Pareschi-Russo IMEX-SSP3(3,3,2): explicit SSPRK3 paired with an L-stable SDIRK.
const double kG = 1.0 - 1.0 / std::numbers::sqrt2;
const double kAe[3][3] = {{0, 0, 0}, {1, 0, 0}, {0.25, 0.25, 0}};
const double kAi[3][3] = {{kG, 0, 0}, {1 - 2 * kG, kG, 0}, {0.5 - kG, 0, kG}};
const double kB[3] = {1.0 / 6, 1.0 / 6, 2.0 / 3};

struct Axis {
  int n = 0;
  double h = 0, length = 0;
  Eigen::MatrixXd S, Sinv;  // cosine eigenbasis of the Neumann second difference
  Eigen::VectorXd lambda;
};

Axis make_axis(int n, double length, bool modal) {
  Axis a;
  a.n = n;
  a.length = length;
  a.h = length / (n - 1);
  a.lambda.resize(n);
  for (int m = 0; m < n; ++m) {
    const double s = std::sin(m * kPi / (2.0 * (n - 1)));
    a.lambda(m) = -4.0 / (a.h * a.h) * s * s;
  }
  if (modal) {
    a.S.resize(n, n);
    for (int i = 0; i < n; ++i)
      for (int m = 0; m < n; ++m) a.S(i, m) = std::cos(m * kPi * i / (n - 1));
    a.Sinv = a.S.partialPivLu().inverse();
  }
  return a;
}

class Grid {
public:
  Grid(const Domain& d, int n) {
    const bool modal = d.lengths.size() > 1;
    for (double l : d.lengths) axes.push_back(make_axis(n, l, modal));
    nodes = 1;
    for (const auto& a : axes) nodes *= a.n;
  }

  std::vector<Axis> axes;
  int nodes = 0;

  // Coordinate of node index along axis k.
  double coord(int node, int k) const {
    if (axes.size() == 1) return node * axes[0].h;
    const int ny = axes[1].n;
    return k == 0 ? (node / ny) * axes[0].h : (node % ny) * axes[1].h;
  }

  void laplacian(const double* u, double* out) const {
    if (axes.size() == 1) {
      const int n = axes[0].n;
      const double w = 1.0 / (axes[0].h * axes[0].h);
      out[0] = 2 * (u[1] - u[0]) * w;
      for (int i = 1; i < n - 1; ++i) out[i] = (u[i - 1] - 2 * u[i] + u[i + 1]) * w;
      out[n - 1] = 2 * (u[n - 2] - u[n - 1]) * w;
      return;
    }
    const int nx = axes[0].n, ny = axes[1].n;
    const double wx = 1.0 / (axes[0].h * axes[0].h), wy = 1.0 / (axes[1].h * axes[1].h);
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j) {
        const int im = i == 0 ? 1 : i - 1, ip = i == nx - 1 ? nx - 2 : i + 1;
        const int jm = j == 0 ? 1 : j - 1, jp = j == ny - 1 ? ny - 2 : j + 1;
        const double c = u[i * ny + j];
        out[i * ny + j] = (u[im * ny + j] - 2 * c + u[ip * ny + j]) * wx +
                          (u[i * ny + jm] - 2 * c + u[i * ny + jp]) * wy;
      }
  }

  // Solve (I - c Delta_h) u = r in place.
  void implicit_solve(double c, double* r) const {
    if (axes.size() == 1) {
      const int n = axes[0].n;
      const double k = c / (axes[0].h * axes[0].h);
      // Tridiagonal with doubled off-diagonals in the mirror rows.
      std::vector<double> sub(n, -k), dia(n, 1 + 2 * k), sup(n, -k);
      sup[0] = -2 * k;
      sub[n - 1] = -2 * k;
      for (int i = 1; i < n; ++i) {
        const double m = sub[i] / dia[i - 1];
        dia[i] -= m * sup[i - 1];
        r[i] -= m * r[i - 1];
      }
      r[n - 1] /= dia[n - 1];
      for (int i = n - 2; i >= 0; --i) r[i] = (r[i] - sup[i] * r[i + 1]) / dia[i];
      return;
    }
    const Axis& ax = axes[0];
    const Axis& ay = axes[1];
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> U(r, ax.n, ay.n);
    Eigen::MatrixXd hat = ax.Sinv * U * ay.Sinv.transpose();
    for (int m = 0; m < ax.n; ++m)
      for (int q = 0; q < ay.n; ++q) hat(m, q) /= 1 - c * (ax.lambda(m) + ay.lambda(q));
    U = ax.S * hat * ay.S.transpose();
  }
};

int expected_dims(ModelKind m) { return m == ModelKind::PdeInterval ? 1 : 2; }

// Closed form; only feeds the step-size limit, so Cardano's accuracy is plenty
// and it is far cheaper than an eigen solve at every node and step.
double spectral_radius(const Mat3& j) {
  const CubicCoeffs c = char_poly(j);
  const double s = c.A / 3;
  const double p = c.B - c.A * s;
  const double q = 2 * s * s * s - c.B * s + c.C;
  const double disc = q * q / 4 + p * p * p / 27;
  if (disc > 0) {
    const double r = std::sqrt(disc);
    const double u = std::cbrt(-q / 2 + r), v = std::cbrt(-q / 2 - r);
    const double re = -(u + v) / 2 - s, im = std::sqrt(3.0) / 2 * std::abs(u - v);
    return std::max(std::abs(u + v - s), std::hypot(re, im));
  }
  if (p == 0) return std::abs(std::cbrt(-q) - s);
  const double m = 2 * std::sqrt(-p / 3);
  const double th = std::acos(std::clamp(3 * q / (p * m), -1.0, 1.0)) / 3;
  double out = 0;
  for (int k = 0; k < 3; ++k)
    out = std::max(out, std::abs(m * std::cos(th - 2 * std::numbers::pi * k / 3) - s));
  return out;
}

}  // namespace

std::vector<double> discrete_laplacian_eigenvalues(int n, double length, int count) {
  const Axis a = make_axis(n, length, false);
  std::vector<double> out;
  for (int m = 0; m < std::min(count, n); ++m) out.push_back(-a.lambda(m));
  return out;
}

std::vector<double> laplacian_convergence_orders(int n, double length, int count) {
  const auto coarse = discrete_laplacian_eigenvalues(n, length, count);
  const auto fine = discrete_laplacian_eigenvalues(2 * n - 1, length, count);
  std::vector<double> orders;
  for (int m = 1; m < count; ++m) {
    const double rho = std::pow(m * kPi / length, 2);
    orders.push_back(std::log2(std::abs(coarse[m] - rho) / std::abs(fine[m] - rho)));
  }
  return orders;
}

Trajectory integrate_pde(const NondimParams& p, double sigma, const Domain& d, const SimConfig& cfg) {
  validate(cfg);
  validate(d);
  if (cfg.model == ModelKind::StirredOde)
    throw Error(ErrorCode::ConfigError, "simulate", "integrate_pde needs a pde model");
  if (d.kind == DomainKind::Box)
    throw Error(ErrorCode::NotSupported, "simulate", "three-dimensional PDE runs are not supported");
  if (static_cast<int>(d.lengths.size()) != expected_dims(cfg.model))
    throw Error(ErrorCode::ConfigError, "simulate",
                std::string("model ") + to_string(cfg.model) + " does not match domain " + to_string(d.kind));

  const int N = cfg.grid;
  auto check_resolution = [&](const std::vector<int>& mode) {
    for (int n : mode)
      if (n > 0 && 2.0 * (N - 1) / n < 8.0)
        throw Error(ErrorCode::GridTooCoarse, "simulate",
                    "mode with wave number " + std::to_string(n) + " has fewer than 8 points per wavelength");
  };
  if (cfg.resolve_mode) check_resolution(*cfg.resolve_mode);
  if (cfg.ic.kind == IcKind::NearU1) check_resolution(cfg.ic.mode);

  const Grid g(d, N);
  Trajectory tr;
  tr.offset = {sigma, p.gamma * sigma / (1 + sigma), sigma};
  for (const auto& a : g.axes) {
    tr.grid.push_back(a.n);
    tr.lengths.push_back(a.length);
  }

  // Startup check of the discrete spectrum against rho_k = (k pi / L)^2.
  for (const auto& a : g.axes) {
    for (int m = 1; m < std::min(6, a.n); ++m) {
      const double rho = std::pow(m * kPi / a.length, 2);
      const double bound = a.h * a.h * rho * rho / 12 * 1.01 + 1e-12 * rho;
      if (std::abs(-a.lambda(m) - rho) > bound)
        throw Error(ErrorCode::SingularSolve, "simulate", "discrete Laplacian spectrum check failed");
    }
  }
  tr.events.push_back({0.0, "laplacian_check", "ok"});

  const int nn = g.nodes;
  std::vector<double> w(3 * nn);
  switch (cfg.ic.kind) {
    case IcKind::NearU1:
      for (int k = 0; k < nn; ++k) {
        double shape = 1;
        for (std::size_t ax = 0; ax < cfg.ic.mode.size() && ax < g.axes.size(); ++ax)
          shape *= std::cos(cfg.ic.mode[ax] * kPi * g.coord(k, static_cast<int>(ax)) / g.axes[ax].length);
        for (int s = 0; s < 3; ++s) w[s * nn + k] = cfg.ic.amplitude * cfg.ic.direction(s) * shape;
      }
      break;
    case IcKind::Explicit:
      if (cfg.ic.values.size() == 3) {
        for (int s = 0; s < 3; ++s) std::fill(w.begin() + s * nn, w.begin() + (s + 1) * nn, cfg.ic.values[s]);
      } else if (static_cast<int>(cfg.ic.values.size()) == 3 * nn) {
        w = cfg.ic.values;
      } else {
        throw Error(ErrorCode::ConfigError, "simulate", "explicit PDE initial condition needs 3 or 3*nodes values");
      }
      break;
    case IcKind::RandomInD: {
      const RegionBox box = invariant_region(p, cfg.ic.margin);
      std::mt19937_64 rng(cfg.ic.seed);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      const double a[3] = {box.a1, box.a2, box.a3};
      for (int k = 0; k < nn; ++k)
        for (int s = 0; s < 3; ++s) w[s * nn + k] = u(rng) * a[s] - tr.offset(s);
      break;
    }
  }

  const Mat3 M = m_matrix(p, sigma, 0.0);
  const double mu[3] = {p.mu1, p.mu2, p.mu3};
  const bool imex = cfg.scheme == PdeScheme::Imex;
  double dx_min = g.axes[0].h;
  for (const auto& a : g.axes) dx_min = std::min(dx_min, a.h);
  const double mu_max = std::max({p.mu1, p.mu2, p.mu3});
  const double dt_cfl = dx_min * dx_min / (2 * mu_max * static_cast<double>(g.axes.size()));

  auto reaction = [&](const std::vector<double>& u, std::vector<double>& f) {
    for (int k = 0; k < nn; ++k) {
      const Vec3 v(u[k], u[nn + k], u[2 * nn + k]);
      const Vec3 r = M * v + bilinear_g(p, v, v);
      f[k] = r(0);
      f[nn + k] = r(1);
      f[2 * nn + k] = r(2);
    }
  };
  auto diffusion = [&](const std::vector<double>& u, std::vector<double>& f) {
    for (int s = 0; s < 3; ++s) {
      g.laplacian(u.data() + s * nn, f.data() + s * nn);
      for (int k = 0; k < nn; ++k) f[s * nn + k] *= mu[s];
    }
  };
  auto reaction_dt = [&](const std::vector<double>& u) {
    double rmax = 0;
    for (int k = 0; k < nn; ++k) {
      const double w1 = u[k], w2 = u[nn + k];
      Mat3 J = M;
      J(0, 0) += -p.alpha * w2 - 2 * p.alpha * p.beta * w1;
      J(0, 1) += -p.alpha * w1;
      J(1, 0) += -w2 / p.alpha;
      J(1, 1) += -w1 / p.alpha;
      rmax = std::max(rmax, spectral_radius(J));
    }
    return rmax > 0 ? cfg.stability_factor / rmax : cfg.dt_init;
  };

  auto record = [&](double t) {
    tr.t.push_back(t);
    tr.x.push_back(w);
  };
  auto check_state = [&](double t) {
    for (double v : w)
      if (!(std::abs(v) <= cfg.blowup))
        throw Error(ErrorCode::BlowUp, "simulate", "field exceeded blow-up threshold at t=" + std::to_string(t));
    if (cfg.monitor_box) {
      const RegionBox& b = *cfg.monitor_box;
      const double a[3] = {b.a1, b.a2, b.a3};
      bool out = false;
      for (int s = 0; s < 3 && !out; ++s)
        for (int k = 0; k < nn; ++k) {
          const double u = w[s * nn + k] + tr.offset(s);
          if (u < 0 || u > a[s]) { out = true; break; }
        }
      if (out && tr.region_exits++ < 10) tr.events.push_back({t, "region_exit", ""});
    }
  };

  std::vector<std::vector<double>> fe(3, std::vector<double>(3 * nn)), fi(3, std::vector<double>(3 * nn));
  std::vector<double> stage(3 * nn), acc(3 * nn);
  double t = 0;
  long next = 1;
  record(0.0);
  while (t < cfg.t_end * (1 - 1e-14)) {
    const double t_out = std::min(next * cfg.output_interval, cfg.t_end);
    double dt = std::min({cfg.dt_init, t_out - t, reaction_dt(w)});
    if (!imex) dt = std::min(dt, dt_cfl);
    if (imex) {
      for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 3 * nn; ++k) {
          double s = w[k];
          for (int j = 0; j < i; ++j) s += dt * (kAe[i][j] * fe[j][k] + kAi[i][j] * fi[j][k]);
          stage[k] = s;
        }
        for (int sp = 0; sp < 3; ++sp) g.implicit_solve(dt * kAi[i][i] * mu[sp], stage.data() + sp * nn);
        reaction(stage, fe[i]);
        diffusion(stage, fi[i]);
      }
      for (int k = 0; k < 3 * nn; ++k)
        w[k] += dt * (kB[0] * (fe[0][k] + fi[0][k]) + kB[1] * (fe[1][k] + fi[1][k]) +
                      kB[2] * (fe[2][k] + fi[2][k]));
    } else {
      // SSPRK3 on the full right-hand side.
      for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 3 * nn; ++k) {
          double s = w[k];
          for (int j = 0; j < i; ++j) s += dt * kAe[i][j] * fe[j][k];
          stage[k] = s;
        }
        reaction(stage, fe[i]);
        diffusion(stage, acc);
        for (int k = 0; k < 3 * nn; ++k) fe[i][k] += acc[k];
      }
      for (int k = 0; k < 3 * nn; ++k) w[k] += dt * (kB[0] * fe[0][k] + kB[1] * fe[1][k] + kB[2] * fe[2][k]);
    }
    ++tr.accepted_steps;
    t += dt;
    if (std::abs(t - t_out) <= 1e-12 * std::max(1.0, t_out)) {
      t = t_out;
      check_state(t);
      record(t);
      ++next;
    } else {
      check_state(t);
    }
  }
  return tr;
}

}  // namespace bzt
