#include "bzt/critical.hpp"

#include <algorithm>
#include <cmath>

#include "bzt/error.hpp"

namespace bzt {

AbcNumbers abc_numbers(const NondimParams& p, double sigma) {
  AbcNumbers r;
  r.p = p.alpha / 2 * (3 * p.beta * sigma + p.gamma - 1);
  r.q = (sigma + 1) / p.alpha;
  r.a = r.p + r.q;
  r.b = (1 - p.beta) * sigma - 2 * p.beta * sigma * sigma - p.gamma;
  r.c = sigma * (2 * p.beta * sigma + p.beta + p.gamma - 1);
  return r;
}

std::optional<double> delta0_from_abc(double a, double b, double c) {
  if (!(b > 0)) return std::nullopt;
  const double t = c + b - a * a;
  const double sq = std::sqrt(t * t + 4 * a * a * b);
  if (t >= 0) return (t + sq) / (2 * a);
  return 2 * a * b / (sq - t);
}

std::optional<double> delta0(const NondimParams& p, double sigma) {
  const AbcNumbers n = abc_numbers(p, sigma);
  return delta0_from_abc(n.a, n.b, n.c);
}

double delta_crit_mode(const NondimParams& p, double sigma, double rho) {
  const AbcNumbers n = abc_numbers(p, sigma);
  const double s = n.q * p.mu1 + n.p * p.mu2;
  const double w = s * rho + p.mu1 * p.mu2 * rho * rho;
  // C_k(delta) = (delta + mu3 rho)(w - b) + delta gamma (sigma - 1) is linear in delta.
  return p.mu3 * rho * (n.b - w) / (n.c + w);
}

std::optional<Delta1Result> delta1(const NondimParams& p, double sigma,
                                   const std::vector<SpectralMode>& modes) {
  if (!(abc_numbers(p, sigma).b > 0)) return std::nullopt;
  std::vector<double> rhos;
  Delta1Result r;
  bool any = false;
  for (const auto& m : modes) {
    if (m.rho <= 0) continue;
    rhos.push_back(m.rho);
    const double d = delta_crit_mode(p, sigma, m.rho);
    if (!any || d > r.delta1) {
      r.delta1 = d;
      r.k0 = m.index;
      r.rho_k0 = m.rho;
      any = true;
    }
  }
  if (!any) return std::nullopt;
  if (r.k0 == modes.back().index)
    throw Error(ErrorCode::ModeCapTooSmall, "critical",
                "delta1 maximizer is the last enumerated mode (k=" + std::to_string(r.k0) +
                    "); raise mode_cap");

  // Continuous relaxation over (0, rho_last]: log scan seeded with the discrete
  // points, then golden-section refinement around the best sample.
  const double hi = rhos.back();
  const double lo = std::min(rhos.front(), hi) * 1e-3;
  std::vector<double> xs = rhos;
  const int nscan = 400;
  for (int i = 0; i <= nscan; ++i) xs.push_back(lo * std::pow(hi / lo, double(i) / nscan));
  std::sort(xs.begin(), xs.end());
  std::size_t best = 0;
  std::vector<double> fs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    fs[i] = delta_crit_mode(p, sigma, xs[i]);
    if (fs[i] > fs[best]) best = i;
  }
  double x0 = xs[best > 0 ? best - 1 : 0], x3 = xs[std::min(best + 1, xs.size() - 1)];
  const double g = (std::sqrt(5.0) - 1) / 2;
  double x1 = x3 - g * (x3 - x0), x2 = x0 + g * (x3 - x0);
  double f1 = delta_crit_mode(p, sigma, x1), f2 = delta_crit_mode(p, sigma, x2);
  for (int it = 0; it < 200 && (x3 - x0) > 1e-14 * x3; ++it) {
    if (f1 > f2) {
      x3 = x2; x2 = x1; f2 = f1;
      x1 = x3 - g * (x3 - x0);
      f1 = delta_crit_mode(p, sigma, x1);
    } else {
      x0 = x1; x1 = x2; f1 = f2;
      x2 = x0 + g * (x3 - x0);
      f2 = delta_crit_mode(p, sigma, x2);
    }
  }
  r.continuous_max = fs[best];
  r.continuous_rho = xs[best];
  const double xm = 0.5 * (x0 + x3), fm = delta_crit_mode(p, sigma, xm);
  if (fm > r.continuous_max) {
    r.continuous_max = fm;
    r.continuous_rho = xm;
  }
  return r;
}

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::HopfAtDelta0: return "HopfAtDelta0";
    case Scenario::SteadyAtDelta1: return "SteadyAtDelta1";
    case Scenario::NoTransition: return "NoTransition";
  }
  return "NoTransition";
}

CriticalNumbers scenario(const NondimParams& p, double sigma, const std::vector<SpectralMode>& modes) {
  CriticalNumbers cn;
  cn.abc = abc_numbers(p, sigma);
  if (!(cn.abc.b > 0)) return cn;
  cn.delta0 = delta0(p, sigma);
  cn.d1 = delta1(p, sigma, modes);
  const double d0 = *cn.delta0;
  if (!cn.d1 || cn.d1->delta1 < d0) {
    cn.scenario = Scenario::HopfAtDelta0;
  } else {
    cn.scenario = Scenario::SteadyAtDelta1;
  }
  if (cn.d1 && std::abs(d0 - cn.d1->delta1) < 1e-6 * std::max(d0, std::abs(cn.d1->delta1)))
    cn.degenerate = true;
  return cn;
}

}  // namespace bzt
