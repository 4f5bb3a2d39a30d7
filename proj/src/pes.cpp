#include "bzt/pes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bzt/error.hpp"

namespace bzt {

const char* to_string(PesVerdict v) {
  switch (v) {
    case PesVerdict::AllStable: return "AllStable";
    case PesVerdict::HopfCrossing: return "HopfCrossing";
    case PesVerdict::SteadyCrossing: return "SteadyCrossing";
  }
  return "AllStable";
}

PesReport pes_check(const NondimParams& p, double sigma, double delta,
                    const std::vector<SpectralMode>& modes) {
  if (modes.empty() || modes.front().rho != 0)
    throw Error(ErrorCode::InvalidArgument, "spectrum", "mode list must start with the constant mode");
  PesReport r;
  NondimParams q = p;
  q.delta = delta;
  r.all_stable_at_delta = true;
  for (const auto& m : modes) {
    ModeStability ms;
    ms.index = m.index;
    ms.rho = m.rho;
    ms.max_real = eigen3(m_matrix(q, sigma, m.rho)).max_real();
    ms.hurwitz = hurwitz(cubic_coeffs(q, sigma, m.rho));
    if (ms.max_real >= 0) r.all_stable_at_delta = false;
    r.at_delta.push_back(ms);
  }

  r.critical = scenario(p, sigma, modes);
  r.b = r.critical.abc.b;
  if (r.critical.scenario == Scenario::NoTransition) {
    r.verdict = PesVerdict::AllStable;
    return r;
  }
  const bool hopf = r.critical.scenario == Scenario::HopfAtDelta0;
  r.verdict = hopf ? PesVerdict::HopfCrossing : PesVerdict::SteadyCrossing;
  r.critical_delta = hopf ? *r.critical.delta0 : r.critical.d1->delta1;
  r.critical_mode = hopf ? 1 : r.critical.d1->k0;

  q.delta = *r.critical_delta;
  r.others_max_real = -std::numeric_limits<double>::infinity();
  for (const auto& m : modes) {
    const EigenTriple t = eigen3(m_matrix(q, sigma, m.rho));
    int first = 0;
    if (m.index == r.critical_mode) {
      if (hopf) {
        // The pair sits on top; the third root is -A.
        r.designated_real = t.values[0].real();
        r.designated_imag = std::abs(t.values[0].imag());
        first = 2;
      } else {
        // Real root through zero: the one of smallest modulus among real roots.
        int iz = 0;
        for (int i = 1; i < 3; ++i)
          if (std::abs(t.values[i]) < std::abs(t.values[iz])) iz = i;
        r.designated_real = t.values[iz].real();
        r.designated_imag = t.values[iz].imag();
        for (int i = 0; i < 3; ++i)
          if (i != iz) r.others_max_real = std::max(r.others_max_real, t.values[i].real());
        continue;
      }
    }
    for (int i = first; i < 3; ++i) r.others_max_real = std::max(r.others_max_real, t.values[i].real());
  }
  r.crossing_confirmed = std::abs(r.designated_real) < 1e-6 && r.others_max_real < -1e-8;
  return r;
}

}  // namespace bzt
