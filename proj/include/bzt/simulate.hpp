#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bzt/equilibria.hpp"
#include "bzt/model.hpp"
#include "bzt/params.hpp"
#include "bzt/spectrum.hpp"
#include "bzt/transition.hpp"

namespace bzt {

enum class ModelKind { StirredOde, PdeInterval, PdeRectangle };
enum class IcKind { NearU1, Explicit, RandomInD };
enum class PdeScheme { Imex, Explicit };

const char* to_string(ModelKind m);
const char* to_string(IcKind k);
const char* to_string(PdeScheme s);

struct InitialCondition {
  IcKind kind = IcKind::NearU1;
  double amplitude = 1e-3;
  Vec3 direction{1, 0, 0};
  std::vector<int> mode;        // cosine multi-index, empty = constant
  std::vector<double> values;   // explicit: 3 numbers, or 3 fields laid out species-major
  std::uint64_t seed = 1;
  double margin = 0.1;          // box margin for random_in_D
};

struct SimConfig {
  ModelKind model = ModelKind::StirredOde;
  int grid = 64;              // points per axis (PDE)
  double t_end = 100;
  double dt_init = 1e-3;      // ODE first step; PDE step ceiling
  double abs_tol = 1e-9, rel_tol = 1e-9;
  double output_interval = 0.01;
  InitialCondition ic;
  PdeScheme scheme = PdeScheme::Imex;
  double blowup = 1e6;
  double stability_factor = 1.0;  // PDE reaction dt = factor / spectral radius
  std::optional<RegionBox> monitor_box;     // log exits (original variables)
  std::optional<std::vector<int>> resolve_mode;  // GridTooCoarse guard
};

void validate(const SimConfig& c);

struct SimEvent {
  double t = 0;
  std::string kind;
  std::string detail;
};

struct Trajectory {
  std::vector<double> t;
  std::vector<std::vector<double>> x;  // ODE: 3 values; PDE: species-major fields
  std::vector<int> grid;               // points per axis, empty for ODE
  std::vector<double> lengths;
  Vec3 offset{0, 0, 0};                // U1; original = translated + offset
  std::vector<SimEvent> events;
  long accepted_steps = 0, rejected_steps = 0;
  long region_exits = 0;
  int nodes() const;
};

Trajectory integrate_ode(const NondimParams& p, double sigma, const SimConfig& cfg);
Trajectory integrate_pde(const NondimParams& p, double sigma, const Domain& d, const SimConfig& cfg);

// Eigenvalues of the vertex-centred Neumann second difference on [0, L], N points.
std::vector<double> discrete_laplacian_eigenvalues(int n, double length, int count);

// Observed order of |rho_h - rho| over a grid halving, for the first `count` modes.
std::vector<double> laplacian_convergence_orders(int n, double length, int count);

enum class CycleStatus { Converged, NotConverged, NoOscillation };
const char* to_string(CycleStatus s);

struct CycleDiagnostics {
  CycleStatus status = CycleStatus::NoOscillation;
  bool converged = false;
  double period = 0;
  std::vector<double> amplitude;  // half peak-to-peak per component, last five periods
  double transient_time = 0;
  int crossings = 0;
};

// Uses component `component` of each sample (a scalar series per sample).
CycleDiagnostics detect_cycle(const std::vector<double>& t, const std::vector<std::vector<double>>& x,
                              double transient_fraction = 0.5, int component = 0);
// Fields are reduced to the node average of each species first.
CycleDiagnostics detect_cycle(const Trajectory& traj, double transient_fraction = 0.5);

struct AmplitudePoint {
  double delta = 0;
  double re_beta = 0, im_beta = 0;
  double amplitude = 0;   // of the x coordinate in span(xi, eta)
  double ratio = 0;       // amplitude^2 / |Re beta|
  double period = 0, predicted_period = 0;
  CycleStatus status = CycleStatus::NoOscillation;
};

struct AmplitudeReport {
  std::vector<AmplitudePoint> points;
  double ratio_spread = 0;        // (max - min) / mean
  double max_period_error = 0;    // relative
  bool empty_branch_side = false; // some delta > delta0 gave no cycle
  double normal_form_ratio = 0;   // -8 / b1 for comparison
};

struct AmplitudeOptions {
  double t_end = 0;             // 0: chosen from Re beta
  double transient_fraction = 0.7;
  double perturbation = 0;      // 0: chosen from the predicted amplitude
  double tol = 1e-10;
};

AmplitudeReport amplitude_scaling_check(const NondimParams& p, double sigma, const HopfChain& chain,
                                        const std::vector<double>& deltas,
                                        const AmplitudeOptions& opt = {});

}  // namespace bzt
