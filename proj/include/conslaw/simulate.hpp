#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "conslaw/numeric.hpp"

namespace conslaw {

enum class Boundary { periodic, dirichlet };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& text);

struct GridRun {
  double x_min = 0;
  double x_max = 6.283185307179586;
  std::size_t n = 800;  // intervals; periodic grids drop the right endpoint
  double t_end = 0.1;
  double dt = 0;         // 0: safety * dx^2 / max|d(u)|, recomputed every step
  double safety = 0.4;
  Boundary boundary = Boundary::periodic;
  std::function<double(double)> initial;
  std::size_t snapshots = 100;  // evenly spaced in time, plus t = 0
};

struct Snapshot {
  double t = 0;
  std::vector<double> u;
};

struct Trajectory {
  Boundary boundary = Boundary::periodic;
  double dx = 0;
  std::vector<double> x;
  std::vector<Snapshot> snapshots;
  std::size_t steps = 0;
  double max_dt = 0;
  double seconds = 0;
};

// u_t = d u_xx + d_u u_x^2 + k u_x with second-order central differences and
// Heun steps. Dirichlet ends keep their initial values. Throws InvalidModel
// for arbitrary or non-positive d, StabilityError when a fixed dt breaks the
// bound or the solution blows up.
Trajectory simulate(const GridRun& run, const PDEModel& model);

struct DriftReport {
  std::vector<double> times;
  std::vector<double> integrals;  // trapezoid of F over the grid
  double drift = 0;               // max |I(t) - I(0)|, relative when I(0) != 0
  bool relative = true;
  double boundary_flux = 0;       // Dirichlet: max |G| at either end
  double flux_transport = 0;      // Dirichlet: integral over time of G(b) - G(a)
  std::vector<std::string> notes;
};

// Potentials are rebuilt at every snapshot by cumulative trapezoid of their
// x-rules from the left end; the left-end value follows the t-rule in time.
// Throws InvalidModel when F needs a jet the grid does not provide.
DriftReport track_conserved(const Trajectory& trajectory, const ConservedVector& cv, const NumericCase& nc);

// L2 error against the heat kernel solution from exp(-x^2/(4 s)) at t_end,
// d = 1, k = 0, periodic on [-10, 10].
double heat_gaussian_error(std::size_t n, double t_end, double s = 0.25);

}  // namespace conslaw
