#pragma once

#include <Eigen/Dense>

#include "orbital/lattice.hpp"

namespace orbital {

/// Band-2 state localized on the central well of a finite 1D lattice patch.
struct LocalizedState {
  Eigen::VectorXd grid;    // uniform samples on [-c*ell, c*ell], hard walls
  Eigen::VectorXd values;  // real, L2-normalized
  int n_cells = 0;
  int points_per_cell = 0;
  double central_probability = 0.0;  // weight inside [-ell, ell]
};

/// Diagonalize the 1D lattice Hamiltonian on n_cells periods with hard
/// walls (sine spectral basis) and rotate the band-2 multiplet into the
/// combination that maximizes central-cell probability.
/// n_cells must be odd and >= 3.
LocalizedState localized_band2_state(const LatticeConfig& config,
                                     int n_cells = 3, int points_per_cell = 256);

/// Nearest-neighbor estimate
///   R2 = (2/hbar) \int_{-ell}^{3 ell} w(x) V0 sin^2(kx) w(x - 2 ell) dx
/// evaluated with the localized state w. Result in natural rate units.
double tunneling_rate_quadrature(const LocalizedState& state,
                                 const LatticeConfig& config);

/// Dynamic estimate: propagate the localized band-2 state on the same
/// hard-wall domain with a split-operator (sine basis) stepper, track the
/// central-cell population and read the two-site Rabi frequency off its
/// first minimum: R2 = pi / t_min.
/// horizon is in natural time units. Throws std::runtime_error with the
/// implied lower bound if no population minimum occurs within the horizon.
double tunneling_rate_dynamic(const LatticeConfig& config, double horizon,
                              int n_cells = 3, int points_per_cell = 256);

struct TunnelingResult {
  double r2_quadrature = 0.0;  // natural rate units
  double r2_dynamic = 0.0;
  double timescale = 0.0;      // 1 / r2_dynamic
};

TunnelingResult estimate_tunneling(const LatticeConfig& config,
                                   double horizon, int n_cells = 3);

}  // namespace orbital
