#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "orbital/couplings.hpp"
#include "orbital/pulses.hpp"

namespace orbital {

/// Four-level amplitudes in the basis order (|00>, |20>, |02>, |22>).
using FourLevelState = Eigen::Vector4cd;

inline constexpr int kIdx00 = 0;
inline constexpr int kIdx20 = 1;
inline constexpr int kIdx02 = 2;
inline constexpr int kIdx22 = 3;

/// The target superposition (|20> + i|02>)/sqrt(2).
FourLevelState plus_state();
FourLevelState ground_state_4l();

struct FourLevelTrajectory {
  std::vector<double> times;  // natural units, strictly increasing
  std::vector<FourLevelState> states;
  std::vector<std::array<double, 4>> populations;
  std::vector<double> fidelity_to_target;
};

using HamiltonianBuilder = std::function<Eigen::Matrix4cd(double)>;

/// Rotating-wave four-level Hamiltonian at time t:
///   H = (omega_x - omega_d)|00><00|
///     + 1/2 [Omega_x1 |20><00| - Omega_c |02><20| + Omega_x2 |02><22| + h.c.]
/// With sequential pulses the G factors are identically 1 and
/// Omega_x1 = Omega_x2 = Omega_x; with_g_factors enables the
/// G_{2,0,0,0} / G_{0,2,2,2} corrections for overlapping drives.
Eigen::Matrix4cd build_h4l(const PulseSchedule& schedule, double detuning,
                           const CouplingSet& couplings, double t,
                           bool with_g_factors = false);

/// Full interaction-picture Hamiltonian before the rotating-wave truncation,
/// with all seven coupling terms, explicit carrier phases and exact chi~
/// factors. Serves as the stricter reference model.
Eigen::Matrix4cd build_pre_rwa(const PhysicalDrive& drive,
                               const CouplingSet& couplings, double omega_d,
                               double t);

struct PropagateOptions {
  double dt = 0.0;          // 0 -> span/20000
  bool verify_step = false; // re-run at dt/2 and compare final amplitudes
  double step_tol = 1e-9;
};

/// Unitary propagation with a 4th-order Magnus (two-point Gauss) integrator.
/// Norm is preserved to machine precision; trajectory is sampled at `times`
/// (strictly increasing, first entry is the initial time).
/// Throws std::runtime_error if verify_step is set and the dt/2 check
/// exceeds step_tol.
FourLevelTrajectory propagate_4l(const HamiltonianBuilder& hamiltonian,
                                 const FourLevelState& initial,
                                 const std::vector<double>& times,
                                 const PropagateOptions& options = {});

/// |<target|state>|^2. Throws std::invalid_argument on unnormalized input.
double fidelity(const FourLevelState& state, const FourLevelState& target);

}  // namespace orbital
