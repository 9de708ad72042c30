#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "orbital/lattice.hpp"
#include "orbital/spectral.hpp"

namespace orbital {

/// Complex wavefunction on one periodic lattice cell [-ell, ell)^2.
/// values(ix, iy) samples psi(x_ix, y_iy); normalization is
/// sum |psi|^2 dx dy = 1.
struct WaveField2D {
  int n = 0;          // grid points per axis, power of two, >= 64
  double ell = 0.0;
  Eigen::ArrayXXcd values;

  double dx() const { return 2.0 * ell / n; }
  double norm() const;
  void normalize();
  Eigen::VectorXd axis() const;  // the shared x/y grid
};

/// Observables sampled during a propagation.
struct ObservableSet {
  double t = 0.0;  // natural units
  double p00 = 0.0, p20 = 0.0, p02 = 0.0, p22 = 0.0;
  double p40 = 0.0, p04 = 0.0;
  double leakage = 0.0;   // 1 - sum_{i,j in {0,2}} P_ij
  double fidelity = 0.0;  // |<+|psi>|^2
  double lz = 0.0;        // <x p_y - y p_x>, units of hbar
};

/// Ground state of the static cell Hamiltonian by imaginary-time evolution
/// with a shrinking step schedule. Converged when the energy moves less
/// than `tolerance` (natural units) across a schedule stage.
/// Throws std::runtime_error with the residual if not converged.
WaveField2D ground_state_imaginary_time(const LatticeConfig& config, int grid_n,
                                        double tolerance = 1e-8);

/// Energy expectation <K> + <V> of a field under the static potential.
double static_energy(const WaveField2D& psi, const LatticeConfig& config);

/// Projection <Gamma_i(x) Gamma_j(y) | psi> by 2D quadrature.
/// Throws std::invalid_argument if the basis grid does not match the cell.
std::complex<double> project(const WaveField2D& psi, int i, int j,
                             const EigenBasis1D& basis);

struct LeakageInfo {
  double total = 0.0;  // 1 - sum_{i,j in {0,2}} P_ij
  double p40 = 0.0;
  double p04 = 0.0;
};
LeakageInfo leakage(const WaveField2D& psi, const EigenBasis1D& basis);

/// <L_z> = <x p_y - y p_x> with spectral derivatives, in units of hbar.
double angular_momentum(const WaveField2D& psi);

/// Fourier split-operator propagation of the driven cell Hamiltonian.
///
/// Strang splitting, second order, with the time-dependent potential
/// evaluated at each segment midpoint. dt must resolve the carrier:
/// omega_x * dt <= 0.1 (throws std::invalid_argument with a suggested dt
/// otherwise). Observables are recorded at the step boundaries nearest the
/// requested sample times. psi is advanced in place.
std::vector<ObservableSet> propagate_split_operator(
    WaveField2D& psi, const PhysicalDrive& drive, const LatticeConfig& config,
    const EigenBasis1D& basis, double dt, double total_time,
    const std::vector<double>& sample_times);

}  // namespace orbital
