#pragma once

#include <Eigen/Dense>
#include <vector>

#include "orbital/lattice.hpp"

namespace orbital {

enum class Parity { Even, Odd };

/// Localized site eigenfunctions of the unperturbed 1D lattice well.
///
/// States are the q=0 Bloch eigenfunctions of -1/2 d^2/dx^2 + V0 sin^2(x)
/// on one period [-ell, ell) with periodic boundary conditions, computed in
/// a trigonometric (plane-wave) basis and sorted by energy. Even states are
/// cosine series, odd states sine series, so parity labels are exact.
///
/// Sign convention: even states have Gamma_n(0) > 0, odd states have
/// Gamma_n'(0) > 0.
struct EigenBasis1D {
  Eigen::VectorXd grid;                    // M uniform samples on [-ell, ell)
  double dx = 0.0;
  std::vector<Eigen::VectorXd> gammas;     // sampled eigenfunctions, L2-orthonormal
  Eigen::VectorXd energies;                // ascending
  std::vector<Parity> parities;
  double omega_d = 0.0;                    // E2 - E0

  // Trigonometric mode coefficients per state: even states are
  // sum_m c_m * phi_m with phi_0 = 1/sqrt(2 ell), phi_m = sqrt(1/ell) cos(2 m x);
  // odd states use sqrt(1/ell) sin(2 m x), m >= 1.
  std::vector<Eigen::VectorXd> mode_coeffs;

  /// Evaluate eigenfunction n at an arbitrary point (exact series sum).
  double evaluate(int n, double x) const;
  /// Sample eigenfunction n on an arbitrary grid.
  Eigen::VectorXd sample(int n, const Eigen::VectorXd& xs) const;

  int size() const { return static_cast<int>(gammas.size()); }
};

/// Diagonalize the single-site problem.
///
/// m_grid: number of real-space samples (>= 64); the trig basis size scales
/// with it. n_states: how many lowest states to keep (>= 5 so that the
/// |40>-leakage projector is available downstream).
EigenBasis1D solve_site_states(const LatticeConfig& config, int m_grid,
                               int n_states);

/// Number of eigenstates below the barrier top V0.
/// Throws std::runtime_error if the basis does not reach above V0.
int count_bound_states(const EigenBasis1D& basis, const LatticeConfig& config);

}  // namespace orbital
