#pragma once

#include <array>
#include <complex>

#include "orbital/lattice.hpp"
#include "orbital/spectral.hpp"

namespace orbital {

/// Scalar coefficients linking the physical drive to the four-level model.
///
/// All overlaps are quadratures of Gamma_0 and Gamma_2 over one site:
///   alpha_n = <Gamma_n| sin^2(kx) |Gamma_n>
///   beta_n  = <Gamma_n| cos(2kx)  |Gamma_n>
///   gamma_0 = <Gamma_0| sin^2(kx) |Gamma_2>
///   gamma_1 = <Gamma_0| cos(2kx)  |Gamma_2>^2          (>= 0)
///   gamma_2 = beta_0 * <Gamma_0|cos|Gamma_2>
///   gamma_3 = <Gamma_0|cos|Gamma_2> * beta_2
///   A02     = (alpha_0 - alpha_2) / omega_d            (hbar = 1)
struct CouplingSet {
  double alpha0 = 0.0, alpha2 = 0.0;
  double beta0 = 0.0, beta2 = 0.0;
  double gamma0 = 0.0, gamma1 = 0.0, gamma2 = 0.0, gamma3 = 0.0;
  double A02 = 0.0;
  double omega_d = 0.0;
};

/// Quadrature of all coupling scalars on the basis grid.
CouplingSet compute_overlaps(const EigenBasis1D& basis);

/// Interaction-picture phase chi_{n,m}(t) =
///   exp{-i [alpha_n \int f_x - beta_n beta_m \int V_c]}, |chi| = 1.
/// `exact` uses the drive's exact running integrals; `approx` replaces
/// \int f_x by the slow-envelope form g_x(t) sin(omega_x t)/omega_x.
struct ChiPhase {
  std::complex<double> exact;
  std::complex<double> approx;
};
ChiPhase chi_phase(int n, int m, const CouplingSet& cs,
                   const PhysicalDrive& drive, double t);

/// G_{n,m,p,q}(t) = exp[i (beta_p beta_q - beta_n beta_m) \int_0^t V_c].
/// Indices must be 0 or 2 (the basis labels).
std::complex<double> g_factor(const std::array<int, 4>& nmpq,
                              const CouplingSet& cs, const PhysicalDrive& drive,
                              double t);

/// chi~_{n,m,p,q}(t) = conj(chi_{n,m}) chi_{p,q}, exact form.
std::complex<double> chi_tilde(const std::array<int, 4>& nmpq,
                               const CouplingSet& cs,
                               const PhysicalDrive& drive, double t);

/// Truncation diagnostics for the Bessel-function reduction of the drive
/// phase: with z = A02 * g_max, reports 1 - J0(z), |J1(z)|, |J2(z)|.
struct BesselTruncation {
  double j0_deficit = 0.0;
  double j1_mag = 0.0;
  double j2_mag = 0.0;
};
BesselTruncation jacobi_anger_check(double a02, double g_max);

}  // namespace orbital
