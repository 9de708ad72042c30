#include "orbital/couplings.hpp"

#include <cmath>
#include <stdexcept>

namespace orbital {
namespace {

double periodic_quadrature(const Eigen::VectorXd& f, double dx) {
  return f.sum() * dx;
}

double beta_for_index(const CouplingSet& cs, int n) {
  switch (n) {
    case 0: return cs.beta0;
    case 2: return cs.beta2;
    default:
      throw std::invalid_argument("coupling index must be 0 or 2");
  }
}

double alpha_for_index(const CouplingSet& cs, int n) {
  switch (n) {
    case 0: return cs.alpha0;
    case 2: return cs.alpha2;
    default:
      throw std::invalid_argument("coupling index must be 0 or 2");
  }
}

}  // namespace

CouplingSet compute_overlaps(const EigenBasis1D& basis) {
  if (basis.size() < 3) {
    throw std::invalid_argument("basis must contain Gamma_0 and Gamma_2");
  }
  const Eigen::VectorXd& x = basis.grid;
  const Eigen::VectorXd sin2 = x.array().sin().square().matrix();
  const Eigen::VectorXd cos2 = (2.0 * x.array()).cos().matrix();
  const Eigen::VectorXd& g0 = basis.gammas[0];
  const Eigen::VectorXd& g2 = basis.gammas[2];

  CouplingSet cs;
  cs.alpha0 = periodic_quadrature(g0.cwiseProduct(sin2).cwiseProduct(g0), basis.dx);
  cs.alpha2 = periodic_quadrature(g2.cwiseProduct(sin2).cwiseProduct(g2), basis.dx);
  cs.beta0 = periodic_quadrature(g0.cwiseProduct(cos2).cwiseProduct(g0), basis.dx);
  cs.beta2 = periodic_quadrature(g2.cwiseProduct(cos2).cwiseProduct(g2), basis.dx);
  cs.gamma0 = periodic_quadrature(g0.cwiseProduct(sin2).cwiseProduct(g2), basis.dx);
  const double cross = periodic_quadrature(g0.cwiseProduct(cos2).cwiseProduct(g2), basis.dx);
  cs.gamma1 = cross * cross;
  cs.gamma2 = cs.beta0 * cross;
  cs.gamma3 = cross * cs.beta2;
  cs.omega_d = basis.omega_d;
  cs.A02 = (cs.alpha0 - cs.alpha2) / cs.omega_d;
  return cs;
}

ChiPhase chi_phase(int n, int m, const CouplingSet& cs,
                   const PhysicalDrive& drive, double t) {
  const double alpha = alpha_for_index(cs, n);
  const double bb = beta_for_index(cs, n) * beta_for_index(cs, m);
  const double w_int = drive.V_c_integral(t);

  const std::complex<double> im(0.0, 1.0);
  ChiPhase chi;
  chi.exact = std::exp(-im * (alpha * drive.f_x_integral(t) - bb * w_int));
  // Slow-envelope form of the f_x integral.
  double f_int_approx = 0.0;
  if (drive.omega_x != 0.0) {
    f_int_approx =
        drive.g_x_env(t) * std::sin(drive.omega_x * t) / drive.omega_x;
  }
  chi.approx = std::exp(-im * (alpha * f_int_approx - bb * w_int));
  return chi;
}

std::complex<double> g_factor(const std::array<int, 4>& nmpq,
                              const CouplingSet& cs, const PhysicalDrive& drive,
                              double t) {
  const double bn = beta_for_index(cs, nmpq[0]);
  const double bm = beta_for_index(cs, nmpq[1]);
  const double bp = beta_for_index(cs, nmpq[2]);
  const double bq = beta_for_index(cs, nmpq[3]);
  const std::complex<double> im(0.0, 1.0);
  return std::exp(im * (bp * bq - bn * bm) * drive.V_c_integral(t));
}

std::complex<double> chi_tilde(const std::array<int, 4>& nmpq,
                               const CouplingSet& cs,
                               const PhysicalDrive& drive, double t) {
  const double f_int = drive.f_x_integral(t);
  const double w_int = drive.V_c_integral(t);
  const double phase_nm = alpha_for_index(cs, nmpq[0]) * f_int -
                          beta_for_index(cs, nmpq[0]) *
                              beta_for_index(cs, nmpq[1]) * w_int;
  const double phase_pq = alpha_for_index(cs, nmpq[2]) * f_int -
                          beta_for_index(cs, nmpq[2]) *
                              beta_for_index(cs, nmpq[3]) * w_int;
  const std::complex<double> im(0.0, 1.0);
  return std::exp(im * (phase_nm - phase_pq));
}

BesselTruncation jacobi_anger_check(double a02, double g_max) {
  const double z = std::abs(a02 * g_max);
  BesselTruncation out;
  out.j0_deficit = 1.0 - std::cyl_bessel_j(0, z);
  out.j1_mag = std::abs(std::cyl_bessel_j(1, z));
  out.j2_mag = std::abs(std::cyl_bessel_j(2, z));
  return out;
}

}  // namespace orbital
