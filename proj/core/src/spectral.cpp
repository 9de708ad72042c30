#include "orbital/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace orbital {
namespace {

struct SectorSolution {
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;  // columns are eigenvectors in the trig basis
};

// Even sector basis on [-ell, ell): phi_0 = 1/sqrt(2 ell),
// phi_m = cos(2 m x)/sqrt(ell), m >= 1. The potential
// V0 sin^2(x) = V0/2 - (V0/2) cos(2x) is tridiagonal in this basis.
SectorSolution solve_even(double V0, int n_modes) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n_modes, n_modes);
  for (int m = 0; m < n_modes; ++m) {
    h(m, m) = 2.0 * m * m + V0 / 2.0;
  }
  h(0, 1) = h(1, 0) = -V0 / (2.0 * std::numbers::sqrt2);
  for (int m = 1; m + 1 < n_modes; ++m) {
    h(m, m + 1) = h(m + 1, m) = -V0 / 4.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("even-sector diagonalization failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// Odd sector: phi_m = sin(2 m x)/sqrt(ell), m >= 1.
SectorSolution solve_odd(double V0, int n_modes) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n_modes, n_modes);
  for (int m = 0; m < n_modes; ++m) {
    const int mode = m + 1;
    h(m, m) = 2.0 * mode * mode + V0 / 2.0;
  }
  for (int m = 0; m + 1 < n_modes; ++m) {
    h(m, m + 1) = h(m + 1, m) = -V0 / 4.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("odd-sector diagonalization failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace

double EigenBasis1D::evaluate(int n, double x) const {
  const Eigen::VectorXd& c = mode_coeffs.at(n);
  const double ell = std::numbers::pi / 2.0;
  double value = 0.0;
  if (parities[n] == Parity::Even) {
    value += c(0) / std::sqrt(2.0 * ell);
    for (int m = 1; m < c.size(); ++m) {
      value += c(m) * std::cos(2.0 * m * x) / std::sqrt(ell);
    }
  } else {
    for (int m = 0; m < c.size(); ++m) {
      value += c(m) * std::sin(2.0 * (m + 1) * x) / std::sqrt(ell);
    }
  }
  return value;
}

Eigen::VectorXd EigenBasis1D::sample(int n, const Eigen::VectorXd& xs) const {
  Eigen::VectorXd out(xs.size());
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    out(i) = evaluate(n, xs(i));
  }
  return out;
}

EigenBasis1D solve_site_states(const LatticeConfig& config, int m_grid,
                               int n_states) {
  config.validate();
  if (m_grid < 64) {
    throw std::invalid_argument("m_grid must be at least 64");
  }
  if (n_states < 5) {
    throw std::invalid_argument("n_states must be at least 5");
  }

  // Trig basis grows with the grid so grid refinement is a genuine
  // convergence test; max harmonic stays below the grid Nyquist limit.
  const int n_even = std::max(n_states + 8, m_grid / 4);
  const int n_odd = n_even - 1;

  const SectorSolution even = solve_even(config.V0, n_even);
  const SectorSolution odd = solve_odd(config.V0, n_odd);

  struct Entry {
    double energy;
    Parity parity;
    int column;
  };
  std::vector<Entry> entries;
  for (int i = 0; i < even.energies.size(); ++i) {
    entries.push_back({even.energies(i), Parity::Even, i});
  }
  for (int i = 0; i < odd.energies.size(); ++i) {
    entries.push_back({odd.energies(i), Parity::Odd, i});
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.energy < b.energy; });

  if (static_cast<int>(entries.size()) < n_states) {
    throw std::runtime_error("basis too small for requested state count");
  }

  EigenBasis1D basis;
  const double ell = config.ell;
  basis.dx = 2.0 * ell / m_grid;
  basis.grid.resize(m_grid);
  for (int i = 0; i < m_grid; ++i) {
    basis.grid(i) = -ell + i * basis.dx;
  }
  basis.energies.resize(n_states);
  basis.parities.reserve(n_states);
  basis.mode_coeffs.reserve(n_states);
  basis.gammas.reserve(n_states);

  for (int n = 0; n < n_states; ++n) {
    const Entry& e = entries[n];
    Eigen::VectorXd coeffs = (e.parity == Parity::Even)
                                 ? even.vectors.col(e.column).eval()
                                 : odd.vectors.col(e.column).eval();
    basis.energies(n) = e.energy;
    basis.parities.push_back(e.parity);
    basis.mode_coeffs.push_back(std::move(coeffs));

    // Sign convention: Gamma_n(0) > 0 for even states, Gamma_n'(0) > 0 for
    // odd ones.
    double marker = 0.0;
    const Eigen::VectorXd& c = basis.mode_coeffs.back();
    if (e.parity == Parity::Even) {
      marker = c(0) / std::sqrt(2.0 * ell);
      for (int m = 1; m < c.size(); ++m) {
        marker += c(m) / std::sqrt(ell);
      }
    } else {
      for (int m = 0; m < c.size(); ++m) {
        marker += c(m) * 2.0 * (m + 1) / std::sqrt(ell);
      }
    }
    if (marker < 0.0) {
      basis.mode_coeffs.back() = -basis.mode_coeffs.back();
    }
    basis.gammas.push_back(basis.sample(n, basis.grid));
  }

  // The scheme needs E0 < E1 < E2 strictly; higher states may be
  // band-edge degenerate in shallow lattices.
  for (int n = 0; n + 1 < std::min(n_states, 3); ++n) {
    if (!(basis.energies(n) < basis.energies(n + 1))) {
      throw std::runtime_error("eigenvalues not strictly ordered");
    }
  }
  basis.omega_d = basis.energies(2) - basis.energies(0);
  return basis;
}

int count_bound_states(const EigenBasis1D& basis, const LatticeConfig& config) {
  if (basis.size() == 0 ||
      basis.energies(basis.size() - 1) < config.V0) {
    throw std::runtime_error(
        "insufficient n_states: top state below the barrier; request more");
  }
  int count = 0;
  for (int n = 0; n < basis.size(); ++n) {
    if (basis.energies(n) < config.V0) ++count;
  }
  return count;
}

}  // namespace orbital
