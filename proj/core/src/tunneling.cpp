#include "orbital/tunneling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fft_util.hpp"

namespace orbital {
namespace {

struct BoxSolution {
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;  // sine-basis coefficients per column
  int n_modes = 0;
  double half_width = 0.0;  // X: domain is [-X, X]
};

// Hard-wall lattice patch in the sine basis
// phi_j = sqrt(2/L) sin(j pi (x + X)/L), L = 2X = n_cells * 2 ell.
// With n_cells odd, cos(2x) = -cos(2u), u = x + X, and the potential is
// banded: couplings at |j - j'| = 2 n_cells and j + j' = 2 n_cells.
BoxSolution solve_box(const LatticeConfig& config, int n_cells, int n_modes) {
  const double V0 = config.V0;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n_modes, n_modes);
  for (int a = 0; a < n_modes; ++a) {
    const double j = a + 1.0;
    h(a, a) = 0.5 * (j / n_cells) * (j / n_cells) + V0 / 2.0;
  }
  for (int a = 0; a < n_modes; ++a) {
    const int j = a + 1;
    const int j_up = j + 2 * n_cells;
    if (j_up <= n_modes) {
      h(a, j_up - 1) += V0 / 4.0;
      h(j_up - 1, a) += V0 / 4.0;
    }
    const int j_mirror = 2 * n_cells - j;
    if (j_mirror >= 1 && j_mirror <= n_modes && j_mirror > j) {
      h(a, j_mirror - 1) -= V0 / 4.0;
      h(j_mirror - 1, a) -= V0 / 4.0;
    } else if (j_mirror == j) {
      h(a, a) -= V0 / 4.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hard-wall diagonalization failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors(), n_modes,
          n_cells * config.ell};
}

Eigen::VectorXd sample_box_state(const BoxSolution& box,
                                 const Eigen::VectorXd& coeffs,
                                 const Eigen::VectorXd& grid) {
  const double L = 2.0 * box.half_width;
  Eigen::VectorXd values = Eigen::VectorXd::Zero(grid.size());
  for (int a = 0; a < box.n_modes; ++a) {
    if (coeffs(a) == 0.0) continue;
    const double kj = (a + 1) * std::numbers::pi / L;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      values(i) += coeffs(a) * std::sqrt(2.0 / L) *
                   std::sin(kj * (grid(i) + box.half_width));
    }
  }
  return values;
}

LocalizedState localized_band_state(const LatticeConfig& config, int band,
                                    int n_cells, int points_per_cell) {
  config.validate();
  if (n_cells < 3 || n_cells % 2 == 0) {
    throw std::invalid_argument("n_cells must be odd and >= 3");
  }
  const int n_modes = std::max(64, 48 * n_cells);
  const BoxSolution box = solve_box(config, n_cells, n_modes);

  // Multiplet of n_cells states per band; refuse if it overlaps neighbors.
  const int lo = band * n_cells;
  const int hi = lo + n_cells;  // exclusive
  if (hi >= box.energies.size()) {
    throw std::runtime_error("basis too small for requested band");
  }
  const double spread = box.energies(hi - 1) - box.energies(lo);
  const double gap_below =
      lo > 0 ? box.energies(lo) - box.energies(lo - 1) : 1e300;
  const double gap_above = box.energies(hi) - box.energies(hi - 1);
  if (spread > 0.5 * std::min(gap_below, gap_above)) {
    throw std::runtime_error(
        "band identification failure: multiplet spread overlaps neighbors");
  }

  const int total = n_cells * points_per_cell;
  const double h = 2.0 * config.ell / points_per_cell;
  Eigen::VectorXd grid(total + 1);
  for (int i = 0; i <= total; ++i) grid(i) = -box.half_width + i * h;

  std::vector<Eigen::VectorXd> members;
  members.reserve(n_cells);
  for (int s = lo; s < hi; ++s) {
    members.push_back(sample_box_state(box, box.vectors.col(s), grid));
  }

  // Rotate the multiplet to maximize central-cell probability: top
  // eigenvector of the cell-restricted overlap matrix.
  const int cell_lo = (n_cells - 1) / 2 * points_per_cell;
  const int cell_hi = (n_cells + 1) / 2 * points_per_cell;
  auto cell_quadrature = [&](const Eigen::VectorXd& a,
                             const Eigen::VectorXd& b) {
    double acc = 0.5 * (a(cell_lo) * b(cell_lo) + a(cell_hi) * b(cell_hi));
    for (int i = cell_lo + 1; i < cell_hi; ++i) acc += a(i) * b(i);
    return acc * h;
  };
  Eigen::MatrixXd m(n_cells, n_cells);
  for (int a = 0; a < n_cells; ++a) {
    for (int b = a; b < n_cells; ++b) {
      m(a, b) = m(b, a) = cell_quadrature(members[a], members[b]);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> rotation(m);
  const Eigen::VectorXd weights = rotation.eigenvectors().col(n_cells - 1);

  LocalizedState state;
  state.grid = grid;
  state.values = Eigen::VectorXd::Zero(grid.size());
  for (int a = 0; a < n_cells; ++a) {
    state.values += weights(a) * members[a];
  }
  state.n_cells = n_cells;
  state.points_per_cell = points_per_cell;
  state.central_probability = rotation.eigenvalues()(n_cells - 1);
  if (state.values(total / 2) < 0.0) state.values = -state.values;
  return state;
}

}  // namespace

LocalizedState localized_band2_state(const LatticeConfig& config, int n_cells,
                                     int points_per_cell) {
  return localized_band_state(config, 2, n_cells, points_per_cell);
}

double tunneling_rate_quadrature(const LocalizedState& state,
                                 const LatticeConfig& config) {
  const int p = state.points_per_cell;
  const double h = 2.0 * config.ell / p;
  // \int_{-ell}^{3 ell} w(x) V0 sin^2(x) w(x - 2 ell) dx; the shift by one
  // lattice period is exactly p grid points.
  const int lo = (state.n_cells - 1) / 2 * p;           // x = -ell
  const int hi = (state.n_cells - 1) / 2 * p + 2 * p;   // x = +3 ell
  double acc = 0.0;
  for (int i = lo; i <= hi; ++i) {
    if (i - p < 0) continue;
    const double x = state.grid(i);
    const double s = std::sin(x);
    double w = state.values(i) * config.V0 * s * s * state.values(i - p);
    if (i == lo || i == hi) w *= 0.5;
    acc += w;
  }
  return std::abs(2.0 * acc * h);
}

double tunneling_rate_dynamic(const LatticeConfig& config, double horizon,
                              int n_cells, int points_per_cell) {
  config.validate();
  const LocalizedState w = localized_band2_state(config, n_cells, points_per_cell);
  const int total = n_cells * points_per_cell;
  const int interior = total - 1;
  const double h = 2.0 * config.ell / points_per_cell;
  const double half_width = n_cells * config.ell;
  const double length = 2.0 * half_width;

  // Split-operator stepping in the sine basis (matches the hard-wall
  // construction of the localized state).
  detail::InplaceDst1D dst(interior);
  Eigen::VectorXd re(interior), im(interior);
  for (int i = 0; i < interior; ++i) {
    re(i) = w.values(i + 1);
    im(i) = 0.0;
  }

  Eigen::VectorXd pot(interior), kin(interior);
  for (int i = 0; i < interior; ++i) {
    const double s = std::sin(w.grid(i + 1));
    pot(i) = config.V0 * s * s;
    const double kj = (i + 1) * std::numbers::pi / length;
    kin(i) = 0.5 * kj * kj;
  }

  const double dt = 0.15 / config.omega;
  const int n_steps = static_cast<int>(std::ceil(horizon / dt));

  Eigen::VectorXd pot_cos(interior), pot_sin(interior);
  Eigen::VectorXd kin_cos(interior), kin_sin(interior);
  const double dst_scale = 1.0 / dst.round_trip_scale();
  for (int i = 0; i < interior; ++i) {
    pot_cos(i) = std::cos(-0.5 * dt * pot(i));
    pot_sin(i) = std::sin(-0.5 * dt * pot(i));
    kin_cos(i) = std::cos(-dt * kin(i)) * dst_scale;
    kin_sin(i) = std::sin(-dt * kin(i)) * dst_scale;
  }

  auto rotate = [&](const Eigen::VectorXd& c, const Eigen::VectorXd& s) {
    for (int i = 0; i < interior; ++i) {
      const double r = re(i), q = im(i);
      re(i) = c(i) * r - s(i) * q;
      im(i) = s(i) * r + c(i) * q;
    }
  };
  auto transform_pair = [&]() {
    double* buf = dst.data();
    for (int i = 0; i < interior; ++i) buf[i] = re(i);
    dst.execute();
    for (int i = 0; i < interior; ++i) re(i) = buf[i];
    for (int i = 0; i < interior; ++i) buf[i] = im(i);
    dst.execute();
    for (int i = 0; i < interior; ++i) im(i) = buf[i];
  };

  // Central cell [-ell, ell] in interior-array indices (grid index - 1).
  const int cell_lo = (n_cells - 1) / 2 * points_per_cell - 1;
  const int cell_hi = cell_lo + points_per_cell;
  auto central_population = [&]() {
    double acc = 0.0;
    for (int i = cell_lo; i <= cell_hi && i < interior; ++i) {
      if (i < 0) continue;
      acc += re(i) * re(i) + im(i) * im(i);
    }
    return acc * h;
  };

  std::vector<double> population;
  population.reserve(n_steps + 1);
  population.push_back(central_population());
  for (int step = 0; step < n_steps; ++step) {
    rotate(pot_cos, pot_sin);
    transform_pair();
    rotate(kin_cos, kin_sin);
    transform_pair();
    rotate(pot_cos, pot_sin);
    population.push_back(central_population());
  }

  // First local minimum of the central population marks the site-to-site
  // transfer time; the rate is its inverse, R2 = 1 / t_min.
  const double p0 = population.front();
  double global_min = p0;
  for (double p : population) global_min = std::min(global_min, p);
  const double rebound = 0.05 * (p0 - global_min);
  int min_index = -1;
  double running_min = p0;
  int running_arg = 0;
  for (int i = 1; i < static_cast<int>(population.size()); ++i) {
    if (population[i] < running_min) {
      running_min = population[i];
      running_arg = i;
    } else if (population[i] > running_min + rebound && running_arg > 0) {
      min_index = running_arg;
      break;
    }
  }
  if (min_index <= 0) {
    throw std::runtime_error(
        "no tunneling oscillation within horizon; rate below " +
        std::to_string(std::numbers::pi / horizon));
  }
  // Parabolic refinement around the sampled minimum.
  double t_min = min_index * dt;
  if (min_index + 1 < static_cast<int>(population.size())) {
    const double ym = population[min_index - 1];
    const double y0 = population[min_index];
    const double yp = population[min_index + 1];
    const double denom = ym - 2.0 * y0 + yp;
    if (denom > 0.0) {
      t_min += 0.5 * dt * (ym - yp) / denom;
    }
  }
  return std::numbers::pi / t_min;
}

TunnelingResult estimate_tunneling(const LatticeConfig& config, double horizon,
                                   int n_cells) {
  TunnelingResult result;
  const LocalizedState w = localized_band2_state(config, n_cells);
  result.r2_quadrature = tunneling_rate_quadrature(w, config);
  result.r2_dynamic = tunneling_rate_dynamic(config, horizon, n_cells);
  result.timescale = 1.0 / result.r2_dynamic;
  return result;
}

}  // namespace orbital
