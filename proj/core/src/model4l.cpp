#include "orbital/model4l.hpp"

#include <cmath>
#include <stdexcept>

namespace orbital {
namespace {

constexpr std::complex<double> kI(0.0, 1.0);

// exp(A) for anti-Hermitian A via the Hermitian eigendecomposition of iA.
Eigen::Matrix4cd exp_antihermitian(const Eigen::Matrix4cd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(kI * a);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("4x4 eigendecomposition failed in propagator");
  }
  const Eigen::Vector4d lambda = solver.eigenvalues();
  Eigen::Vector4cd phases;
  for (int i = 0; i < 4; ++i) {
    phases(i) = std::exp(-kI * lambda(i));
  }
  return solver.eigenvectors() * phases.asDiagonal() *
         solver.eigenvectors().adjoint();
}

// One 4th-order Magnus step (two-point Gauss collocation).
FourLevelState magnus4_step(const HamiltonianBuilder& hamiltonian, double t,
                            double h, const FourLevelState& state) {
  constexpr double kGaussOffset = 0.28867513459481287;  // sqrt(3)/6
  const Eigen::Matrix4cd h1 = hamiltonian(t + (0.5 - kGaussOffset) * h);
  const Eigen::Matrix4cd h2 = hamiltonian(t + (0.5 + kGaussOffset) * h);
  const Eigen::Matrix4cd omega =
      -kI * (h / 2.0) * (h1 + h2) -
      (std::sqrt(3.0) * h * h / 12.0) * (h2 * h1 - h1 * h2);
  return exp_antihermitian(omega) * state;
}

FourLevelTrajectory propagate_impl(const HamiltonianBuilder& hamiltonian,
                                   const FourLevelState& initial,
                                   const std::vector<double>& times,
                                   double dt) {
  FourLevelTrajectory traj;
  traj.times = times;
  traj.states.reserve(times.size());
  traj.populations.reserve(times.size());
  traj.fidelity_to_target.reserve(times.size());

  const FourLevelState target = plus_state();
  FourLevelState state = initial;
  auto record = [&](const FourLevelState& s) {
    traj.states.push_back(s);
    traj.populations.push_back(
        {std::norm(s(0)), std::norm(s(1)), std::norm(s(2)), std::norm(s(3))});
    traj.fidelity_to_target.push_back(std::norm(target.dot(s)));
  };
  record(state);

  for (size_t k = 0; k + 1 < times.size(); ++k) {
    const double span = times[k + 1] - times[k];
    if (!(span > 0.0)) {
      throw std::invalid_argument("sample times must be strictly increasing");
    }
    const int n_sub = std::max(1, static_cast<int>(std::ceil(span / dt)));
    const double h = span / n_sub;
    for (int s = 0; s < n_sub; ++s) {
      state = magnus4_step(hamiltonian, times[k] + s * h, h, state);
    }
    const double norm_err = std::abs(state.norm() - 1.0);
    if (norm_err > 1e-10) {
      throw std::runtime_error("propagation lost unitarity: |norm - 1| = " +
                               std::to_string(norm_err));
    }
    record(state);
  }
  return traj;
}

}  // namespace

FourLevelState plus_state() {
  FourLevelState s = FourLevelState::Zero();
  s(kIdx20) = 1.0 / std::sqrt(2.0);
  s(kIdx02) = kI / std::sqrt(2.0);
  return s;
}

FourLevelState ground_state_4l() {
  FourLevelState s = FourLevelState::Zero();
  s(kIdx00) = 1.0;
  return s;
}

Eigen::Matrix4cd build_h4l(const PulseSchedule& schedule, double detuning,
                           const CouplingSet& couplings, double t,
                           bool with_g_factors) {
  const double omega_x_env = schedule.omega_x_env(t);
  const double omega_c_env = schedule.omega_c_env(t);

  std::complex<double> omega_x1(omega_x_env, 0.0);
  std::complex<double> omega_x2(omega_x_env, 0.0);
  if (with_g_factors) {
    // G_{n,m,p,q} = exp[i (b_p b_q - b_n b_m) \int V_c]; the integral follows
    // from the Omega_c area through the physical map V_c = Omega_c/(2 gamma_1).
    const double w_int = schedule.omega_c_area(t) / (2.0 * couplings.gamma1);
    const double b0 = couplings.beta0, b2 = couplings.beta2;
    omega_x1 *= std::exp(kI * (b0 * b0 - b2 * b0) * w_int);
    omega_x2 *= std::exp(kI * (b2 * b2 - b0 * b2) * w_int);
  }

  Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
  h(kIdx00, kIdx00) = detuning;
  h(kIdx20, kIdx00) = 0.5 * omega_x1;
  h(kIdx02, kIdx20) = -0.5 * omega_c_env;
  h(kIdx02, kIdx22) = 0.5 * omega_x2;
  h(kIdx00, kIdx20) = std::conj(h(kIdx20, kIdx00));
  h(kIdx20, kIdx02) = std::conj(h(kIdx02, kIdx20));
  h(kIdx22, kIdx02) = std::conj(h(kIdx02, kIdx22));
  return h;
}

Eigen::Matrix4cd build_pre_rwa(const PhysicalDrive& drive,
                               const CouplingSet& couplings, double omega_d,
                               double t) {
  const double f_x = drive.f_x(t);
  const double v_c = drive.V_c(t);
  const double omega_x = drive.omega_x;
  const CouplingSet& c = couplings;

  // All seven coupling terms in their ket-bra positions; the Hamiltonian is
  // terms + terms^dagger plus the detuning diagonal. No transpose-mirror
  // pair appears twice, so the adjoint supplies exactly the h.c. lines.
  Eigen::Matrix4cd terms = Eigen::Matrix4cd::Zero();
  terms(kIdx20, kIdx00) = (c.gamma0 * f_x - v_c * c.gamma2) *
                          std::exp(kI * omega_x * t) *
                          chi_tilde({2, 0, 0, 0}, c, drive, t);
  terms(kIdx02, kIdx22) = (c.gamma0 * f_x - v_c * c.gamma3) *
                          std::exp(-kI * omega_d * t) *
                          chi_tilde({0, 2, 2, 2}, c, drive, t);
  terms(kIdx00, kIdx22) = -v_c * c.gamma1 *
                          std::exp(-kI * (omega_x + omega_d) * t) *
                          chi_tilde({0, 0, 2, 2}, c, drive, t);
  terms(kIdx00, kIdx02) = -v_c * c.gamma2 * std::exp(-kI * omega_x * t) *
                          chi_tilde({0, 0, 0, 2}, c, drive, t);
  terms(kIdx20, kIdx02) = -v_c * c.gamma1 * chi_tilde({2, 0, 0, 2}, c, drive, t);
  terms(kIdx20, kIdx22) = -v_c * c.gamma3 * std::exp(-kI * omega_d * t) *
                          chi_tilde({2, 0, 2, 2}, c, drive, t);

  Eigen::Matrix4cd h = terms + terms.adjoint();
  h(kIdx00, kIdx00) += omega_x - omega_d;
  return h;
}

FourLevelTrajectory propagate_4l(const HamiltonianBuilder& hamiltonian,
                                 const FourLevelState& initial,
                                 const std::vector<double>& times,
                                 const PropagateOptions& options) {
  if (times.size() < 2) {
    throw std::invalid_argument("need at least two sample times");
  }
  if (std::abs(initial.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument("initial state must be normalized");
  }
  const double span = times.back() - times.front();
  const double dt = options.dt > 0.0 ? options.dt : span / 20000.0;

  FourLevelTrajectory traj = propagate_impl(hamiltonian, initial, times, dt);
  if (options.verify_step) {
    const FourLevelTrajectory fine =
        propagate_impl(hamiltonian, initial, times, dt / 2.0);
    const double diff =
        (traj.states.back() - fine.states.back()).cwiseAbs().maxCoeff();
    if (diff > options.step_tol) {
      throw std::runtime_error(
          "integrator step check failed: achieved " + std::to_string(diff) +
          ", required " + std::to_string(options.step_tol));
    }
  }
  return traj;
}

double fidelity(const FourLevelState& state, const FourLevelState& target) {
  if (std::abs(state.norm() - 1.0) > 1e-8 ||
      std::abs(target.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument("fidelity requires normalized states");
  }
  return std::norm(target.dot(state));
}

}  // namespace orbital
