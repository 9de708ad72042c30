#include "orbital/tdse2d.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fft_util.hpp"

namespace orbital {
namespace {

constexpr std::complex<double> kI(0.0, 1.0);

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

Eigen::ArrayXd fft_wavenumbers(int n, double ell) {
  // Domain length 2*ell; mode spacing pi/ell (= 2 for the standard cell).
  const double dk = std::numbers::pi / ell;
  Eigen::ArrayXd k(n);
  for (int i = 0; i < n; ++i) {
    const int f = (i < n / 2) ? i : i - n;
    k(i) = dk * f;
  }
  return k;
}

// Shared machinery for real- and imaginary-time stepping on one cell.
class CellStepper {
 public:
  CellStepper(const LatticeConfig& config, int n)
      : config_(config),
        n_(n),
        fft_(n),
        psi_(fft_.data(), n, n),
        dx_(2.0 * config.ell / n) {
    axis_.resize(n);
    for (int i = 0; i < n; ++i) axis_(i) = -config.ell + i * dx_;
    sin2_ = axis_.array().sin().square();
    cos2_ = (2.0 * axis_.array()).cos();
    const Eigen::ArrayXd k = fft_wavenumbers(n, config.ell);
    kinetic_ = Eigen::ArrayXXd(n, n);
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        kinetic_(ix, iy) = 0.5 * (k(ix) * k(ix) + k(iy) * k(iy));
      }
    }
    static_pot_ = Eigen::ArrayXXd(n, n);
    cos_product_ = Eigen::ArrayXXd(n, n);
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        static_pot_(ix, iy) = config.V0 * (sin2_(ix) + sin2_(iy));
        cos_product_(ix, iy) = cos2_(ix) * cos2_(iy);
      }
    }
    phase_ws_ = Eigen::ArrayXXcd(n, n);
    column_ws_ = Eigen::ArrayXcd(n);
  }

  Eigen::Map<Eigen::ArrayXXcd>& psi() { return psi_; }
  const Eigen::Map<Eigen::ArrayXXcd>& psi() const { return psi_; }
  double dx() const { return dx_; }
  const Eigen::VectorXd& axis() const { return axis_; }

  void load(const WaveField2D& field) { psi_ = field.values; }
  void store(WaveField2D& field) const { field.values = psi_; }

  double norm_sq() const { return psi_.abs2().sum() * dx_ * dx_; }
  void normalize() { psi_ /= std::sqrt(norm_sq()); }

  // Prepare fixed real-time phase arrays for step size dt.
  void set_real_dt(double dt) {
    dt_ = dt;
    static_half_ =
        ((-kI * (0.5 * dt)) * static_pot_.cast<std::complex<double>>()).exp();
    kinetic_full_ =
        ((-kI * dt) * kinetic_.cast<std::complex<double>>()).exp() /
        static_cast<double>(n_ * n_);
  }

  // One Strang step with the potential sampled at the segment midpoint.
  void step_real(double f_x_mid, double v_c_mid) {
    apply_potential_half(f_x_mid, v_c_mid);
    fft_.forward();
    psi_ *= kinetic_full_;
    fft_.backward();
    apply_potential_half(f_x_mid, v_c_mid);
  }

  // One normalized imaginary-time step of the static Hamiltonian.
  void step_imag(double dtau) {
    if (dtau != imag_dtau_) {
      imag_dtau_ = dtau;
      imag_half_ =
          (-(0.5 * dtau) * static_pot_).exp().cast<std::complex<double>>();
      imag_kinetic_ = ((-dtau * kinetic_).exp() / (n_ * n_))
                          .cast<std::complex<double>>();
    }
    psi_ *= imag_half_;
    fft_.forward();
    psi_ *= imag_kinetic_;
    fft_.backward();
    psi_ *= imag_half_;
    normalize();
  }

  // <K> + <V> for the static potential.
  double static_energy() {
    const double nsq = psi_.abs2().sum();
    const double pot =
        (psi_.abs2() * static_pot_).sum() / nsq;
    work_ = psi_;
    fft_.forward();
    const double ksq_total = psi_.abs2().sum();
    const double kin = (psi_.abs2() * kinetic_).sum() / ksq_total;
    psi_ = work_;
    return kin + pot;
  }

  // <x p_y - y p_x> with spectral derivatives.
  double angular_momentum() {
    const Eigen::ArrayXcd k =
        fft_wavenumbers(n_, config_.ell).cast<std::complex<double>>();
    work_ = psi_;
    fft_.forward();
    Eigen::ArrayXXcd spectrum = psi_;
    // p_x psi
    for (int iy = 0; iy < n_; ++iy) {
      psi_.col(iy) = spectrum.col(iy) * k;
    }
    fft_.backward();
    Eigen::ArrayXXcd px_psi = psi_ / (n_ * n_);
    // p_y psi
    for (int iy = 0; iy < n_; ++iy) {
      psi_.col(iy) = spectrum.col(iy) * k(iy);
    }
    fft_.backward();
    Eigen::ArrayXXcd py_psi = psi_ / (n_ * n_);
    psi_ = work_;

    std::complex<double> acc(0.0, 0.0);
    for (int iy = 0; iy < n_; ++iy) {
      for (int ix = 0; ix < n_; ++ix) {
        acc += std::conj(psi_(ix, iy)) *
               (axis_(ix) * py_psi(ix, iy) - axis_(iy) * px_psi(ix, iy));
      }
    }
    return (acc * dx_ * dx_).real();
  }

 private:
  void apply_potential_half(double f_x, double v_c) {
    psi_ *= static_half_;
    if (f_x != 0.0) {
      column_ws_ =
          ((-kI * (0.5 * dt_) * f_x) * sin2_.cast<std::complex<double>>())
              .exp();
      psi_.colwise() *= column_ws_;
    }
    if (v_c != 0.0) {
      phase_ws_ =
          ((kI * (0.5 * dt_) * v_c) * cos_product_.cast<std::complex<double>>())
              .exp();
      psi_ *= phase_ws_;
    }
  }

  LatticeConfig config_;
  int n_;
  detail::InplaceFft2D fft_;
  Eigen::Map<Eigen::ArrayXXcd> psi_;
  double dx_;
  Eigen::VectorXd axis_;
  Eigen::ArrayXd sin2_, cos2_;
  Eigen::ArrayXXd kinetic_, static_pot_, cos_product_;

  double dt_ = 0.0;
  Eigen::ArrayXXcd static_half_, kinetic_full_;
  double imag_dtau_ = -1.0;
  Eigen::ArrayXXcd imag_half_, imag_kinetic_;
  Eigen::ArrayXXcd phase_ws_, work_;
  Eigen::ArrayXcd column_ws_;
};

struct Projectors {
  Eigen::VectorXd g0, g2, g4;
};

Projectors make_projectors(const EigenBasis1D& basis,
                           const Eigen::VectorXd& axis) {
  if (basis.size() < 5) {
    throw std::invalid_argument("basis must contain states up to Gamma_4");
  }
  return {basis.sample(0, axis), basis.sample(2, axis), basis.sample(4, axis)};
}

std::complex<double> contract(const Eigen::Map<Eigen::ArrayXXcd>& psi,
                              const Eigen::VectorXd& gx,
                              const Eigen::VectorXd& gy, double dx) {
  const Eigen::VectorXcd tmp = psi.matrix() * gy.cast<std::complex<double>>();
  return gx.cast<std::complex<double>>().dot(tmp) * dx * dx;
}

ObservableSet measure(CellStepper& stepper, const Projectors& proj, double t,
                      double dx) {
  const auto& psi = stepper.psi();
  const std::complex<double> a00 = contract(psi, proj.g0, proj.g0, dx);
  const std::complex<double> a20 = contract(psi, proj.g2, proj.g0, dx);
  const std::complex<double> a02 = contract(psi, proj.g0, proj.g2, dx);
  const std::complex<double> a22 = contract(psi, proj.g2, proj.g2, dx);
  const std::complex<double> a40 = contract(psi, proj.g4, proj.g0, dx);
  const std::complex<double> a04 = contract(psi, proj.g0, proj.g4, dx);

  ObservableSet obs;
  obs.t = t;
  obs.p00 = std::norm(a00);
  obs.p20 = std::norm(a20);
  obs.p02 = std::norm(a02);
  obs.p22 = std::norm(a22);
  obs.p40 = std::norm(a40);
  obs.p04 = std::norm(a04);
  obs.leakage = 1.0 - (obs.p00 + obs.p20 + obs.p02 + obs.p22);
  obs.fidelity = std::norm((a20 - kI * a02) / std::sqrt(2.0));
  obs.lz = stepper.angular_momentum();
  return obs;
}

}  // namespace

double WaveField2D::norm() const {
  return std::sqrt(values.abs2().sum()) * dx();
}

void WaveField2D::normalize() {
  const double n0 = norm();
  if (n0 == 0.0) {
    throw std::runtime_error("cannot normalize a zero field");
  }
  values /= n0;
}

Eigen::VectorXd WaveField2D::axis() const {
  Eigen::VectorXd xs(n);
  for (int i = 0; i < n; ++i) xs(i) = -ell + i * dx();
  return xs;
}

WaveField2D ground_state_imaginary_time(const LatticeConfig& config, int grid_n,
                                        double tolerance) {
  config.validate();
  if (!is_power_of_two(grid_n) || grid_n < 64) {
    throw std::invalid_argument("grid_n must be a power of two, >= 64");
  }

  CellStepper stepper(config, grid_n);
  // Gaussian seed at the well center, width of the harmonic approximation.
  auto& psi = stepper.psi();
  const auto& axis = stepper.axis();
  for (int iy = 0; iy < grid_n; ++iy) {
    for (int ix = 0; ix < grid_n; ++ix) {
      psi(ix, iy) = std::exp(-0.5 * config.omega *
                             (axis(ix) * axis(ix) + axis(iy) * axis(iy)));
    }
  }
  stepper.normalize();

  const double stage_dtaus[] = {0.2 / config.omega, 0.05 / config.omega,
                                0.015 / config.omega, 0.005 / config.omega,
                                0.0015 / config.omega};
  double stage_energy = stepper.static_energy();
  double previous_stage_energy = stage_energy;
  for (double dtau : stage_dtaus) {
    const double iter_tol = std::max(tolerance * 1e-3, 1e-14);
    double energy = stage_energy;
    int hits = 0;
    for (int iter = 0; iter < 20000; ++iter) {
      stepper.step_imag(dtau);
      if (iter % 5 == 4) {
        const double next = stepper.static_energy();
        if (std::abs(next - energy) < iter_tol * 5.0) {
          ++hits;
          if (hits >= 2) {
            energy = next;
            break;
          }
        } else {
          hits = 0;
        }
        energy = next;
      }
    }
    previous_stage_energy = stage_energy;
    stage_energy = energy;
  }
  if (std::abs(stage_energy - previous_stage_energy) > tolerance) {
    throw std::runtime_error(
        "imaginary-time evolution did not converge: residual " +
        std::to_string(std::abs(stage_energy - previous_stage_energy)));
  }

  WaveField2D field;
  field.n = grid_n;
  field.ell = config.ell;
  field.values = Eigen::ArrayXXcd(grid_n, grid_n);
  stepper.store(field);
  // Ground state is real and positive up to a global phase; pin it.
  const std::complex<double> center =
      field.values(grid_n / 2, grid_n / 2);
  field.values *= std::abs(center) / center;
  field.normalize();
  return field;
}

double static_energy(const WaveField2D& psi, const LatticeConfig& config) {
  CellStepper stepper(config, psi.n);
  stepper.load(psi);
  return stepper.static_energy();
}

std::complex<double> project(const WaveField2D& psi, int i, int j,
                             const EigenBasis1D& basis) {
  if (i < 0 || j < 0 || i >= basis.size() || j >= basis.size()) {
    throw std::invalid_argument("projection index outside basis");
  }
  const Eigen::VectorXd xs = psi.axis();
  const Eigen::VectorXd gi = basis.sample(i, xs);
  const Eigen::VectorXd gj = basis.sample(j, xs);
  const Eigen::VectorXcd tmp = psi.values.matrix() * gj.cast<std::complex<double>>();
  return gi.cast<std::complex<double>>().dot(tmp) * psi.dx() * psi.dx();
}

LeakageInfo leakage(const WaveField2D& psi, const EigenBasis1D& basis) {
  LeakageInfo info;
  double inside = 0.0;
  for (int i : {0, 2}) {
    for (int j : {0, 2}) {
      inside += std::norm(project(psi, i, j, basis));
    }
  }
  info.total = 1.0 - inside;
  info.p40 = std::norm(project(psi, 4, 0, basis));
  info.p04 = std::norm(project(psi, 0, 4, basis));
  return info;
}

double angular_momentum(const WaveField2D& psi) {
  LatticeConfig config = derive_units(1.0);  // geometry only
  CellStepper stepper(config, psi.n);
  stepper.load(psi);
  return stepper.angular_momentum();
}

std::vector<ObservableSet> propagate_split_operator(
    WaveField2D& psi, const PhysicalDrive& drive, const LatticeConfig& config,
    const EigenBasis1D& basis, double dt, double total_time,
    const std::vector<double>& sample_times) {
  config.validate();
  if (!is_power_of_two(psi.n) || psi.n < 64) {
    throw std::invalid_argument("grid must be a power of two, >= 64");
  }
  if (drive.omega_x * dt > 0.1 * (1.0 + 1e-12)) {
    throw std::invalid_argument(
        "time step too coarse for the drive: need omega_x*dt <= 0.1, use dt <= " +
        std::to_string(0.1 / drive.omega_x));
  }
  const int n_steps = std::max(1, static_cast<int>(std::llround(total_time / dt)));
  const double h = total_time / n_steps;

  CellStepper stepper(config, psi.n);
  stepper.load(psi);
  stepper.set_real_dt(h);
  const Projectors proj = make_projectors(basis, stepper.axis());

  // Snap sample times to step boundaries.
  std::vector<int> sample_steps;
  sample_steps.reserve(sample_times.size());
  for (double t : sample_times) {
    int idx = static_cast<int>(std::llround(t / h));
    idx = std::min(std::max(idx, 0), n_steps);
    if (sample_steps.empty() || idx > sample_steps.back()) {
      sample_steps.push_back(idx);
    }
  }

  std::vector<ObservableSet> trajectory;
  trajectory.reserve(sample_steps.size());
  size_t next_sample = 0;
  if (next_sample < sample_steps.size() && sample_steps[next_sample] == 0) {
    trajectory.push_back(measure(stepper, proj, 0.0, stepper.dx()));
    ++next_sample;
  }
  for (int step = 0; step < n_steps; ++step) {
    const double t_mid = (step + 0.5) * h;
    stepper.step_real(drive.f_x(t_mid), drive.V_c(t_mid));
    if (next_sample < sample_steps.size() &&
        sample_steps[next_sample] == step + 1) {
      const double norm_err = std::abs(std::sqrt(stepper.norm_sq()) - 1.0);
      if (norm_err > 1e-9) {
        throw std::runtime_error("norm drift exceeded 1e-9: " +
                                 std::to_string(norm_err));
      }
      trajectory.push_back(
          measure(stepper, proj, (step + 1) * h, stepper.dx()));
      ++next_sample;
    }
  }
  stepper.store(psi);
  return trajectory;
}

}  // namespace orbital
