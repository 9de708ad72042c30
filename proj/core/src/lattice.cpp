#include "orbital/lattice.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace orbital {

double species_mass_kg(const std::string& species) {
  static const std::unordered_map<std::string, double> kMassU = {
      {"6Li", 6.015122795},   {"7Li", 7.01600455},
      {"23Na", 22.9897692820}, {"39K", 38.963706679},
      {"40K", 39.963998475},  {"87Rb", 86.909180527},
      {"133Cs", 132.905451931}, {"168Er", 167.932370},
      {"174Yb", 173.9388621},
  };
  auto it = kMassU.find(species);
  if (it == kMassU.end()) {
    throw std::invalid_argument("unknown atomic species: " + species);
  }
  return it->second * kAtomicMassUnit;
}

void LatticeConfig::validate() const {
  if (!(v > 0.0)) {
    throw std::invalid_argument("lattice depth v must be positive");
  }
  if (!(V0 > 0.0) || std::abs(V0 - 2.0 * v * v) > 1e-12 * V0) {
    throw std::invalid_argument("V0 must equal 2 v^2 in natural units");
  }
  if (std::abs(omega - std::sqrt(2.0 * V0)) > 1e-12 * omega) {
    throw std::invalid_argument("omega must equal sqrt(2 V0)");
  }
  if (std::abs(k_s - std::numbers::sqrt2 * k) > 1e-12) {
    throw std::invalid_argument("k_s must equal sqrt(2) k");
  }
}

LatticeConfig derive_units(double v, std::optional<LabData> lab) {
  if (!(v > 0.0)) {
    throw std::invalid_argument("lattice depth v must be positive");
  }
  LatticeConfig config;
  config.v = v;
  config.V0 = 2.0 * v * v;
  config.omega = std::sqrt(2.0 * config.V0);  // = 2 v
  config.k = 1.0;
  config.k_s = std::numbers::sqrt2;
  config.ell = std::numbers::pi / 2.0;
  config.lab = std::move(lab);
  return config;
}

PhysicalDrive PhysicalDrive::off(double duration) {
  PhysicalDrive drive;
  auto zero = [](double) { return 0.0; };
  drive.f_x = zero;
  drive.V_c = zero;
  drive.f_x_integral = zero;
  drive.V_c_integral = zero;
  drive.g_x_env = zero;
  drive.omega_x = 0.0;
  drive.duration = duration;
  return drive;
}

double static_potential(double x, double y, const LatticeConfig& config) {
  const double sx = std::sin(config.k * x);
  const double sy = std::sin(config.k * y);
  return config.V0 * (sx * sx + sy * sy);
}

double potential(double x, double y, double t, const LatticeConfig& config,
                 const PhysicalDrive& drive) {
  const double sx = std::sin(config.k * x);
  const double sy = std::sin(config.k * y);
  return (config.V0 + drive.f_x(t)) * sx * sx + config.V0 * sy * sy -
         drive.V_c(t) * std::cos(2.0 * config.k * x) *
             std::cos(2.0 * config.k * y);
}

double natural_energy_joules(const LatticeConfig& config) {
  if (!config.lab) {
    throw std::invalid_argument("lab data required for unit conversion");
  }
  const double k_lab = 2.0 * std::numbers::pi / config.lab->wavelength_m;
  return kHbar * kHbar * k_lab * k_lab / config.lab->atom_mass_kg;
}

double natural_time_seconds(const LatticeConfig& config) {
  return kHbar / natural_energy_joules(config);
}

LabReport to_experimental(const LatticeConfig& config, double omega_d_natural,
                          double duration_natural) {
  const double tau = natural_time_seconds(config);
  LabReport report;
  report.f_drive_hz = omega_d_natural / tau / (2.0 * std::numbers::pi);
  report.t_ms = duration_natural * tau * 1e3;
  report.depth_recoils = config.V0 / 0.5;  // E_r = hbar^2 k^2 / 2m = 1/2
  return report;
}

NaturalInputs from_experimental(const LatticeConfig& config, double f_drive_hz,
                                double t_ms) {
  const double tau = natural_time_seconds(config);
  NaturalInputs in;
  in.omega_d_natural = f_drive_hz * 2.0 * std::numbers::pi * tau;
  in.duration_natural = t_ms * 1e-3 / tau;
  return in;
}

}  // namespace orbital
