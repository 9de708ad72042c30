#pragma once

#include <functional>
#include <optional>
#include <string>

namespace orbital {

/// Physical constants (SI).
inline constexpr double kHbar = 1.054571817e-34;         // J s
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg

/// Lab-frame data needed to convert natural units to experimental ones.
struct LabData {
  double wavelength_m = 0.0;   // primary-lattice wavelength
  double atom_mass_kg = 0.0;
};

/// Resolve a species tag like "133Cs" to its atomic mass in kg.
/// Throws std::invalid_argument for unknown species.
double species_mass_kg(const std::string& species);

/// Dimensionless lattice parameters in natural units (hbar = m = k = 1).
///
/// Times are measured internally in these natural units; user-facing
/// quantities are reported in units of 1/omega (times) and hbar*omega
/// (energies) to match the usual optical-lattice conventions.
struct LatticeConfig {
  double v = 0.0;       // depth in units of hbar*omega
  double V0 = 0.0;      // depth in natural energy units
  double omega = 0.0;   // harmonic-approximation frequency, = sqrt(2 V0)
  double k = 1.0;       // primary wavenumber (fixed)
  double k_s = 0.0;     // rotated-lattice wavenumber, = sqrt(2) k
  double ell = 0.0;     // lattice constant lambda/4 = pi/2
  std::optional<LabData> lab;

  void validate() const;  // throws std::invalid_argument on violation
};

/// Time-dependent drive in the lab frame.
///
/// f_x modulates the primary-lattice amplitude along x; V_c is the
/// (nonnegative) amplitude of the rotated lattice. The running integrals
/// are exact antiderivatives, not numerical quadratures, so phase factors
/// built from them carry no integration error.
struct PhysicalDrive {
  std::function<double(double)> f_x;           // energy
  std::function<double(double)> V_c;           // energy, >= 0
  std::function<double(double)> f_x_integral;  // \int_0^t f_x
  std::function<double(double)> V_c_integral;  // \int_0^t V_c
  std::function<double(double)> g_x_env;       // slow envelope: f_x = g_x cos(omega_x t)
  double omega_x = 0.0;                        // carrier frequency
  double duration = 0.0;

  /// Drive that is identically zero (static lattice).
  static PhysicalDrive off(double duration);
};

/// Build the natural-unit configuration from the depth v = V0/(hbar*omega).
LatticeConfig derive_units(double v, std::optional<LabData> lab = std::nullopt);

/// Lattice potential at (x, y, t) with the global +V_c(t) offset dropped:
///   [V0 + f_x(t)] sin^2(kx) + V0 sin^2(ky) - V_c(t) cos(2kx) cos(2ky)
double potential(double x, double y, double t, const LatticeConfig& config,
                 const PhysicalDrive& drive);

/// Static part of the potential (drive off).
double static_potential(double x, double y, const LatticeConfig& config);

/// Experimental-unit report for a given drive frequency and duration.
struct LabReport {
  double f_drive_hz = 0.0;      // omega_d / 2 pi
  double t_ms = 0.0;
  double depth_recoils = 0.0;   // V0 / E_r
};

/// Natural energy unit in joules: hbar^2 k_lab^2 / m.
double natural_energy_joules(const LatticeConfig& config);
/// Natural time unit in seconds: hbar / natural_energy.
double natural_time_seconds(const LatticeConfig& config);

/// Convert a natural-unit drive frequency and duration to lab units.
/// Throws std::invalid_argument if config.lab is missing.
LabReport to_experimental(const LatticeConfig& config, double omega_d_natural,
                          double duration_natural);

/// Inverse of to_experimental for round-trip checks.
struct NaturalInputs {
  double omega_d_natural = 0.0;
  double duration_natural = 0.0;
};
NaturalInputs from_experimental(const LatticeConfig& config, double f_drive_hz,
                                double t_ms);

}  // namespace orbital
