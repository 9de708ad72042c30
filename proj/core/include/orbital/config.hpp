#pragma once

#include <optional>
#include <string>

#include "orbital/lattice.hpp"

namespace orbital {

/// User-facing run parameters. Times are in units of 1/omega and the
/// detuning in units of omega, matching the reporting conventions.
struct RunConfig {
  double depth_hbar_omega = 3.0;  // v
  int grid_n = 128;
  double total_time = 750.0;      // omega * T
  double switch_fraction = 0.25;  // t_S / T
  double drive_detuning = 0.0;    // (omega_x - omega_d) / omega
  double dt_factor = 0.05;        // omega_x * dt for the 2D stepper
  std::optional<LabData> lab;

  void validate() const;
};

/// Load a JSON config file with keys depth_hbar_omega, grid_n, total_time,
/// switch_fraction, drive_detuning, dt_factor, lab.wavelength_nm,
/// lab.species. Missing keys keep their defaults.
RunConfig load_run_config(const std::string& path);

/// Serialize back to JSON (round-trip stable).
std::string run_config_to_json(const RunConfig& config);

}  // namespace orbital
