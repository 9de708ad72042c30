#pragma once

#include <map>
#include <string>
#include <vector>

#include "orbital/config.hpp"
#include "orbital/fit.hpp"
#include "orbital/model4l.hpp"
#include "orbital/tdse2d.hpp"
#include "orbital/tunneling.hpp"

namespace orbital {

inline constexpr const char* kVersion = "0.1.0";

struct Assertion {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Figure-level result container. Rows are plot-ready CSV data; the summary
/// carries scalar results and is round-trippable through JSON.
struct RunReport {
  std::string scenario;
  RunConfig config;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::map<std::string, double> summary;
  std::map<std::string, std::string> notes;
  std::vector<Assertion> assertions;
  // provenance
  int grid_n = 0;
  double dt_natural = 0.0;
  std::string version = kVersion;

  bool all_assertions_pass() const;
};

/// Write <out_dir>/<scenario>.csv and <out_dir>/<scenario>_summary.json.
/// Output is deterministic: identical reports produce identical bytes.
void emit_report(const RunReport& report, const std::string& out_dir);

/// Read back the summary values of an emitted report.
std::map<std::string, double> parse_summary(const std::string& json_path);

/// One full-profile run: RWA model and 2D solver on identical schedules.
struct PairedRun {
  std::vector<double> times_w;           // sample times, units 1/omega
  FourLevelTrajectory model;             // same sample instants
  std::vector<ObservableSet> full;
  CouplingSet couplings;
  double omega = 0.0;
  double omega_d = 0.0;
  double dt_natural = 0.0;
  double final_fidelity_full = 0.0;
  double final_fidelity_model = 0.0;
  double max_leakage = 0.0;
  double max_p22_full = 0.0;
  double max_p40 = 0.0;
  double max_p40_time_w = 0.0;           // when the |40> loss peaks
  double sup_population_gap = 0.0;       // model vs full, all four levels
};
PairedRun run_paired(const RunConfig& config, int samples = 751);

/// Fig.5/Fig.7-style scenario: paired population curves plus the loss
/// decomposition (total, non-|40>, |40> share).
RunReport run_population_scenario(const RunConfig& config);

/// Fidelity against the switch time t_S (full solver).
RunReport run_ts_sweep(const RunConfig& base,
                       const std::vector<double>& ts_fractions);

/// Fidelity matrix over lattice depth and total time (full solver).
RunReport run_time_depth_sweep(const std::vector<double>& depths,
                               const std::vector<double>& total_times,
                               const RunConfig& base);

/// Resonance curve: fidelity against drive detuning for the full solver and
/// the detuned RWA model, with sinc^2 / Gaussian / Lorentzian fits.
RunReport run_resonance_scan(const RunConfig& base,
                             const std::vector<double>& detunings_w);

/// Band-2 tunneling-rate estimates; horizon in units of 1/omega.
RunReport run_tunneling_scenario(const RunConfig& base, double horizon_w,
                                 int n_cells = 3);

/// Worker count for embarrassingly parallel sweeps: ORBITAL_FORGE_THREADS
/// or hardware concurrency.
int worker_count();

}  // namespace orbital
