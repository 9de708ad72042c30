// orbital-forge: design amplitude-modulation pulse sequences for a 2D
// optical lattice and verify them with a four-level model and a full
// split-operator Schroedinger solver. Subcommands emit plot-ready CSV plus a
// JSON summary; the exit code is 0 only if all scenario assertions pass.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orbital/experiments.hpp"
#include "orbital/pulses.hpp"

namespace {

using namespace orbital;

struct CommonOptions {
  std::string config_path;
  std::string out_dir = "out";
  double depth = std::nan("");
  double total_time = std::nan("");
  double ts_fraction = std::nan("");
  double detuning = std::nan("");
  double dt_factor = std::nan("");
  int grid = -1;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--config", opt.config_path, "JSON config file");
  cmd->add_option("--out", opt.out_dir, "output directory");
  cmd->add_option("--depth", opt.depth, "lattice depth in units of hbar*omega");
  cmd->add_option("--total-time", opt.total_time, "total time in units of 1/omega");
  cmd->add_option("--ts-fraction", opt.ts_fraction, "switch time fraction t_S/T");
  cmd->add_option("--detuning", opt.detuning,
                  "(omega_x - omega_d)/omega drive detuning");
  cmd->add_option("--grid", opt.grid, "grid points per axis (power of two)");
  cmd->add_option("--dt-factor", opt.dt_factor, "omega_x * dt for the 2D stepper");
}

RunConfig resolve_config(const CommonOptions& opt) {
  RunConfig config;
  if (!opt.config_path.empty()) {
    config = load_run_config(opt.config_path);
  }
  if (!std::isnan(opt.depth)) config.depth_hbar_omega = opt.depth;
  if (!std::isnan(opt.total_time)) config.total_time = opt.total_time;
  if (!std::isnan(opt.ts_fraction)) config.switch_fraction = opt.ts_fraction;
  if (!std::isnan(opt.detuning)) config.drive_detuning = opt.detuning;
  if (!std::isnan(opt.dt_factor)) config.dt_factor = opt.dt_factor;
  if (opt.grid > 0) config.grid_n = opt.grid;
  config.validate();
  return config;
}

std::string format_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int finish(const RunReport& report, const std::string& out_dir) {
  emit_report(report, out_dir);
  std::cout << report.scenario << ": wrote " << out_dir << "/"
            << report.scenario << ".csv\n";
  for (const auto& [key, value] : report.summary) {
    std::cout << "  " << key << " = " << format_g(value) << "\n";
  }
  bool ok = true;
  for (const auto& a : report.assertions) {
    std::cout << "  [assert] " << a.name << ": "
              << (a.passed ? "PASS" : "FAIL") << " (" << a.detail << ")\n";
    ok = ok && a.passed;
  }
  return ok ? 0 : 1;
}

void write_csv(const std::string& path, const std::vector<std::string>& cols,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_g(row[i]);
    }
    out << "\n";
  }
}

int cmd_eigs(const CommonOptions& opt, int n_states, bool dump_states) {
  const RunConfig run = resolve_config(opt);
  const LatticeConfig config = derive_units(run.depth_hbar_omega);
  const EigenBasis1D basis = solve_site_states(config, 512, n_states);

  std::filesystem::create_directories(opt.out_dir);
  std::vector<std::vector<double>> rows;
  for (int n = 0; n < basis.size(); ++n) {
    rows.push_back({static_cast<double>(n), basis.energies(n) / config.omega,
                    basis.parities[n] == Parity::Even ? 0.0 : 1.0});
  }
  write_csv(opt.out_dir + "/eigs.csv", {"n", "E_n", "parity_odd"}, rows);

  RunReport report;
  report.scenario = "eigs";
  report.config = run;
  report.grid_n = run.grid_n;
  report.summary["omega_d"] = basis.omega_d / config.omega;
  report.summary["omega_d_over_2omega"] = basis.omega_d / (2.0 * config.omega);
  report.summary["bound_states"] =
      static_cast<double>(count_bound_states(basis, config));

  if (dump_states) {
    std::vector<std::string> cols = {"x"};
    for (int n = 0; n < basis.size(); ++n) cols.push_back("Gamma" + std::to_string(n));
    std::vector<std::vector<double>> samples;
    for (Eigen::Index i = 0; i < basis.grid.size(); ++i) {
      std::vector<double> row = {basis.grid(i)};
      for (int n = 0; n < basis.size(); ++n) row.push_back(basis.gammas[n](i));
      samples.push_back(std::move(row));
    }
    write_csv(opt.out_dir + "/site_states.csv", cols, samples);
  }
  return finish(report, opt.out_dir);
}

int cmd_couplings(const CommonOptions& opt, std::vector<double> depths) {
  if (depths.empty()) {
    for (double v = 2.0; v <= 8.0 + 1e-9; v += 0.25) depths.push_back(v);
  }
  std::vector<std::vector<double>> rows;
  for (double v : depths) {
    const LatticeConfig config = derive_units(v);
    const EigenBasis1D basis = solve_site_states(config, 512, 6);
    const CouplingSet cs = compute_overlaps(basis);
    rows.push_back({v, cs.alpha0, cs.alpha2, cs.beta0, cs.beta2, cs.gamma0,
                    cs.gamma1, cs.gamma2, cs.gamma3, cs.A02 * config.omega,
                    cs.omega_d / config.omega});
  }
  std::filesystem::create_directories(opt.out_dir);
  write_csv(opt.out_dir + "/couplings.csv",
            {"v", "alpha0", "alpha2", "beta0", "beta2", "gamma0", "gamma1",
             "gamma2", "gamma3", "A02", "omega_d_over_omega"},
            rows);
  std::cout << "couplings: wrote " << opt.out_dir << "/couplings.csv ("
            << rows.size() << " depths)\n";
  return 0;
}

int cmd_pulse(const CommonOptions& opt, int samples) {
  const RunConfig run = resolve_config(opt);
  const LatticeConfig config = derive_units(run.depth_hbar_omega);
  const EigenBasis1D basis = solve_site_states(config, 512, 6);
  const CouplingSet cs = compute_overlaps(basis);
  const double omega = config.omega;
  const double total = run.total_time / omega;
  const PulseSchedule schedule =
      make_sequential_schedule(total, run.switch_fraction * total);
  const PhysicalDrive drive =
      to_physical(schedule, cs, cs.omega_d + run.drive_detuning * omega);

  std::vector<std::vector<double>> rows;
  for (int i = 0; i < samples; ++i) {
    const double t = total * i / (samples - 1);
    rows.push_back({t * omega, schedule.omega_x_env(t) / omega,
                    schedule.omega_c_env(t) / omega, drive.f_x(t) / omega,
                    drive.V_c(t) / omega});
  }
  std::filesystem::create_directories(opt.out_dir);
  write_csv(opt.out_dir + "/pulse.csv",
            {"t", "Omega_x", "Omega_c", "f_x", "V_c"}, rows);
  std::cout << "pulse: wrote " << opt.out_dir << "/pulse.csv\n";
  return 0;
}

int cmd_sim4l(const CommonOptions& opt, const std::string& model, int samples) {
  const RunConfig run = resolve_config(opt);
  const LatticeConfig config = derive_units(run.depth_hbar_omega);
  const EigenBasis1D basis = solve_site_states(config, 512, 6);
  const CouplingSet cs = compute_overlaps(basis);
  const double omega = config.omega;
  const double total = run.total_time / omega;
  const double detuning = run.drive_detuning * omega;
  const double omega_x = cs.omega_d + detuning;
  const PulseSchedule schedule =
      make_sequential_schedule(total, run.switch_fraction * total);

  std::vector<double> times(samples);
  for (int i = 0; i < samples; ++i) times[i] = total * i / (samples - 1);

  HamiltonianBuilder builder;
  PropagateOptions options;
  if (model == "rwa") {
    builder = [schedule, detuning, cs](double t) {
      return build_h4l(schedule, detuning, cs, t);
    };
    options.dt = total / 40000.0;
  } else if (model == "pre-rwa") {
    const PhysicalDrive drive = to_physical(schedule, cs, omega_x);
    builder = [drive, cs](double t) {
      return build_pre_rwa(drive, cs, cs.omega_d, t);
    };
    options.dt = std::min(total / 40000.0, 0.02 / omega_x);
  } else {
    std::cerr << "unknown model " << model << " (use rwa or pre-rwa)\n";
    return 2;
  }
  const FourLevelTrajectory traj =
      propagate_4l(builder, ground_state_4l(), times, options);

  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const auto& p = traj.populations[i];
    rows.push_back({traj.times[i] * omega, p[0], p[1], p[2], p[3],
                    traj.fidelity_to_target[i]});
  }
  std::filesystem::create_directories(opt.out_dir);
  write_csv(opt.out_dir + "/sim4l.csv",
            {"t", "P00", "P20", "P02", "P22", "fidelity"}, rows);
  std::cout << "sim4l(" << model << "): final fidelity = "
            << format_g(traj.fidelity_to_target.back()) << "\n";
  return 0;
}

int cmd_sim2d(const CommonOptions& opt) {
  const RunConfig run = resolve_config(opt);
  const PairedRun paired = run_paired(run);

  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < paired.full.size(); ++i) {
    const ObservableSet& o = paired.full[i];
    rows.push_back({paired.times_w[i], o.p00, o.p20, o.p02, o.p22, o.p40,
                    o.p04, o.leakage, o.fidelity, o.lz});
  }
  std::filesystem::create_directories(opt.out_dir);
  write_csv(opt.out_dir + "/sim2d.csv",
            {"t", "P00", "P20", "P02", "P22", "P40", "P04", "leakage",
             "fidelity", "Lz"},
            rows);
  std::cout << "sim2d: final fidelity = "
            << format_g(paired.final_fidelity_full)
            << ", max leakage = " << format_g(paired.max_leakage) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pulse-sequence design and verification for higher-orbital lattice "
      "states"};
  app.require_subcommand(1);

  CommonOptions eigs_opt;
  int eigs_states = 6;
  bool eigs_dump = false;
  CLI::App* eigs = app.add_subcommand("eigs", "1D site eigenstates and omega_d");
  add_common(eigs, eigs_opt);
  eigs->add_option("--states", eigs_states, "number of states");
  eigs->add_flag("--dump-states", eigs_dump, "write sampled eigenfunctions");

  CommonOptions coup_opt;
  std::vector<double> coup_depths;
  CLI::App* coup = app.add_subcommand("couplings", "coupling scalars over a depth scan");
  add_common(coup, coup_opt);
  coup->add_option("--depths", coup_depths, "depth values v");

  CommonOptions pulse_opt;
  int pulse_samples = 1501;
  CLI::App* pulse = app.add_subcommand("pulse", "Rabi envelopes and lab-frame drives");
  add_common(pulse, pulse_opt);
  pulse->add_option("--samples", pulse_samples, "number of output samples");

  CommonOptions sim4l_opt;
  std::string sim4l_model = "rwa";
  int sim4l_samples = 751;
  CLI::App* sim4l = app.add_subcommand("sim4l", "four-level model dynamics");
  add_common(sim4l, sim4l_opt);
  sim4l->add_option("--model", sim4l_model, "rwa or pre-rwa");
  sim4l->add_option("--samples", sim4l_samples, "number of output samples");

  CommonOptions sim2d_opt;
  CLI::App* sim2d = app.add_subcommand("sim2d", "full 2D split-operator run");
  add_common(sim2d, sim2d_opt);

  CommonOptions ts_opt;
  std::vector<double> ts_grid;
  CLI::App* sweep_ts = app.add_subcommand("sweep-ts", "fidelity against switch time");
  add_common(sweep_ts, ts_opt);
  sweep_ts->add_option("--ts", ts_grid, "switch-time fractions");

  CommonOptions tv_opt;
  std::vector<double> tv_depths, tv_times;
  CLI::App* sweep_tv = app.add_subcommand("sweep-tv", "fidelity against depth and total time");
  add_common(sweep_tv, tv_opt);
  sweep_tv->add_option("--depths", tv_depths, "depth values v");
  sweep_tv->add_option("--times", tv_times, "total times in 1/omega");

  CommonOptions res_opt;
  double res_span = 0.03;
  int res_points = 31;
  CLI::App* resonance = app.add_subcommand("resonance", "fidelity against drive detuning");
  add_common(resonance, res_opt);
  resonance->add_option("--span", res_span, "half-width of the detuning scan");
  resonance->add_option("--points", res_points, "number of scan points");

  CommonOptions tun_opt;
  double tun_horizon = 4000.0;
  int tun_cells = 3;
  CLI::App* tunneling = app.add_subcommand("tunneling", "band-2 tunneling rate estimates");
  add_common(tunneling, tun_opt);
  tunneling->add_option("--horizon", tun_horizon, "propagation horizon in 1/omega");
  tunneling->add_option("--cells", tun_cells, "number of lattice cells (odd)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (eigs->parsed()) return cmd_eigs(eigs_opt, eigs_states, eigs_dump);
    if (coup->parsed()) return cmd_couplings(coup_opt, coup_depths);
    if (pulse->parsed()) return cmd_pulse(pulse_opt, pulse_samples);
    if (sim4l->parsed()) return cmd_sim4l(sim4l_opt, sim4l_model, sim4l_samples);
    if (sim2d->parsed()) return cmd_sim2d(sim2d_opt);
    if (sweep_ts->parsed()) {
      if (ts_grid.empty()) {
        for (double f = 0.1; f <= 0.9 + 1e-9; f += 0.1) ts_grid.push_back(f);
      }
      return finish(run_ts_sweep(resolve_config(ts_opt), ts_grid),
                    ts_opt.out_dir);
    }
    if (sweep_tv->parsed()) {
      if (tv_depths.empty()) tv_depths = {2.5, 3.0, 3.5, 4.0};
      if (tv_times.empty()) tv_times = {250.0, 375.0, 500.0, 625.0, 750.0};
      return finish(
          run_time_depth_sweep(tv_depths, tv_times, resolve_config(tv_opt)),
          tv_opt.out_dir);
    }
    if (resonance->parsed()) {
      std::vector<double> detunings;
      for (int i = 0; i < res_points; ++i) {
        detunings.push_back(-res_span +
                            2.0 * res_span * i / (res_points - 1));
      }
      return finish(run_resonance_scan(resolve_config(res_opt), detunings),
                    res_opt.out_dir);
    }
    if (tunneling->parsed()) {
      return finish(run_tunneling_scenario(resolve_config(tun_opt),
                                           tun_horizon, tun_cells),
                    tun_opt.out_dir);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
