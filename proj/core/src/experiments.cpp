#include "orbital/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "orbital/pulses.hpp"

namespace orbital {
namespace {

struct SolvedLattice {
  LatticeConfig config;
  EigenBasis1D basis;
  CouplingSet couplings;
};

// Depth-keyed caches: sweeps revisit the same lattice many times and the
// eigenbasis / imaginary-time ground state are the expensive parts.
const SolvedLattice& solved_lattice(double v) {
  static std::mutex mutex;
  static std::map<double, std::unique_ptr<SolvedLattice>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(v);
  if (it == cache.end()) {
    auto solved = std::make_unique<SolvedLattice>();
    solved->config = derive_units(v);
    solved->basis = solve_site_states(solved->config, 512, 6);
    solved->couplings = compute_overlaps(solved->basis);
    it = cache.emplace(v, std::move(solved)).first;
  }
  return *it->second;
}

const WaveField2D& cached_ground_state(double v, int grid_n) {
  static std::mutex mutex;
  static std::map<std::pair<double, int>, std::unique_ptr<WaveField2D>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(v, grid_n);
  auto it = cache.find(key);
  if (it == cache.end()) {
    const LatticeConfig config = derive_units(v);
    auto field = std::make_unique<WaveField2D>(
        ground_state_imaginary_time(config, grid_n, 1e-8));
    it = cache.emplace(key, std::move(field)).first;
  }
  return *it->second;
}

void parallel_for(int n, const std::function<void(int)>& body) {
  const int workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

bool is_full_profile(const RunConfig& config) {
  return config.grid_n >= 128 && config.total_time >= 750.0 - 1e-9 &&
         config.dt_factor <= 0.05 + 1e-12;
}

void push_assertion(RunReport& report, const std::string& name, bool passed,
                    const std::string& detail) {
  report.assertions.push_back({name, passed, detail});
}

}  // namespace

int worker_count() {
  if (const char* env = std::getenv("ORBITAL_FORGE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

bool RunReport::all_assertions_pass() const {
  for (const auto& a : assertions) {
    if (!a.passed) return false;
  }
  return true;
}

PairedRun run_paired(const RunConfig& run_config, int samples) {
  run_config.validate();
  const SolvedLattice& lattice = solved_lattice(run_config.depth_hbar_omega);
  const double omega = lattice.config.omega;
  const double omega_d = lattice.couplings.omega_d;

  const double total_natural = run_config.total_time / omega;
  const double switch_natural = run_config.switch_fraction * total_natural;
  const double detuning_natural = run_config.drive_detuning * omega;
  const double omega_x = omega_d + detuning_natural;

  const PulseSchedule schedule =
      make_sequential_schedule(total_natural, switch_natural);
  const PhysicalDrive drive = to_physical(schedule, lattice.couplings, omega_x);

  std::vector<double> times(samples);
  for (int i = 0; i < samples; ++i) {
    times[i] = total_natural * i / (samples - 1);
  }

  PairedRun run;
  run.couplings = lattice.couplings;
  run.omega = omega;
  run.omega_d = omega_d;
  run.times_w.resize(samples);
  for (int i = 0; i < samples; ++i) run.times_w[i] = times[i] * omega;

  HamiltonianBuilder rwa = [schedule, detuning_natural,
                            couplings = lattice.couplings](double t) {
    return build_h4l(schedule, detuning_natural, couplings, t);
  };
  PropagateOptions options;
  options.dt = total_natural / 40000.0;
  run.model = propagate_4l(rwa, ground_state_4l(), times, options);

  WaveField2D psi = cached_ground_state(run_config.depth_hbar_omega,
                                        run_config.grid_n);
  run.dt_natural = run_config.dt_factor / omega_x;
  run.full = propagate_split_operator(psi, drive, lattice.config,
                                      lattice.basis, run.dt_natural,
                                      total_natural, times);

  run.final_fidelity_full = run.full.back().fidelity;
  run.final_fidelity_model = run.model.fidelity_to_target.back();
  for (const ObservableSet& obs : run.full) {
    run.max_leakage = std::max(run.max_leakage, obs.leakage);
    run.max_p22_full = std::max(run.max_p22_full, obs.p22);
    if (obs.p40 > run.max_p40) {
      run.max_p40 = obs.p40;
      run.max_p40_time_w = obs.t * omega;
    }
  }
  const size_t count =
      std::min(run.full.size(), run.model.populations.size());
  for (size_t i = 0; i < count; ++i) {
    const auto& m = run.model.populations[i];
    const ObservableSet& f = run.full[i];
    const double gap =
        std::max({std::abs(m[0] - f.p00), std::abs(m[1] - f.p20),
                  std::abs(m[2] - f.p02), std::abs(m[3] - f.p22)});
    run.sup_population_gap = std::max(run.sup_population_gap, gap);
  }
  return run;
}

RunReport run_population_scenario(const RunConfig& config) {
  const PairedRun run = run_paired(config);

  RunReport report;
  report.scenario = "population";
  report.config = config;
  report.grid_n = config.grid_n;
  report.dt_natural = run.dt_natural;
  report.columns = {"t",          "model_P00",   "model_P20", "model_P02",
                    "model_P22",  "model_fidelity", "P00",    "P20",
                    "P02",        "P22",         "P40",       "P04",
                    "leakage",    "loss_non40",  "fidelity",  "Lz"};
  const size_t count = std::min(run.full.size(), run.model.populations.size());
  for (size_t i = 0; i < count; ++i) {
    const auto& m = run.model.populations[i];
    const ObservableSet& f = run.full[i];
    report.rows.push_back({run.times_w[i], m[0], m[1], m[2], m[3],
                           run.model.fidelity_to_target[i], f.p00, f.p20,
                           f.p02, f.p22, f.p40, f.p04, f.leakage,
                           f.leakage - f.p40, f.fidelity, f.lz});
  }
  report.summary["final_fidelity"] = run.final_fidelity_full;
  report.summary["final_fidelity_model"] = run.final_fidelity_model;
  report.summary["max_leakage"] = run.max_leakage;
  report.summary["max_P22"] = run.max_p22_full;
  report.summary["max_P40"] = run.max_p40;
  report.summary["max_P40_time"] = run.max_p40_time_w;
  report.summary["sup_population_gap"] = run.sup_population_gap;
  report.summary["omega_d_over_omega"] = run.omega_d / run.omega;
  report.notes["offset_convention"] =
      "global +V_c(t) energy offset dropped from the potential";
  report.notes["time_unit"] = "1/omega";

  if (is_full_profile(config) && config.depth_hbar_omega == 3.0) {
    push_assertion(report, "leakage_below_0.02", run.max_leakage < 0.02,
                   format_double(run.max_leakage));
    push_assertion(report, "P22_below_1e-6", run.max_p22_full < 1e-6,
                   format_double(run.max_p22_full));
    push_assertion(report, "final_fidelity_above_0.96",
                   run.final_fidelity_full > 0.96,
                   format_double(run.final_fidelity_full));
  }
  return report;
}

RunReport run_ts_sweep(const RunConfig& base,
                       const std::vector<double>& ts_fractions) {
  if (ts_fractions.empty()) {
    throw std::invalid_argument("ts sweep needs a nonempty grid");
  }
  // Warm shared caches before going parallel.
  solved_lattice(base.depth_hbar_omega);
  cached_ground_state(base.depth_hbar_omega, base.grid_n);

  std::vector<double> fidelity_full(ts_fractions.size());
  std::vector<double> fidelity_model(ts_fractions.size());
  parallel_for(static_cast<int>(ts_fractions.size()), [&](int i) {
    RunConfig config = base;
    config.switch_fraction = ts_fractions[i];
    const PairedRun run = run_paired(config, 101);
    fidelity_full[i] = run.final_fidelity_full;
    fidelity_model[i] = run.final_fidelity_model;
  });

  RunReport report;
  report.scenario = "sweep-ts";
  report.config = base;
  report.grid_n = base.grid_n;
  report.columns = {"ts_fraction", "fidelity", "fidelity_model"};
  double best = -1.0, worst = 2.0, best_ts = 0.0;
  for (size_t i = 0; i < ts_fractions.size(); ++i) {
    report.rows.push_back(
        {ts_fractions[i], fidelity_full[i], fidelity_model[i]});
    if (fidelity_full[i] > best) {
      best = fidelity_full[i];
      best_ts = ts_fractions[i];
    }
    worst = std::min(worst, fidelity_full[i]);
  }
  report.summary["best_ts_fraction"] = best_ts;
  report.summary["best_fidelity"] = best;
  report.summary["worst_fidelity"] = worst;
  report.summary["fidelity_spread"] = best - worst;

  if (is_full_profile(base) && base.depth_hbar_omega == 3.0) {
    push_assertion(report, "all_points_above_0.96", worst > 0.96,
                   format_double(worst));
    push_assertion(report, "spread_below_0.04", best - worst < 0.04,
                   format_double(best - worst));
  }
  return report;
}

RunReport run_time_depth_sweep(const std::vector<double>& depths,
                               const std::vector<double>& total_times,
                               const RunConfig& base) {
  if (depths.empty() || total_times.empty()) {
    throw std::invalid_argument("depth/time sweep needs nonempty lists");
  }
  for (double v : depths) {
    solved_lattice(v);
    cached_ground_state(v, base.grid_n);
  }

  const int n_jobs = static_cast<int>(depths.size() * total_times.size());
  std::vector<double> fidelities(n_jobs);
  parallel_for(n_jobs, [&](int job) {
    const size_t iv = job / total_times.size();
    const size_t it = job % total_times.size();
    RunConfig config = base;
    config.depth_hbar_omega = depths[iv];
    config.total_time = total_times[it];
    const PairedRun run = run_paired(config, 51);
    fidelities[job] = run.final_fidelity_full;
  });

  RunReport report;
  report.scenario = "sweep-tv";
  report.config = base;
  report.grid_n = base.grid_n;
  report.columns = {"depth", "total_time", "fidelity"};
  auto fidelity_at = [&](double v, double t) -> const double* {
    for (size_t iv = 0; iv < depths.size(); ++iv) {
      for (size_t it = 0; it < total_times.size(); ++it) {
        if (depths[iv] == v && total_times[it] == t) {
          return &fidelities[iv * total_times.size() + it];
        }
      }
    }
    return nullptr;
  };
  for (size_t iv = 0; iv < depths.size(); ++iv) {
    for (size_t it = 0; it < total_times.size(); ++it) {
      report.rows.push_back({depths[iv], total_times[it],
                             fidelities[iv * total_times.size() + it]});
    }
  }
  report.summary["n_depths"] = static_cast<double>(depths.size());
  report.summary["n_times"] = static_cast<double>(total_times.size());

  const double* f30 = fidelity_at(3.0, 750.0);
  const double* f40 = fidelity_at(4.0, 750.0);
  const double* f25 = fidelity_at(2.5, 750.0);
  if (f30 && f40) {
    report.summary["fidelity_v3_T750"] = *f30;
    report.summary["fidelity_v4_T750"] = *f40;
    push_assertion(report, "depth_3.0_beats_4.0", *f30 > *f40,
                   format_double(*f30 - *f40));
  }
  if (f30 && f25) {
    report.summary["fidelity_v2.5_T750"] = *f25;
    push_assertion(report, "depth_3.0_beats_2.5", *f30 > *f25,
                   format_double(*f30 - *f25));
  }
  return report;
}

RunReport run_resonance_scan(const RunConfig& base,
                             const std::vector<double>& detunings_w) {
  if (detunings_w.size() < 7) {
    throw std::invalid_argument(
        "resonance scan needs at least 7 detuning points");
  }
  double span_lo = 0.0, span_hi = 0.0;
  for (double d : detunings_w) {
    span_lo = std::min(span_lo, d);
    span_hi = std::max(span_hi, d);
  }
  if (!(span_lo < 0.0) || !(span_hi > 0.0)) {
    throw std::invalid_argument("detuning grid must straddle resonance");
  }
  solved_lattice(base.depth_hbar_omega);
  cached_ground_state(base.depth_hbar_omega, base.grid_n);

  std::vector<double> fidelity_full(detunings_w.size());
  std::vector<double> fidelity_model(detunings_w.size());
  parallel_for(static_cast<int>(detunings_w.size()), [&](int i) {
    RunConfig config = base;
    config.drive_detuning = detunings_w[i];
    const PairedRun run = run_paired(config, 51);
    fidelity_full[i] = run.final_fidelity_full;
    fidelity_model[i] = run.final_fidelity_model;
  });

  RunReport report;
  report.scenario = "resonance";
  report.config = base;
  report.grid_n = base.grid_n;
  report.columns = {"detuning", "fidelity", "fidelity_model"};
  Eigen::VectorXd xs(detunings_w.size()), ys(detunings_w.size()),
      ys_model(detunings_w.size());
  for (size_t i = 0; i < detunings_w.size(); ++i) {
    report.rows.push_back(
        {detunings_w[i], fidelity_full[i], fidelity_model[i]});
    xs(i) = detunings_w[i];
    ys(i) = fidelity_full[i];
    ys_model(i) = fidelity_model[i];
  }

  const FitResult sinc2 = fit_sinc2(xs, ys);
  const FitResult gauss = fit_gaussian(xs, ys);
  const FitResult lorentz = fit_lorentzian(xs, ys);
  const FitResult sinc2_model = fit_sinc2(xs, ys_model);

  report.summary["fit_converged"] = sinc2.converged ? 1.0 : 0.0;
  report.summary["peak_detuning"] = sinc2.params(2);
  report.summary["fwhm"] = sinc2_fwhm(sinc2);
  report.summary["fit_r_squared"] = sinc2.r_squared;
  report.summary["fit_r_squared_gaussian"] = gauss.r_squared;
  report.summary["fit_r_squared_lorentzian"] = lorentz.r_squared;
  report.summary["model_peak_detuning"] = sinc2_model.params(2);
  report.summary["fit_amplitude"] = sinc2.params(0);
  report.summary["fit_floor"] = sinc2.params(3);
  report.notes["fwhm_axis"] =
      "dimensionless detuning (omega_x - omega_d)/omega";
  if (!sinc2.converged) {
    report.notes["fit_error"] = "sinc2 fit did not converge; raw curve only";
  }

  if (is_full_profile(base) && base.depth_hbar_omega == 3.0) {
    push_assertion(report, "sinc2_r_squared_above_0.999",
                   sinc2.r_squared >= 0.999, format_double(sinc2.r_squared));
    push_assertion(report, "sinc2_beats_gaussian_and_lorentzian",
                   sinc2.r_squared > gauss.r_squared &&
                       sinc2.r_squared > lorentz.r_squared,
                   format_double(sinc2.r_squared - std::max(gauss.r_squared,
                                                            lorentz.r_squared)));
  }
  return report;
}

RunReport run_tunneling_scenario(const RunConfig& base, double horizon_w,
                                 int n_cells) {
  const LatticeConfig config = derive_units(base.depth_hbar_omega);
  const double omega = config.omega;
  const TunnelingResult result =
      estimate_tunneling(config, horizon_w / omega, n_cells);

  RunReport report;
  report.scenario = "tunneling";
  report.config = base;
  report.grid_n = base.grid_n;
  report.columns = {};
  report.summary["r2_quadrature"] = result.r2_quadrature / omega;  // units of omega
  report.summary["r2_dynamic"] = result.r2_dynamic / omega;
  report.summary["timescale"] = omega / result.r2_dynamic;  // units of 1/omega
  report.summary["quadrature_over_dynamic"] =
      result.r2_quadrature / result.r2_dynamic;
  if (base.lab) {
    LatticeConfig lab_config = config;
    lab_config.lab = base.lab;
    const double tau = natural_time_seconds(lab_config);
    report.summary["r2_dynamic_hz"] = result.r2_dynamic / tau;
    report.summary["timescale_ms"] = 1.0 / result.r2_dynamic * tau * 1e3;
  }
  push_assertion(report, "rates_within_factor_2",
                 result.r2_quadrature / result.r2_dynamic < 2.0 &&
                     result.r2_dynamic / result.r2_quadrature < 2.0,
                 format_double(result.r2_quadrature / result.r2_dynamic));
  return report;
}

void emit_report(const RunReport& report, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory " + out_dir +
                             ": " + ec.message());
  }

  const fs::path csv_path = fs::path(out_dir) / (report.scenario + ".csv");
  {
    std::ofstream csv(csv_path);
    if (!csv) {
      throw std::runtime_error("cannot write " + csv_path.string());
    }
    for (size_t i = 0; i < report.columns.size(); ++i) {
      csv << (i ? "," : "") << report.columns[i];
    }
    csv << "\n";
    for (const auto& row : report.rows) {
      for (size_t i = 0; i < row.size(); ++i) {
        csv << (i ? "," : "") << format_double(row[i]);
      }
      csv << "\n";
    }
  }

  nlohmann::json j;
  j["scenario"] = report.scenario;
  j["config"] = nlohmann::json::parse(run_config_to_json(report.config));
  j["summary"] = report.summary;
  j["notes"] = report.notes;
  j["assertions"] = nlohmann::json::array();
  for (const auto& a : report.assertions) {
    j["assertions"].push_back(
        {{"name", a.name}, {"passed", a.passed}, {"detail", a.detail}});
  }
  j["provenance"] = {{"grid_n", report.grid_n},
                     {"dt_natural", report.dt_natural},
                     {"version", report.version}};
  const fs::path json_path =
      fs::path(out_dir) / (report.scenario + "_summary.json");
  std::ofstream json_out(json_path);
  if (!json_out) {
    throw std::runtime_error("cannot write " + json_path.string());
  }
  json_out << j.dump(2) << "\n";
}

std::map<std::string, double> parse_summary(const std::string& json_path) {
  std::ifstream in(json_path);
  if (!in) {
    throw std::runtime_error("cannot open summary " + json_path);
  }
  nlohmann::json j;
  in >> j;
  std::map<std::string, double> out;
  for (const auto& [key, value] : j.at("summary").items()) {
    out[key] = value.get<double>();
  }
  return out;
}

}  // namespace orbital
