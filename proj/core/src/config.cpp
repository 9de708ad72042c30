#include "orbital/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace orbital {

void RunConfig::validate() const {
  if (!(depth_hbar_omega > 0.0)) {
    throw std::invalid_argument("depth_hbar_omega must be positive");
  }
  if (grid_n < 64 || (grid_n & (grid_n - 1)) != 0) {
    throw std::invalid_argument("grid_n must be a power of two, >= 64");
  }
  if (!(total_time > 0.0)) {
    throw std::invalid_argument("total_time must be positive");
  }
  if (!(switch_fraction > 0.0) || !(switch_fraction < 1.0)) {
    throw std::invalid_argument("switch_fraction must lie in (0, 1)");
  }
  if (!(dt_factor > 0.0) || dt_factor > 0.1) {
    throw std::invalid_argument("dt_factor must lie in (0, 0.1]");
  }
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + path);
  }
  nlohmann::json j;
  in >> j;

  RunConfig config;
  config.depth_hbar_omega = j.value("depth_hbar_omega", config.depth_hbar_omega);
  config.grid_n = j.value("grid_n", config.grid_n);
  config.total_time = j.value("total_time", config.total_time);
  config.switch_fraction = j.value("switch_fraction", config.switch_fraction);
  config.drive_detuning = j.value("drive_detuning", config.drive_detuning);
  config.dt_factor = j.value("dt_factor", config.dt_factor);
  if (j.contains("lab")) {
    const auto& lab = j.at("lab");
    LabData data;
    data.wavelength_m = lab.at("wavelength_nm").get<double>() * 1e-9;
    if (lab.contains("species")) {
      data.atom_mass_kg = species_mass_kg(lab.at("species").get<std::string>());
    } else {
      data.atom_mass_kg = lab.at("atom_mass_kg").get<double>();
    }
    config.lab = data;
  }
  config.validate();
  return config;
}

std::string run_config_to_json(const RunConfig& config) {
  nlohmann::json j;
  j["depth_hbar_omega"] = config.depth_hbar_omega;
  j["grid_n"] = config.grid_n;
  j["total_time"] = config.total_time;
  j["switch_fraction"] = config.switch_fraction;
  j["drive_detuning"] = config.drive_detuning;
  j["dt_factor"] = config.dt_factor;
  if (config.lab) {
    j["lab"]["wavelength_nm"] = config.lab->wavelength_m * 1e9;
    j["lab"]["atom_mass_kg"] = config.lab->atom_mass_kg;
  }
  return j.dump(2);
}

}  // namespace orbital
