#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "orbital/config.hpp"

using namespace orbital;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << body;
  return path.string();
}

}  // namespace

TEST_CASE("config file loading") {
  const std::string path = write_temp("orbital_cfg_full.json", R"({
    "depth_hbar_omega": 3.5,
    "grid_n": 256,
    "total_time": 500.0,
    "switch_fraction": 0.3,
    "drive_detuning": 0.002,
    "lab": {"wavelength_nm": 1064.0, "species": "133Cs"}
  })");
  const RunConfig config = load_run_config(path);
  CHECK(config.depth_hbar_omega == 3.5);
  CHECK(config.grid_n == 256);
  CHECK(config.total_time == 500.0);
  CHECK(config.switch_fraction == 0.3);
  CHECK(config.drive_detuning == 0.002);
  CHECK(config.dt_factor == 0.05);  // default preserved
  REQUIRE(config.lab.has_value());
  CHECK(config.lab->wavelength_m == doctest::Approx(1064e-9));
  CHECK(config.lab->atom_mass_kg == doctest::Approx(2.2069469e-25).epsilon(1e-6));
  std::remove(path.c_str());
}

TEST_CASE("partial config keeps defaults") {
  const std::string path =
      write_temp("orbital_cfg_partial.json", R"({"depth_hbar_omega": 4.0})");
  const RunConfig config = load_run_config(path);
  CHECK(config.depth_hbar_omega == 4.0);
  CHECK(config.grid_n == 128);
  CHECK(config.total_time == 750.0);
  CHECK_FALSE(config.lab.has_value());
  std::remove(path.c_str());
}

TEST_CASE("config validation") {
  RunConfig config;
  CHECK_NOTHROW(config.validate());
  config.grid_n = 100;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.grid_n = 128;
  config.switch_fraction = 1.5;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.switch_fraction = 0.25;
  config.depth_hbar_omega = -1.0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);

  CHECK_THROWS_AS(load_run_config("/nonexistent/path.json"),
                  std::runtime_error);
}

TEST_CASE("config json round trip") {
  RunConfig config;
  config.depth_hbar_omega = 2.5;
  config.total_time = 600.0;
  LabData lab;
  lab.wavelength_m = 1064e-9;
  lab.atom_mass_kg = species_mass_kg("87Rb");
  config.lab = lab;

  const std::string path =
      write_temp("orbital_cfg_rt.json", run_config_to_json(config));
  const RunConfig loaded = load_run_config(path);
  CHECK(loaded.depth_hbar_omega == config.depth_hbar_omega);
  CHECK(loaded.total_time == config.total_time);
  CHECK(loaded.lab->atom_mass_kg == doctest::Approx(config.lab->atom_mass_kg));
  std::remove(path.c_str());
}
