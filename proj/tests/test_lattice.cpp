#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "orbital/lattice.hpp"
#include "orbital/spectral.hpp"
#include "support/oracles.hpp"

using namespace orbital;

TEST_CASE("derive_units fixes the natural-unit relations") {
  const LatticeConfig c = derive_units(3.0);
  CHECK(c.V0 == doctest::Approx(18.0).epsilon(1e-14));
  CHECK(c.omega == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(c.ell == doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));
  CHECK(c.k == 1.0);
  CHECK(c.k_s == doctest::Approx(std::numbers::sqrt2).epsilon(1e-14));
  c.validate();

  const LatticeConfig c35 = derive_units(3.5);
  CHECK(c35.V0 == doctest::Approx(24.5).epsilon(1e-14));
  CHECK(c35.omega == doctest::Approx(7.0).epsilon(1e-14));
  // E_r = hbar^2 k^2 / 2m = 1/2, so V0 = 49 E_r.
  CHECK(c35.V0 / 0.5 == doctest::Approx(49.0).epsilon(1e-14));

  CHECK_THROWS_AS(derive_units(0.0), std::invalid_argument);
  CHECK_THROWS_AS(derive_units(-2.0), std::invalid_argument);
}

TEST_CASE("potential matches the rotated-lattice form up to the offset") {
  const LatticeConfig config = derive_units(3.0);

  PhysicalDrive drive = PhysicalDrive::off(10.0);
  drive.f_x = [](double t) { return 0.7 * std::sin(0.3 * t); };
  drive.V_c = [](double t) { return 1.3 * (1.0 + std::cos(0.2 * t)); };

  CHECK(potential(0.0, 0.0, 0.0, config, PhysicalDrive::off(1.0)) == 0.0);
  CHECK(potential(config.ell, 0.0, 0.0, config, PhysicalDrive::off(1.0)) ==
        doctest::Approx(config.V0).epsilon(1e-14));

  std::mt19937 rng(42);
  std::uniform_real_distribution<double> pos(-5.0, 5.0);
  std::uniform_real_distribution<double> time(0.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = pos(rng), y = pos(rng), t = time(rng);
    const double direct = oracle::two_sine_potential(
        x, y, config.V0, drive.f_x(t), drive.V_c(t));
    const double dropped = potential(x, y, t, config, drive);
    CHECK(std::abs(direct - dropped - drive.V_c(t)) < 1e-12 * config.V0);
  }
}

TEST_CASE("potential is periodic and even") {
  const LatticeConfig config = derive_units(2.5);
  PhysicalDrive drive = PhysicalDrive::off(10.0);
  drive.f_x = [](double) { return 0.4; };
  drive.V_c = [](double) { return 0.9; };

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> pos(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const double x = pos(rng), y = pos(rng);
    const double v = potential(x, y, 1.0, config, drive);
    CHECK(potential(x + 2 * config.ell, y, 1.0, config, drive) ==
          doctest::Approx(v).epsilon(1e-12));
    CHECK(potential(x, y + 2 * config.ell, 1.0, config, drive) ==
          doctest::Approx(v).epsilon(1e-12));
    CHECK(potential(-x, y, 1.0, config, drive) ==
          doctest::Approx(v).epsilon(1e-12));
    CHECK(potential(x, -y, 1.0, config, drive) ==
          doctest::Approx(v).epsilon(1e-12));
  }
}

TEST_CASE("experimental unit conversion for 133Cs at 1064 nm") {
  LabData lab;
  lab.wavelength_m = 1064e-9;
  lab.atom_mass_kg = species_mass_kg("133Cs");
  const LatticeConfig config = derive_units(3.5, lab);

  const EigenBasis1D basis = solve_site_states(config, 512, 6);
  const LabReport report =
      to_experimental(config, basis.omega_d, 500.0 / config.omega);

  CHECK(report.depth_recoils == doctest::Approx(49.0).epsilon(1e-14));
  // omega_d/(2 pi) ~ 31 kHz and T(500/omega) ~ 4.3 ms
  CHECK(report.f_drive_hz == doctest::Approx(31e3).epsilon(0.10));
  CHECK(report.t_ms == doctest::Approx(4.3).epsilon(0.10));

  const NaturalInputs back =
      from_experimental(config, report.f_drive_hz, report.t_ms);
  CHECK(back.omega_d_natural ==
        doctest::Approx(basis.omega_d).epsilon(1e-12));
  CHECK(back.duration_natural ==
        doctest::Approx(500.0 / config.omega).epsilon(1e-12));

  const LatticeConfig no_lab = derive_units(3.5);
  CHECK_THROWS_AS(to_experimental(no_lab, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("species lookup") {
  CHECK(species_mass_kg("133Cs") ==
        doctest::Approx(2.2069469e-25).epsilon(1e-6));
  CHECK_THROWS_AS(species_mass_kg("unobtainium"), std::invalid_argument);
}
