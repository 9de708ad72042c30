#include <doctest.h>

#include <cmath>
#include <numbers>

#include "orbital/pulses.hpp"
#include "orbital/spectral.hpp"
#include "support/oracles.hpp"

using namespace orbital;
using orbital::detail::Poly;

TEST_CASE("polynomial helpers") {
  const Poly p({1.0, -2.0, 3.0});  // 1 - 2t + 3t^2
  CHECK(p(2.0) == doctest::Approx(9.0));
  CHECK(p.derivative()(2.0) == doctest::Approx(10.0));
  CHECK(p.antiderivative()(1.0) == doctest::Approx(1.0 - 1.0 + 1.0));

  const Poly q = Poly::mul(Poly({0.0, 1.0}), Poly({-1.0, 1.0}));  // t(t-1)
  CHECK(q(3.0) == doctest::Approx(6.0));

  // Exact polynomial-times-cosine integral vs adaptive quadrature.
  const Poly quartic({0.5, -1.0, 2.0, 0.25, -0.125});
  for (double w : {0.7, 4.0, 11.3}) {
    const double exact = detail::poly_cos_integral(quartic, w, 0.0, 2.5);
    const double numeric = oracle::integrate(
        [&](double s) { return quartic(s) * std::cos(w * s); }, 0.0, 2.5,
        1e-13);
    CHECK(exact == doctest::Approx(numeric).epsilon(1e-11));
  }
}

TEST_CASE("sequential schedule shapes and areas") {
  const double total = 125.0;   // 750/omega at v = 3
  const double ts = 31.25;
  const PulseSchedule s = make_sequential_schedule(total, ts);

  // Peak of the first envelope: 15 pi / (8 t_S) at t = t_S/2.
  CHECK(s.omega_x_env(ts / 2.0) ==
        doctest::Approx(15.0 * std::numbers::pi / (8.0 * ts)).epsilon(1e-12));
  double peak = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    peak = std::max(peak, s.omega_x_env(total * i / 2000.0));
  }
  CHECK(peak == doctest::Approx(15.0 * std::numbers::pi / (8.0 * ts)).epsilon(1e-6));

  // In units of omega = 6: peak = 15 pi/(8 * 187.5) omega ~ 0.0314 omega.
  CHECK(peak / 6.0 == doctest::Approx(0.031416).epsilon(1e-4));

  // Pulse areas pi and pi/2, closed form and quadrature.
  CHECK(s.omega_x_area(total) == doctest::Approx(std::numbers::pi).epsilon(1e-12));
  CHECK(s.omega_c_area(total) ==
        doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-12));
  const double area_x = oracle::integrate(
      [&](double t) { return s.omega_x_env(t); }, 0.0, total, 1e-13);
  const double area_c = oracle::integrate(
      [&](double t) { return s.omega_c_env(t); }, 0.0, total, 1e-13);
  CHECK(std::abs(area_x - std::numbers::pi) < 1e-10);
  CHECK(std::abs(area_c - std::numbers::pi / 2.0) < 1e-10);

  // Envelopes and their derivatives vanish at the segment endpoints.
  const double eps = 1e-7 * total;
  for (double t0 : {0.0, ts, total}) {
    CHECK(std::abs(s.omega_x_env(t0)) < 1e-12);
    CHECK(std::abs(s.omega_c_env(t0)) < 1e-12);
    const double dx_num =
        (s.omega_x_env(t0 + eps) - s.omega_x_env(std::max(t0 - eps, 0.0))) /
        (2.0 * eps);
    CHECK(std::abs(dx_num) < 1e-4);
  }

  // Sequentiality: the envelopes never overlap.
  for (int i = 0; i <= 5000; ++i) {
    const double t = total * i / 5000.0;
    CHECK(s.omega_x_env(t) * s.omega_c_env(t) == 0.0);
    CHECK(s.omega_x_env(t) >= 0.0);
    CHECK(s.omega_c_env(t) >= 0.0);
  }

  CHECK_THROWS_AS(make_sequential_schedule(10.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_sequential_schedule(10.0, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(make_sequential_schedule(10.0, 12.0), std::invalid_argument);
}

TEST_CASE("areas are invariant under time reparameterization") {
  const PulseSchedule a = make_sequential_schedule(100.0, 25.0);
  const PulseSchedule b = make_sequential_schedule(400.0, 100.0);
  CHECK(a.omega_x_area(100.0) == doctest::Approx(b.omega_x_area(400.0)).epsilon(1e-12));
  CHECK(a.omega_c_area(100.0) == doctest::Approx(b.omega_c_area(400.0)).epsilon(1e-12));
  CHECK(a.omega_x_area(50.0) == doctest::Approx(b.omega_x_area(200.0)).epsilon(1e-12));
}

TEST_CASE("physical drive mapping") {
  const LatticeConfig config = derive_units(3.0);
  const EigenBasis1D basis = solve_site_states(config, 512, 5);
  const CouplingSet cs = compute_overlaps(basis);
  const double total = 750.0 / config.omega;
  const PulseSchedule schedule = make_sequential_schedule(total, 0.25 * total);
  const PhysicalDrive drive = to_physical(schedule, cs, cs.omega_d);

  // Endpoint conditions of the drive.
  CHECK(drive.f_x(0.0) == 0.0);
  CHECK(std::abs(drive.f_x(total)) < 1e-12);
  CHECK(drive.V_c(0.0) == 0.0);
  CHECK(std::abs(drive.V_c(total)) < 1e-12);

  double max_f = 0.0, min_vc = 0.0;
  for (int i = 0; i <= 5000; ++i) {
    const double t = total * i / 5000.0;
    max_f = std::max(max_f, std::abs(drive.f_x(t)));
    min_vc = std::min(min_vc, drive.V_c(t));
    // Carrier structure: f_x = g_x cos(omega_x t).
    CHECK(drive.f_x(t) ==
          doctest::Approx(drive.g_x_env(t) * std::cos(cs.omega_d * t))
              .epsilon(1e-12));
  }
  CHECK(min_vc >= 0.0);
  // Modulation strength stays a fraction of the lattice depth.
  CHECK(max_f / config.V0 < 0.5);

  // Omega_c == 0 during the first pulse maps to V_c == 0 there.
  for (int i = 0; i <= 100; ++i) {
    const double t = schedule.switch_time() * i / 100.0;
    CHECK(drive.V_c(t) == 0.0);
  }

  CouplingSet broken = cs;
  broken.gamma0 = 0.0;
  CHECK_THROWS_AS(to_physical(schedule, broken, cs.omega_d), std::domain_error);
  broken = cs;
  broken.gamma1 = 0.0;
  CHECK_THROWS_AS(to_physical(schedule, broken, cs.omega_d), std::domain_error);
}
