#pragma once

#include <vector>

#include "orbital/couplings.hpp"
#include "orbital/lattice.hpp"

namespace orbital::detail {

/// Dense polynomial with ascending coefficients. Small utility for the
/// closed-form pulse envelopes and their exact integrals.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

  double operator()(double t) const;
  Poly derivative() const;
  Poly antiderivative() const;  // constant term 0
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<double>& coeffs() const { return c_; }

  static Poly mul(const Poly& a, const Poly& b);
  static Poly scale(const Poly& a, double s);

 private:
  std::vector<double> c_;
};

/// Exact \int_a^b p(s) cos(w s) ds by repeated integration by parts.
double poly_cos_integral(const Poly& p, double w, double a, double b);

}  // namespace orbital::detail

namespace orbital {

/// Sequential pi / pi-over-2 Rabi schedule.
///
/// Omega_x is supported on [0, t_S] with area pi, Omega_c on [t_S, T] with
/// area pi/2; both envelopes and their derivatives vanish at the segment
/// endpoints. Envelopes are closed-form quartics, so any integrator step
/// size can query them and their running areas exactly.
class PulseSchedule {
 public:
  /// Throws std::invalid_argument unless 0 < t_S < T.
  PulseSchedule(double total_time, double switch_time);

  double total_time() const { return total_time_; }
  double switch_time() const { return switch_time_; }

  double omega_x_env(double t) const;   // rate, zero outside [0, t_S]
  double omega_c_env(double t) const;   // rate, zero outside [t_S, T]
  double omega_x_area(double t) const;  // \int_0^t Omega_x
  double omega_c_area(double t) const;  // \int_0^t Omega_c

  /// Exact \int_0^t Omega_x(s) cos(w s) ds (for drive phase integrals).
  double omega_x_cos_integral(double t, double w) const;

 private:
  double total_time_ = 0.0;
  double switch_time_ = 0.0;
  detail::Poly x_env_, c_env_;    // envelope polynomials on their segments
  detail::Poly x_area_, c_area_;  // antiderivatives
};

PulseSchedule make_sequential_schedule(double total_time, double switch_time);

/// Map effective Rabi envelopes to the lab-frame drive:
///   f_x(t) = (hbar/gamma_0) Omega_x(t) cos(omega_x t)
///   V_c(t) = hbar Omega_c(t) / (2 gamma_1)
/// Throws std::domain_error if gamma_0 or gamma_1 vanish.
PhysicalDrive to_physical(const PulseSchedule& schedule,
                          const CouplingSet& couplings, double omega_x);

}  // namespace orbital
