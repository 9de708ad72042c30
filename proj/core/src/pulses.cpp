#include "orbital/pulses.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace orbital::detail {

double Poly::operator()(double t) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * t + *it;
  }
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly({0.0});
  std::vector<double> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) {
    d[i - 1] = c_[i] * static_cast<double>(i);
  }
  return Poly(std::move(d));
}

Poly Poly::antiderivative() const {
  std::vector<double> a(c_.size() + 1, 0.0);
  for (size_t i = 0; i < c_.size(); ++i) {
    a[i + 1] = c_[i] / static_cast<double>(i + 1);
  }
  return Poly(std::move(a));
}

Poly Poly::mul(const Poly& a, const Poly& b) {
  std::vector<double> out(a.c_.size() + b.c_.size() - 1, 0.0);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    for (size_t j = 0; j < b.c_.size(); ++j) {
      out[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return Poly(std::move(out));
}

Poly Poly::scale(const Poly& a, double s) {
  std::vector<double> out = a.c_;
  for (double& c : out) c *= s;
  return Poly(std::move(out));
}

double poly_cos_integral(const Poly& p, double w, double a, double b) {
  if (w == 0.0) {
    const Poly anti = p.antiderivative();
    return anti(b) - anti(a);
  }
  // \int p cos(ws) ds = sin(ws) [p/w - p''/w^3 + ...]
  //                   + cos(ws) [p'/w^2 - p'''/w^4 + ...]
  auto antiderivative_at = [&](double s) {
    double sin_part = 0.0, cos_part = 0.0;
    Poly d = p;
    double wpow = w;
    double sign = 1.0;
    for (int order = 0; order <= p.degree(); ++order) {
      if (order % 2 == 0) {
        sin_part += sign * d(s) / wpow;
      } else {
        cos_part += sign * d(s) / wpow;
        sign = -sign;
      }
      d = d.derivative();
      wpow *= w;
    }
    return std::sin(w * s) * sin_part + std::cos(w * s) * cos_part;
  };
  return antiderivative_at(b) - antiderivative_at(a);
}

}  // namespace orbital::detail

namespace orbital {

using detail::Poly;

PulseSchedule::PulseSchedule(double total_time, double switch_time)
    : total_time_(total_time), switch_time_(switch_time) {
  if (!(switch_time > 0.0) || !(switch_time < total_time)) {
    throw std::invalid_argument("switch time must satisfy 0 < t_S < T");
  }
  const double pi = std::numbers::pi;
  const double ts = switch_time_;
  const double tail = total_time_ - switch_time_;
  // Omega_x = 30 pi t^2 (t - t_S)^2 / t_S^5 on [0, t_S]
  x_env_ = Poly::scale(
      Poly::mul(Poly({0.0, 0.0, 1.0}), Poly({ts * ts, -2.0 * ts, 1.0})),
      30.0 * pi / std::pow(ts, 5));
  // Omega_c = 15 pi (t - T)^2 (t - t_S)^2 / (T - t_S)^5 on [t_S, T]
  c_env_ = Poly::scale(
      Poly::mul(Poly({total_time_ * total_time_, -2.0 * total_time_, 1.0}),
                Poly({ts * ts, -2.0 * ts, 1.0})),
      15.0 * pi / std::pow(tail, 5));
  x_area_ = x_env_.antiderivative();
  c_area_ = c_env_.antiderivative();
}

double PulseSchedule::omega_x_env(double t) const {
  if (t <= 0.0 || t >= switch_time_) return 0.0;
  return x_env_(t);
}

double PulseSchedule::omega_c_env(double t) const {
  if (t <= switch_time_ || t >= total_time_) return 0.0;
  return c_env_(t);
}

double PulseSchedule::omega_x_area(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= switch_time_) return x_area_(switch_time_) - x_area_(0.0);
  return x_area_(t) - x_area_(0.0);
}

double PulseSchedule::omega_c_area(double t) const {
  if (t <= switch_time_) return 0.0;
  const double upper = std::min(t, total_time_);
  return c_area_(upper) - c_area_(switch_time_);
}

double PulseSchedule::omega_x_cos_integral(double t, double w) const {
  if (t <= 0.0) return 0.0;
  const double upper = std::min(t, switch_time_);
  return detail::poly_cos_integral(x_env_, w, 0.0, upper);
}

PulseSchedule make_sequential_schedule(double total_time, double switch_time) {
  return PulseSchedule(total_time, switch_time);
}

PhysicalDrive to_physical(const PulseSchedule& schedule,
                          const CouplingSet& couplings, double omega_x) {
  if (couplings.gamma0 == 0.0) {
    throw std::domain_error("gamma_0 vanishes: drive amplitude undefined");
  }
  if (couplings.gamma1 == 0.0) {
    throw std::domain_error("gamma_1 vanishes: rotated-lattice map undefined");
  }
  const double x_scale = 1.0 / couplings.gamma0;        // hbar = 1
  const double c_scale = 1.0 / (2.0 * couplings.gamma1);

  PhysicalDrive drive;
  drive.omega_x = omega_x;
  drive.duration = schedule.total_time();
  drive.f_x = [schedule, x_scale, omega_x](double t) {
    return x_scale * schedule.omega_x_env(t) * std::cos(omega_x * t);
  };
  drive.g_x_env = [schedule, x_scale](double t) {
    return x_scale * schedule.omega_x_env(t);
  };
  drive.V_c = [schedule, c_scale](double t) {
    return c_scale * schedule.omega_c_env(t);
  };
  drive.f_x_integral = [schedule, x_scale, omega_x](double t) {
    return x_scale * schedule.omega_x_cos_integral(t, omega_x);
  };
  drive.V_c_integral = [schedule, c_scale](double t) {
    return c_scale * schedule.omega_c_area(t);
  };
  return drive;
}

}  // namespace orbital
