#include "orbital/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace orbital {
namespace {

// Half-max point of sinc^2: sin^2(x)/x^2 = 1/2.
constexpr double kSincHalfMax = 1.3915573810028535;

double r_squared(const Eigen::VectorXd& ys, const Eigen::VectorXd& residuals) {
  const double ss_res = residuals.squaredNorm();
  const double mean = ys.mean();
  const double ss_tot = (ys.array() - mean).matrix().squaredNorm();
  if (ss_tot == 0.0) return 1.0;
  return 1.0 - ss_res / ss_tot;
}

Eigen::VectorXd residuals_of(
    const std::function<double(const Eigen::VectorXd&, double)>& model,
    const Eigen::VectorXd& params, const Eigen::VectorXd& xs,
    const Eigen::VectorXd& ys) {
  Eigen::VectorXd r(xs.size());
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    r(i) = ys(i) - model(params, xs(i));
  }
  return r;
}

// Peak-shape initial guesses shared by the three line profiles.
struct PeakGuess {
  double amplitude, width, center, floor;
};

PeakGuess guess_peak(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys) {
  Eigen::Index arg_max = 0;
  ys.maxCoeff(&arg_max);
  const double y_max = ys(arg_max);
  const double y_min = ys.minCoeff();
  const double center = xs(arg_max);
  // Half-maximum crossing distance as the width scale.
  const double half = y_min + 0.5 * (y_max - y_min);
  double width = (xs(xs.size() - 1) - xs(0)) / 4.0;
  for (Eigen::Index i = arg_max; i < xs.size(); ++i) {
    if (ys(i) < half) {
      width = xs(i) - center;
      break;
    }
  }
  return {y_max - y_min, std::abs(width), center, y_min};
}

}  // namespace

double sinc2_eval(const Eigen::VectorXd& p, double x) {
  const double arg = p(1) * (x - p(2));
  double s = 1.0;
  if (std::abs(arg) > 1e-12) {
    s = std::sin(arg) / arg;
    s *= s;
  }
  return p(0) * s + p(3);
}

FitResult fit_curve(
    const std::function<double(const Eigen::VectorXd&, double)>& model,
    Eigen::VectorXd initial, const Eigen::VectorXd& xs,
    const Eigen::VectorXd& ys, int max_iterations) {
  if (xs.size() != ys.size() || xs.size() < initial.size()) {
    throw std::invalid_argument("fit needs at least as many points as params");
  }
  const Eigen::Index n = xs.size();
  const Eigen::Index m = initial.size();

  Eigen::VectorXd params = std::move(initial);
  Eigen::VectorXd residual = residuals_of(model, params, xs, ys);
  double cost = residual.squaredNorm();
  double lambda = 1e-3;
  bool converged = false;
  int iter = 0;

  for (; iter < max_iterations; ++iter) {
    // Forward-difference Jacobian of the residual vector.
    Eigen::MatrixXd jac(n, m);
    for (Eigen::Index j = 0; j < m; ++j) {
      const double h = 1e-7 * std::max(1.0, std::abs(params(j)));
      Eigen::VectorXd bumped = params;
      bumped(j) += h;
      jac.col(j) = (residuals_of(model, bumped, xs, ys) - residual) / h;
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * residual;

    bool stepped = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      Eigen::MatrixXd damped = jtj;
      damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
      const Eigen::VectorXd delta = damped.ldlt().solve(-jtr);
      const Eigen::VectorXd trial = params + delta;
      const Eigen::VectorXd trial_res = residuals_of(model, trial, xs, ys);
      const double trial_cost = trial_res.squaredNorm();
      if (trial_cost < cost) {
        const double improvement = cost - trial_cost;
        params = trial;
        residual = trial_res;
        cost = trial_cost;
        lambda = std::max(lambda / 3.0, 1e-12);
        stepped = true;
        if (improvement < 1e-14 * (1.0 + cost) ||
            delta.cwiseAbs().maxCoeff() < 1e-12) {
          converged = true;
        }
        break;
      }
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
    if (!stepped || converged) {
      converged = converged || stepped;
      break;
    }
  }

  FitResult result;
  result.params = params;
  result.r_squared = r_squared(ys, residual);
  result.converged = converged || iter < max_iterations;
  result.iterations = iter;
  return result;
}

FitResult fit_sinc2(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys) {
  const PeakGuess g = guess_peak(xs, ys);
  Eigen::VectorXd init(4);
  init << g.amplitude, kSincHalfMax / std::max(g.width, 1e-9), g.center,
      g.floor;
  return fit_curve(sinc2_eval, init, xs, ys);
}

FitResult fit_gaussian(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys) {
  const PeakGuess g = guess_peak(xs, ys);
  Eigen::VectorXd init(4);
  init << g.amplitude, std::max(g.width, 1e-9) / 1.1774, g.center, g.floor;
  auto model = [](const Eigen::VectorXd& p, double x) {
    const double z = (x - p(2)) / p(1);
    return p(0) * std::exp(-0.5 * z * z) + p(3);
  };
  return fit_curve(model, init, xs, ys);
}

FitResult fit_lorentzian(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys) {
  const PeakGuess g = guess_peak(xs, ys);
  Eigen::VectorXd init(4);
  init << g.amplitude, std::max(g.width, 1e-9), g.center, g.floor;
  auto model = [](const Eigen::VectorXd& p, double x) {
    const double z = (x - p(2)) / p(1);
    return p(0) / (1.0 + z * z) + p(3);
  };
  return fit_curve(model, init, xs, ys);
}

double sinc2_fwhm(const FitResult& fit) {
  return 2.0 * kSincHalfMax / std::abs(fit.params(1));
}

}  // namespace orbital
