#pragma once

#include <Eigen/Dense>
#include <functional>

namespace orbital {

struct FitResult {
  Eigen::VectorXd params;
  double r_squared = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Levenberg-Marquardt least squares with a forward-difference Jacobian.
/// `model(params, x)` evaluates the fit function at one abscissa.
FitResult fit_curve(
    const std::function<double(const Eigen::VectorXd&, double)>& model,
    Eigen::VectorXd initial, const Eigen::VectorXd& xs,
    const Eigen::VectorXd& ys, int max_iterations = 200);

/// y = A sinc^2(B (x - x0)) + C with sinc(x) = sin(x)/x.
/// params = (A, B, x0, C). Initial guess derived from the data.
FitResult fit_sinc2(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys);

/// y = A exp(-(x - x0)^2 / (2 s^2)) + C; params = (A, s, x0, C).
FitResult fit_gaussian(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys);

/// y = A / (1 + ((x - x0)/g)^2) + C; params = (A, g, x0, C).
FitResult fit_lorentzian(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys);

/// Full width at half maximum of the fitted sinc^2 component:
/// 2 * 1.3915573... / B.
double sinc2_fwhm(const FitResult& fit);

double sinc2_eval(const Eigen::VectorXd& params, double x);

}  // namespace orbital
