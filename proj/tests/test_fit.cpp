#include <doctest.h>

#include <cmath>
#include <random>

#include "orbital/fit.hpp"

using namespace orbital;

namespace {

Eigen::VectorXd grid(double a, double b, int n) {
  Eigen::VectorXd xs(n);
  for (int i = 0; i < n; ++i) xs(i) = a + (b - a) * i / (n - 1);
  return xs;
}

}  // namespace

TEST_CASE("sinc^2 fit recovers known parameters") {
  Eigen::VectorXd truth(4);
  truth << 0.95, 65.0, 0.002, 0.01;
  const Eigen::VectorXd xs = grid(-0.03, 0.03, 31);
  Eigen::VectorXd ys(xs.size());
  std::mt19937 rng(3);
  std::normal_distribution<double> noise(0.0, 1e-4);
  for (int i = 0; i < xs.size(); ++i) {
    ys(i) = sinc2_eval(truth, xs(i)) + noise(rng);
  }

  const FitResult fit = fit_sinc2(xs, ys);
  CHECK(fit.converged);
  CHECK(fit.params(0) == doctest::Approx(truth(0)).epsilon(1e-2));
  CHECK(std::abs(fit.params(1)) == doctest::Approx(truth(1)).epsilon(1e-2));
  CHECK(fit.params(2) == doctest::Approx(truth(2)).epsilon(0.05));
  CHECK(fit.r_squared > 0.9999);

  // FWHM of sinc^2 with slope B: 2 * 1.39156 / B.
  CHECK(sinc2_fwhm(fit) ==
        doctest::Approx(2.0 * 1.3915573810028535 / 65.0).epsilon(1e-2));
}

TEST_CASE("sinc^2 beats the wrong line shapes on sinc^2 data") {
  Eigen::VectorXd truth(4);
  truth << 1.0, 65.0, 0.0, 0.0;
  const Eigen::VectorXd xs = grid(-0.03, 0.03, 41);
  Eigen::VectorXd ys(xs.size());
  for (int i = 0; i < xs.size(); ++i) ys(i) = sinc2_eval(truth, xs(i));

  const FitResult s = fit_sinc2(xs, ys);
  const FitResult g = fit_gaussian(xs, ys);
  const FitResult l = fit_lorentzian(xs, ys);
  CHECK(s.r_squared > g.r_squared);
  CHECK(s.r_squared > l.r_squared);
  CHECK(s.r_squared > 0.999999);
}

TEST_CASE("gaussian fit recovers a gaussian") {
  const Eigen::VectorXd xs = grid(-2.0, 2.0, 51);
  Eigen::VectorXd ys(xs.size());
  for (int i = 0; i < xs.size(); ++i) {
    const double z = (xs(i) - 0.3) / 0.5;
    ys(i) = 2.0 * std::exp(-0.5 * z * z) + 0.1;
  }
  const FitResult fit = fit_gaussian(xs, ys);
  CHECK(fit.params(0) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(std::abs(fit.params(1)) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(fit.params(2) == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(fit.params(3) == doctest::Approx(0.1).epsilon(1e-5));
}

TEST_CASE("fit rejects underdetermined input") {
  const Eigen::VectorXd xs = grid(0.0, 1.0, 3);
  Eigen::VectorXd ys(3);
  ys << 1.0, 2.0, 3.0;
  CHECK_THROWS_AS(fit_sinc2(xs, ys), std::invalid_argument);
}

TEST_CASE("fit is deterministic") {
  Eigen::VectorXd truth(4);
  truth << 0.9, 50.0, -0.001, 0.02;
  const Eigen::VectorXd xs = grid(-0.04, 0.04, 31);
  Eigen::VectorXd ys(xs.size());
  for (int i = 0; i < xs.size(); ++i) ys(i) = sinc2_eval(truth, xs(i));
  const FitResult a = fit_sinc2(xs, ys);
  const FitResult b = fit_sinc2(xs, ys);
  CHECK(a.params == b.params);
  CHECK(a.r_squared == b.r_squared);
}
