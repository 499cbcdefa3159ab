#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fraclap/angular_eigen.hpp"
#include "fraclap/constants.hpp"
#include "fraclap/extension_2d.hpp"
#include "fraclap/operator_1d.hpp"

using namespace fraclap;
namespace ct = fraclap::constants;

namespace {
constexpr double kPi = std::numbers::pi;

ScalarField gaussian_bump() {
  ScalarField f;
  f.value = [](double y) { return std::exp(-0.5 * y * y); };
  f.second_derivative = [](double y) {
    return (y * y - 1.0) * std::exp(-0.5 * y * y);
  };
  f.fourth_derivative = [](double y) {
    return (y * y * y * y - 6.0 * y * y + 3.0) * std::exp(-0.5 * y * y);
  };
  f.tail_right = TailDescriptor::compact(40.0);
  f.tail_left = TailDescriptor::compact(40.0);
  return f;
}

ScalarField all_one() {
  ScalarField f;
  f.value = [](double) { return 1.0; };
  f.tail_right = TailDescriptor::power(1.0, 0.0, 1.0);
  f.tail_left = TailDescriptor::power(1.0, 0.0, 1.0);
  return f;
}

// mpmath references: -kappa_bar * (-Δ)^s exp(-x²/2) at 0
constexpr double kFluxTarget06 = -1.0549205411773023;
constexpr double kFluxTarget08 = -2.2935339272058341;

}  // namespace

TEST_CASE("kernel normalization: constant extends to constant") {
  const ScalarField one = all_one();
  for (double s : {0.3, 0.6, 0.85})
    for (double t : {0.2, 1.0, 7.0})
      CHECK(poisson_extend(one, {0.7, t}, FracOrder(s)) ==
            doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("extension of the half-line indicator is purely angular") {
  const FracOrder s(0.7);
  const ScalarField ind = omega_gamma(0.0);
  for (double theta : {kPi / 4.0, kPi / 2.0, 2.2}) {
    const double v1 = poisson_extend(
        ind, {0.5 * std::cos(theta), 0.5 * std::sin(theta)}, s, 1e-11);
    const double v2 = poisson_extend(
        ind, {2.0 * std::cos(theta), 2.0 * std::sin(theta)}, s, 1e-11);
    CHECK(v1 == doctest::Approx(v2).epsilon(1e-8));
    CHECK(v1 ==
          doctest::Approx(w0_angular_profile(theta, s)).epsilon(1e-7));
  }
}

TEST_CASE("odd data vanish on the symmetry axis") {
  ScalarField odd;
  odd.value = [](double y) { return y * std::exp(-0.5 * y * y); };
  odd.tail_right = TailDescriptor::compact(40.0);
  odd.tail_left = TailDescriptor::compact(40.0);
  for (double t : {0.3, 1.5})
    CHECK(std::abs(poisson_extend(odd, {0.0, t}, FracOrder(0.65))) <= 1e-9);
}

TEST_CASE("w_gamma homogeneity of degree gamma") {
  const FracOrder s(0.7);
  const double g = 0.3;
  for (double lam : {2.0, 5.0}) {
    for (auto [x, t] : {std::pair{0.5, 0.5}, {-0.3, 1.2}, {1.0, 0.25}}) {
      const double base = w_gamma(g, {x, t}, s, 1e-11);
      const double scaled = w_gamma(g, {lam * x, lam * t}, s, 1e-11);
      CHECK(scaled ==
            doctest::Approx(std::pow(lam, g) * base).epsilon(1e-7));
    }
  }
}

TEST_CASE("w_gamma boundary trace recovers the power") {
  const FracOrder s(0.75);
  const double g = 0.25;
  double prev = std::numeric_limits<double>::infinity();
  for (double t : {1e-2, 1e-3, 1e-4}) {
    const double err = std::abs(w_gamma(g, {1.0, t}, s, 1e-11) - 1.0);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev <= 1e-5);
}

TEST_CASE("flux of a constant vanishes") {
  const FluxResult r = extension_flux(all_one(), 0.4, FracOrder(0.7));
  CHECK(std::abs(r.flux) <= 1e-8);
}

TEST_CASE("flux recovers -kappa_bar times the fractional Laplacian") {
  const ScalarField bump = gaussian_bump();
  for (double s : {0.6, 0.8}) {
    const FracOrder fo(s);
    const FluxResult flux = extension_flux(bump, 0.0, fo);
    const PointValue pv = full_flap_line(bump, 0.0, fo);
    const double target = -ct::kappa_bar(fo) * pv.value;
    CHECK(std::abs(flux.flux - target) / std::abs(target) <= 1e-3);
    CHECK(flux.first_correction_exponent ==
          doctest::Approx(2.0 - 2.0 * s).epsilon(1e-14));
    const double frozen = s == 0.6 ? kFluxTarget06 : kFluxTarget08;
    CHECK(flux.flux == doctest::Approx(frozen).epsilon(2e-3));
  }
}

TEST_CASE("flux of the hardy ground state at x0 = 1") {
  const FracOrder s(0.75);
  const ScalarField u = omega_gamma(0.5 * (2.0 * 0.75 - 1.0));
  const FluxResult flux = extension_flux(u, 1.0, s);
  const double target = -ct::kappa_bar(s) * ct::hardy_constant(s);
  CHECK(std::abs(flux.flux - target) / std::abs(target) <= 2e-3);
  CHECK(target == doctest::Approx(-0.54710990380661916).epsilon(1e-12));
}

TEST_CASE("discrete weighted harmonicity in the half-plane") {
  const FracOrder s(0.7);
  const ScalarField bump = gaussian_bump();
  const double x = 0.3, t = 0.7, h = 2e-3;
  auto w = [&](double xx, double tt) {
    return poisson_extend(bump, {xx, tt}, s, 1e-12);
  };
  const double wxx = (w(x - h, t) - 2.0 * w(x, t) + w(x + h, t)) / (h * h);
  const double wtt = (w(x, t - h) - 2.0 * w(x, t) + w(x, t + h)) / (h * h);
  const double wt = (w(x, t + h) - w(x, t - h)) / (2.0 * h);
  const double residual = wxx + wtt + (1.0 - 2.0 * 0.7) / t * wt;
  const double scale = std::abs(wxx) + std::abs(wtt) + std::abs(wt / t) + 1.0;
  CHECK(std::abs(residual) <= 1e-4 * scale);
}

TEST_CASE("argument validation") {
  const ScalarField bump = gaussian_bump();
  CHECK_THROWS_AS(poisson_extend(bump, {0.0, 0.0}, FracOrder(0.6)),
                  std::domain_error);
  CHECK_THROWS_AS(poisson_extend(bump, {0.0, -1.0}, FracOrder(0.6)),
                  std::domain_error);
  ScalarField no_tail;
  no_tail.value = [](double) { return 0.0; };
  CHECK_THROWS_AS(poisson_extend(no_tail, {0.0, 1.0}, FracOrder(0.6)),
                  std::invalid_argument);
  ScalarField fat;
  fat.value = [](double) { return 1.0; };
  fat.tail_right = TailDescriptor::power(1.0, 1.4, 1.0);  // >= 2s
  fat.tail_left = TailDescriptor::compact(1.0);
  CHECK_THROWS_AS(poisson_extend(fat, {0.0, 1.0}, FracOrder(0.6)),
                  std::invalid_argument);
  CHECK_THROWS_AS(w_gamma(1.5, {0.0, 1.0}, FracOrder(0.7)), std::domain_error);
}
