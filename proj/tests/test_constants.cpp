#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fraclap/constants.hpp"
#include "fraclap/quadrature.hpp"

using namespace fraclap;
namespace ct = fraclap::constants;

namespace {
constexpr double kPi = std::numbers::pi;

// reference values: mpmath (30 digits) evaluation of the defining formulas
constexpr double kC1s03 = 0.2300963816816321;
constexpr double kC1s075 = 0.29920671030107451;
constexpr double kA075 = 0.19947114020071634;
constexpr double kB075 = 0.41731342083703659;
constexpr double kKbar075 = 2.0920992401062033;
constexpr double kMuMid075 = -0.062041264812559073;  // mu((2s-1)/2, 0.75)
constexpr double kMu03_075 = -0.059596300829600874;  // mu(0.3, 0.75)
}  // namespace

TEST_CASE("c_ns closed-form values") {
  CHECK(ct::c_ns(1, FracOrder(0.5)) == doctest::Approx(1.0 / kPi).epsilon(1e-13));
  CHECK(ct::c_ns(1, FracOrder(0.3)) == doctest::Approx(kC1s03).epsilon(1e-13));
  CHECK(ct::c_ns(1, FracOrder(0.75)) ==
        doctest::Approx(kC1s075).epsilon(1e-13));
  // direct Gamma evaluation: Gamma(3/2)/(pi Gamma(1/2)) = 1/(2 pi)
  CHECK(ct::c_ns(2, FracOrder(0.5)) ==
        doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-13));
}

TEST_CASE("c_ns s->1 limit: c_{1,s}/(1-s) -> 2") {
  const double eps = 1e-6;
  const double v = ct::c_ns(1, FracOrder(1.0 - eps)) / eps;
  CHECK(std::abs(v - 2.0) < 1e-5);
}

TEST_CASE("a_s values and positivity") {
  CHECK(ct::a_s(FracOrder(0.5)) == doctest::Approx(1.0 / kPi).epsilon(1e-13));
  CHECK(ct::a_s(FracOrder(0.75)) == doctest::Approx(kA075).epsilon(1e-13));
  for (int k = 1; k < 20; ++k) CHECK(ct::a_s(FracOrder(k / 20.0)) > 0.0);
}

TEST_CASE("b_s values and kernel normalization") {
  CHECK(ct::b_s(FracOrder(0.5)) == doctest::Approx(1.0 / kPi).epsilon(1e-13));
  CHECK(ct::b_s(FracOrder(0.75)) == doctest::Approx(kB075).epsilon(1e-13));

  // quadrature route: b_s * ∫_R (1+u^2)^{-(1+2s)/2} du = 1
  for (double s : {0.3, 0.6, 0.9}) {
    const double sh = 0.5 * (1.0 + 2.0 * s);
    auto f = [&](double u) { return std::pow(1.0 + u * u, -sh); };
    const double T = 50.0;
    auto tail_f = [&](double v) {
      return T * std::pow(v, 2.0 * s - 1.0) *
             std::pow(v * v + T * T, -sh);
    };
    const double core = quad::integrate(f, -T, T, 1e-12).value;
    const double tail =
        quad::integrate_power_left(tail_f, 0.0, 1.0, 2.0 * s - 1.0, 1e-12)
            .value;
    const double total = core + 2.0 * tail;
    CHECK(ct::b_s(FracOrder(s)) * total == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("kappa_bar: ratio identity and values") {
  CHECK(ct::kappa_bar(FracOrder(0.5)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ct::kappa_bar(FracOrder(0.75)) ==
        doctest::Approx(kKbar075).epsilon(1e-13));
  for (double s : {0.2, 0.5, 0.8}) {
    const FracOrder fo(s);
    // by construction (same floating computation)
    CHECK(ct::kappa_bar(fo) == ct::b_s(fo) / ct::a_s(fo));
  }
}

TEST_CASE("mu vanishes exactly at gamma in {0, 2s-1}") {
  for (int k = 0; k < 50; ++k) {
    const double s = 0.01 + (0.98 * k) / 49.0;
    const FracOrder fo(s);
    CHECK(std::abs(ct::mu(0.0, fo)) <= 1e-8);
    CHECK(std::abs(ct::mu(2.0 * s - 1.0, fo)) <= 1e-8);
  }
}

TEST_CASE("mu reference values") {
  CHECK(ct::mu(0.25, FracOrder(0.75)) ==
        doctest::Approx(kMuMid075).epsilon(1e-7));
  CHECK(std::abs(ct::mu(0.25, FracOrder(0.75)) - kMuMid075) < 1e-9);
  CHECK(std::abs(ct::mu(0.3, FracOrder(0.75)) - kMu03_075) < 1e-9);
}

TEST_CASE("hardy identity: Gamma((2s+1)/2)^2/pi = a_s - mu((2s-1)/2, s)") {
  for (double s : {0.3, 0.5, 0.75, 0.9}) {
    const FracOrder fo(s);
    const double lhs = ct::hardy_constant(fo);
    const double rhs = ct::a_s(fo) - ct::mu(0.5 * (2.0 * s - 1.0), fo);
    CHECK(std::abs(lhs - rhs) <= 1e-8);
  }
}

TEST_CASE("mu symmetry under gamma <-> 2s-1-gamma") {
  for (double s : {0.35, 0.6, 0.75}) {
    const FracOrder fo(s);
    for (double g : {-0.2, 0.1, 0.3, 2.0 * s - 1.2}) {
      if (!(g > -1.0 && g < 2.0 * s)) continue;
      CHECK(std::abs(ct::mu(g, fo) - ct::mu(2.0 * s - 1.0 - g, fo)) < 1e-9);
    }
  }
}

TEST_CASE("-mu((2s-1)/2, s) positive away from s = 1/2, zero at 1/2") {
  for (double s : {0.2, 0.35, 0.6, 0.75, 0.9})
    CHECK(-ct::mu(0.5 * (2.0 * s - 1.0), FracOrder(s)) > 0.0);
  CHECK(ct::mu(0.0, FracOrder(0.5)) == 0.0);
}

TEST_CASE("hardy constant endpoints") {
  CHECK(ct::hardy_constant(FracOrder(0.5)) ==
        doctest::Approx(1.0 / kPi).epsilon(1e-13));
  // s -> 1: Gamma(3/2)^2/pi = 1/4
  CHECK(ct::hardy_constant(FracOrder(1.0 - 1e-9)) ==
        doctest::Approx(0.25).epsilon(1e-7));
}

TEST_CASE("gamma_n_limit approaches 2") {
  // limit behaviour of the expression itself as s -> 1
  for (int N : {1, 2, 3}) {
    auto expr = [N](double s) {
      return s * std::pow(4.0, s) * std::tgamma(0.5 * N + s) /
             (2.0 * std::tgamma(2.0 - s) * std::tgamma(0.5 * N + 1.0));
    };
    const double d4 = std::abs(expr(1.0 - 1e-4) - 2.0);
    const double d6 = std::abs(expr(1.0 - 1e-6) - 2.0);
    CHECK(d6 < d4);
    CHECK(std::abs(ct::gamma_n_limit(N) - 2.0) <= 1e-6);
  }
}

TEST_CASE("bundle invariants") {
  for (double s : {0.3, 0.5, 0.75, 0.9}) {
    const auto b = ct::bundle(FracOrder(s));
    CHECK(b.c_ns > 0.0);
    CHECK(b.a_s > 0.0);
    CHECK(b.b_s > 0.0);
    CHECK(b.kappa_bar > 0.0);
    CHECK(b.hardy > 0.0);
    CHECK(b.kappa_bar * b.a_s == doctest::Approx(b.b_s).epsilon(1e-15));
  }
  const auto h = ct::bundle(FracOrder(0.5));
  CHECK(h.c_ns == doctest::Approx(1.0 / kPi).epsilon(1e-14));
  CHECK(h.a_s == doctest::Approx(1.0 / kPi).epsilon(1e-14));
  CHECK(h.b_s == doctest::Approx(1.0 / kPi).epsilon(1e-14));
  CHECK(h.kappa_bar == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(FracOrder(0.0), std::domain_error);
  CHECK_THROWS_AS(FracOrder(1.0), std::domain_error);
  CHECK_THROWS_AS(FracOrder(-0.2), std::domain_error);
  CHECK_THROWS_AS(ct::mu(1.6, FracOrder(0.75)), std::domain_error);
  CHECK_THROWS_AS(ct::mu(-1.0, FracOrder(0.75)), std::domain_error);
  CHECK_THROWS_AS(ct::c_ns(0, FracOrder(0.5)), std::domain_error);
}
