#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "fraclap/regularity.hpp"

using namespace fraclap;

namespace {

ScalarField make_field(std::function<double(double)> v) {
  ScalarField f;
  f.value = std::move(v);
  return f;
}

/// SolveResult with injected nodal data (synthetic probes).
SolveResult synthetic(const GradedMesh& mesh, double s, Bc bc,
                      const std::function<double(double)>& fn) {
  SolveResult r;
  r.mesh = mesh;
  r.s = s;
  r.bc = bc;
  r.values.resize(mesh.nodes.size());
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i)
    r.values[i] = fn(mesh.nodes[i]);
  return r;
}

double boundary_distance(const GradedMesh& mesh, double x) {
  return std::min(x - mesh.domain.a, mesh.domain.b - x);
}

}  // namespace

TEST_CASE("fit_boundary_rate on exact power laws") {
  SUBCASE("v = 3 delta^0.5") {
    std::vector<std::pair<double, double>> samples;
    for (int k = 0; k < 12; ++k) {
      const double d = 1e-3 * std::pow(1.7, k);
      samples.emplace_back(d, 3.0 * std::sqrt(d));
    }
    const RateFit fit = fit_boundary_rate(samples);
    CHECK(fit.exponent == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fit.constant == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.residual <= 1e-12);
    CHECK(fit.points == 12);
  }
  SUBCASE("v = delta") {
    std::vector<std::pair<double, double>> samples;
    for (int k = 0; k < 8; ++k)
      samples.emplace_back(0.01 * (k + 1), 0.01 * (k + 1));
    CHECK(fit_boundary_rate(samples).exponent ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("exponent grid recovery") {
    for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      std::vector<std::pair<double, double>> samples;
      for (int k = 0; k < 10; ++k) {
        const double d = 2e-3 * std::pow(2.0, k);
        samples.emplace_back(d, 1.7 * std::pow(d, alpha));
      }
      CHECK(fit_boundary_rate(samples).exponent ==
            doctest::Approx(alpha).epsilon(1e-6));
    }
  }
  SUBCASE("perturbed power law on a thin window") {
    std::vector<std::pair<double, double>> samples;
    for (int k = 0; k < 10; ++k) {
      const double d = 1e-3 * std::pow(10.0, k / 9.0);
      samples.emplace_back(d, std::sqrt(d) * (1.0 + 0.1 * d));
    }
    const RateFit fit = fit_boundary_rate(samples);
    CHECK(std::abs(fit.exponent - 0.5) <= 0.01);
  }
  SUBCASE("rejections") {
    std::vector<std::pair<double, double>> few{{0.1, 1.0}, {0.2, 2.0}};
    CHECK_THROWS_AS(fit_boundary_rate(few), std::invalid_argument);
    std::vector<std::pair<double, double>> zeros;
    for (int k = 0; k < 10; ++k)
      zeros.emplace_back(0.01 * (k + 1), k < 5 ? 0.0 : 1.0);
    CHECK_THROWS_AS(fit_boundary_rate(zeros), std::invalid_argument);
  }
}

TEST_CASE("dirichlet_boundary_ratio on synthetic data") {
  const GradedMesh mesh = graded_mesh(-1.0, 1.0, 256, 3.0);
  const double s = 0.75, alpha = 2.0 * s - 1.0;
  SUBCASE("zero solution reports zero trace") {
    const SolveResult v = synthetic(mesh, s, Bc::dirichlet, [](double) { return 0.0; });
    const BoundaryRatio r = dirichlet_boundary_ratio(v);
    CHECK(r.left.zero_trace);
    CHECK(r.right.zero_trace);
  }
  SUBCASE("pure power profile has unit trace") {
    const SolveResult v = synthetic(mesh, s, Bc::dirichlet, [&](double x) {
      return std::pow(boundary_distance(mesh, x), alpha);
    });
    const BoundaryRatio r = dirichlet_boundary_ratio(v);
    CHECK(r.left.trace == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.right.trace == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("requires a Dirichlet solution") {
    const SolveResult u = synthetic(mesh, s, Bc::neumann, [](double) { return 1.0; });
    CHECK_THROWS_AS(dirichlet_boundary_ratio(u), std::invalid_argument);
  }
  SUBCASE("window-too-thin error on a coarse mesh") {
    const GradedMesh coarse = graded_mesh(-1.0, 1.0, 8, 1.0);
    const SolveResult v = synthetic(coarse, s, Bc::dirichlet, [&](double x) {
      return std::pow(boundary_distance(coarse, x), alpha);
    });
    CHECK_THROWS_AS(dirichlet_boundary_ratio(v), std::runtime_error);
  }
}

TEST_CASE("dirichlet_weighted_gradient on synthetic data") {
  const double s = 0.8, alpha = 2.0 * s - 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int n : {256, 512}) {
    const GradedMesh mesh = graded_mesh(-1.0, 1.0, n, 3.0);
    const SolveResult v = synthetic(mesh, s, Bc::dirichlet, [&](double x) {
      return std::pow(boundary_distance(mesh, x), alpha);
    });
    const WeightedGradient g = dirichlet_weighted_gradient(v);
    CHECK(g.left.relation_residual < prev + 1e-12);
    prev = g.left.relation_residual;
    CHECK(g.left.relation_residual <= 0.02);
    CHECK(g.right.relation_residual <= 0.02);
  }
}

TEST_CASE("real Dirichlet run: ratio and gradient agree") {
  const FracOrder s(0.8);
  const GradedMesh mesh = graded_mesh(-1.0, 1.0, 512, default_dirichlet_grading(s));
  const SolveResult v = solve_dirichlet(mesh, s, make_field([](double) { return 1.0; }));
  const BoundaryRatio r = dirichlet_boundary_ratio(v);
  CHECK(r.left.trace > 0.0);
  CHECK(r.right.trace > 0.0);
  CHECK(std::abs(r.left.trace - r.right.trace) <=
        0.01 * std::max(r.left.trace, r.right.trace));
  const WeightedGradient g = dirichlet_weighted_gradient(v);
  CHECK(g.left.relation_residual <= 0.10);
  CHECK(g.right.relation_residual <= 0.10);
}

TEST_CASE("neumann_normal_derivative") {
  const double s = 0.8;
  const GradedMesh mesh = graded_mesh(-1.0, 1.0, 512, 2.0);
  SUBCASE("constant data: both quotients vanish") {
    const SolveResult u = synthetic(mesh, s, Bc::neumann, [](double) { return 3.0; });
    const NormalDerivative nd = neumann_normal_derivative(u);
    CHECK(std::abs(nd.left.first_quotient_limit) <= 1e-12);
    CHECK(std::abs(nd.right.ns_quotient_limit) <= 1e-12);
  }
  SUBCASE("pure boundary power: first quotient diverges with exponent 2s-2") {
    const SolveResult u = synthetic(mesh, s, Bc::neumann, [&](double x) {
      return std::pow(boundary_distance(mesh, x), 2.0 * s - 1.0);
    });
    const NormalDerivative nd = neumann_normal_derivative(u);
    CHECK(nd.left.first_quotient_divergent);
    CHECK(nd.left.first_quotient_fit.exponent ==
          doctest::Approx(2.0 * s - 2.0).epsilon(0.05));
    CHECK(nd.left.increment_exponent ==
          doctest::Approx(2.0 * s - 1.0).epsilon(0.05));
  }
  SUBCASE("requires a Neumann solution") {
    const SolveResult v = synthetic(mesh, s, Bc::dirichlet, [](double) { return 0.0; });
    CHECK_THROWS_AS(neumann_normal_derivative(v), std::invalid_argument);
  }
}

TEST_CASE("holder_estimate") {
  std::vector<double> xs, id, cst, root;
  for (int i = 0; i <= 50; ++i) {
    const double x = i / 50.0;
    xs.push_back(x);
    id.push_back(x);
    cst.push_back(4.2);
    root.push_back(std::sqrt(x));
  }
  CHECK(holder_estimate(xs, id, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(holder_estimate(xs, cst, 0.7) == 0.0);
  CHECK(holder_estimate(xs, root, 0.5) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(holder_estimate(xs, id, 0.0), std::domain_error);
  CHECK_THROWS_AS(holder_estimate(xs, id, 1.5), std::domain_error);
}

TEST_CASE("classical tridiagonal reference matches closed forms") {
  const GradedMesh mesh = graded_mesh(-1.0, 1.0, 64, 1.0);
  SUBCASE("Dirichlet, f = 1: u = (1-x^2)/2") {
    const Eigen::VectorXd u =
        classical_solution(mesh, make_field([](double) { return 1.0; }), Bc::dirichlet);
    for (int i = 0; i < u.size(); ++i) {
      const double x = mesh.nodes[i];
      CHECK(u[i] == doctest::Approx(0.5 * (1.0 - x * x)).epsilon(1e-10).scale(1.0));
    }
  }
  SUBCASE("Neumann, f = x: u = x(3-x^2)/6, mean zero") {
    const Eigen::VectorXd u =
        classical_solution(mesh, make_field([](double x) { return x; }), Bc::neumann);
    for (int i = 0; i < u.size(); ++i) {
      const double x = mesh.nodes[i];
      CHECK(u[i] ==
            doctest::Approx(x * (3.0 - x * x) / 6.0).epsilon(1e-4).scale(1.0));
    }
  }
}

TEST_CASE("s_to_one_comparison basics") {
  const GradedMesh mesh = graded_mesh(-1.0, 1.0, 32, 1.0);
  SUBCASE("zero datum gives zero errors") {
    const auto rows =
        s_to_one_comparison(make_field([](double) { return 0.0; }), {0.9}, mesh);
    for (const auto& r : rows) CHECK(r.l2_error <= 1e-10);
  }
  SUBCASE("errors shrink towards s = 1") {
    const auto rows = s_to_one_comparison(make_field([](double x) { return x; }),
                                          {0.9, 0.99}, mesh);
    double e09 = -1.0, e099 = -1.0;
    for (const auto& r : rows)
      if (r.bc == Bc::neumann) (r.s == 0.9 ? e09 : e099) = r.l2_error;
    REQUIRE(e09 >= 0.0);
    REQUIRE(e099 >= 0.0);
    CHECK(e099 < e09);
  }
}
