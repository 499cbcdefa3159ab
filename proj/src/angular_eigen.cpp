#include "fraclap/angular_eigen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fraclap/constants.hpp"
#include "fraclap/mesh.hpp"
#include "fraclap/quadrature.hpp"

namespace fraclap {

namespace {

constexpr double kPi = std::numbers::pi;

/// ∫_elem sin^{1-2s}(θ) g(θ) dθ where g is smooth and single-signed.
/// Elements touching 0 or π get the power map that absorbs the weight's
/// θ^{1-2s} (resp. (π-θ)^{1-2s}) factor; accuracy is controlled relatively,
/// uniformly in s and in the graded element size.
constexpr double kWeightAbsFloor = 1e-250;

/// Node coordinates are quantized at eps*|theta|, which bounds the relative
/// accuracy any element integral can attain.
inline double element_rel_tol(double hi, double h) {
  return std::max(1e-12, 8.0 * 2.2e-16 * hi / h);
}

template <class G>
double weighted_integral(double lo, double hi, double one_minus_two_s, G&& g) {
  const double rel = element_rel_tol(hi, hi - lo);
  auto f = [&](double th) {
    return std::pow(std::sin(th), one_minus_two_s) * g(th);
  };
  if (lo == 0.0)
    return quad::integrate_power_left(f, lo, hi,
                                      std::min(one_minus_two_s, 0.0),
                                      kWeightAbsFloor, 2000, rel)
        .value;
  return quad::integrate(f, lo, hi, kWeightAbsFloor, 2000, true, rel).value;
}

/// Same integral for the element touching pi, evaluated natively in the
/// boundary distance d = pi - theta (theta itself is quantized at the float
/// spacing of pi); g receives d.
template <class G>
double weighted_integral_pi(double h, double one_minus_two_s, G&& g_of_d) {
  auto f = [&](double d) {
    return std::pow(std::sin(d), one_minus_two_s) * g_of_d(d);
  };
  return quad::integrate_power_left(f, 0.0, h, std::min(one_minus_two_s, 0.0),
                                    kWeightAbsFloor, 2000,
                                    element_rel_tol(kPi, h))
      .value;
}

}  // namespace

AngularProblem assemble_angular(FracOrder s, int n) {
  if (n < 32) throw std::invalid_argument("assemble_angular: n must be >= 32");
  const double omts = 1.0 - s.two_s();
  const double q0 = 0.25 * omts * omts;
  const double bs = constants::b_s(s);

  AngularProblem prob;
  prob.s = s.value();
  prob.flux_constant = bs;
  prob.zeroth_coefficient = q0;
  prob.grid = graded_mesh(0.0, kPi, n, 3.0).nodes;

  const int m = n;  // retained dofs: nodes 0..n-1 (node n at pi eliminated)
  prob.stiffness = Eigen::MatrixXd::Zero(m, m);
  prob.mass = Eigen::MatrixXd::Zero(m, m);

  const auto& th = prob.grid;
  for (int e = 0; e < n; ++e) {
    const double lo = th[e], hi = th[e + 1], h = hi - lo;
    double w00, w01, w11, w_plain;
    if (e == n - 1) {
      // shapes in the distance variable: shape0 = d/h, shape1 = 1 - d/h
      w00 = weighted_integral_pi(h, omts,
                                 [&](double d) { return d * d / (h * h); });
      w01 = weighted_integral_pi(
          h, omts, [&](double d) { return d / h * (1.0 - d / h); });
      w11 = weighted_integral_pi(h, omts, [&](double d) {
        return (1.0 - d / h) * (1.0 - d / h);
      });
      w_plain = weighted_integral_pi(h, omts, [](double) { return 1.0; });
    } else {
      auto shape0 = [&](double x) { return (hi - x) / h; };
      auto shape1 = [&](double x) { return (x - lo) / h; };
      w00 = weighted_integral(
          lo, hi, omts, [&](double x) { return shape0(x) * shape0(x); });
      w01 = weighted_integral(
          lo, hi, omts, [&](double x) { return shape0(x) * shape1(x); });
      w11 = weighted_integral(
          lo, hi, omts, [&](double x) { return shape1(x) * shape1(x); });
      w_plain = weighted_integral(lo, hi, omts, [](double) { return 1.0; });
    }

    const int i0 = e, i1 = e + 1;
    const double grad = w_plain / (h * h);  // sin-weighted ψ'φ' per element
    // stiffness: gradient part + zeroth-order part; mass: weighted products
    auto add = [&](Eigen::MatrixXd& M, int a, int b, double v) {
      if (a < m && b < m) M(a, b) += v;
    };
    add(prob.stiffness, i0, i0, grad + q0 * w00);
    add(prob.stiffness, i1, i1, grad + q0 * w11);
    add(prob.stiffness, i0, i1, -grad + q0 * w01);
    add(prob.stiffness, i1, i0, -grad + q0 * w01);
    add(prob.mass, i0, i0, w00);
    add(prob.mass, i1, i1, w11);
    add(prob.mass, i0, i1, w01);
    add(prob.mass, i1, i0, w01);
  }

  // Robin flux at theta = 0 (natural boundary term, attractive sign).
  prob.stiffness(0, 0) -= bs;
  return prob;
}

std::vector<EigenPair> eigenpairs(const AngularProblem& problem, int k) {
  const int m = static_cast<int>(problem.stiffness.rows());
  const int n = static_cast<int>(problem.grid.size()) - 1;
  if (k < 1 || k > n / 4)
    throw std::invalid_argument("eigenpairs: require 1 <= k <= n/4");

  // Solve the inverted shifted pencil M x = mu (K + M) x, mu = 1/(lambda+1).
  // On graded grids the direct pencil spreads like 1/h_min^2 and the small
  // eigenvalues drown in eps * spread; in the inverted form they are the
  // best-conditioned ones. K + M is positive definite for every s.
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      problem.mass, problem.stiffness + problem.mass,
      Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigenpairs: generalized eigensolve failed");

  std::vector<EigenPair> out;
  out.reserve(k);
  for (int j = 0; j < k; ++j) {
    const int col = m - 1 - j;  // largest mu = smallest lambda
    const double mu = solver.eigenvalues()[col];
    if (!(mu > 0.0))
      throw std::runtime_error("eigenpairs: nonpositive inverted eigenvalue");
    EigenPair p;
    p.lambda = 1.0 / mu - 1.0;
    Eigen::VectorXd v = solver.eigenvectors().col(col);
    v /= std::sqrt(v.dot(problem.mass * v));  // ∫ sin^{1-2s} psi^2 = 1
    // orient: value at theta=0 positive; fall back to the largest entry
    double anchor = v[0];
    if (std::abs(anchor) < 1e-12) {
      int idx = 0;
      v.cwiseAbs().maxCoeff(&idx);
      anchor = v[idx];
    }
    if (anchor < 0) v = -v;
    p.psi = Eigen::VectorXd::Zero(n + 1);
    p.psi.head(m) = v;
    out.push_back(std::move(p));
  }
  return out;
}

GapCheck gap_check(FracOrder s, int n) {
  const AngularProblem prob = assemble_angular(s, n);
  const auto pairs = eigenpairs(prob, 2);
  GapCheck g;
  g.sqrt_lambda2 = std::sqrt(std::max(pairs[1].lambda, 0.0));
  g.margin = 0.5 * (s.two_s() - 1.0) + g.sqrt_lambda2 - s.two_s();
  g.holds = g.margin >= 0.0;
  return g;
}

double w0_angular_profile(double theta, FracOrder s) {
  if (theta <= 0.0) return 1.0;
  if (theta >= kPi) return 0.0;
  const double sigma_half = 0.5 * (1.0 + s.two_s());
  const double bs = constants::b_s(s);
  auto f = [&](double t) { return std::pow(1.0 + t * t, -sigma_half); };

  const double T = -std::cos(theta) / std::sin(theta);  // -cot(theta)
  const double R = std::abs(T) + 10.0;
  // exact remainder beyond R via t = R/v
  auto tail_f = [&](double v) {
    return R * std::pow(v, s.two_s() - 1.0) *
           std::pow(v * v + R * R, -sigma_half);
  };
  const double tail =
      quad::integrate_power_left(tail_f, 0.0, 1.0, s.two_s() - 1.0, 1e-13)
          .value;
  const double core = quad::integrate(f, T, R, 1e-13, 4000).value;
  return bs * (core + tail);
}

double w0_angular_profile_derivative(double theta, FracOrder s) {
  return -constants::b_s(s) * std::pow(std::sin(theta), s.two_s() - 1.0);
}

}  // namespace fraclap
