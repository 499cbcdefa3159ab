#pragma once

#include <utility>
#include <vector>

#include "fraclap/galerkin.hpp"

namespace fraclap {

/// Fitted power law value ≈ constant * delta^exponent over a window.
struct RateFit {
  double exponent = 0.0;
  double constant = 0.0;
  double delta_min = 0.0;
  double delta_max = 0.0;
  double residual = 0.0;  // max relative deviation on the window
  int points = 0;
};

/// Log-log least squares on (delta, |value|) samples. At most 10% zeros are
/// dropped; requires >= 6 surviving samples.
RateFit fit_boundary_rate(std::vector<std::pair<double, double>> samples);

/// Probe window for boundary extraction:
/// [20 * smallest element, 0.1 * domain radius].
std::pair<double, double> probe_window(const GradedMesh& mesh);

struct EndpointTrace {
  double trace = 0.0;                // extrapolated limit of v / delta^{2s-1}
  double extrapolation_spread = 0.0;
  RateFit flatness;                  // fit of |r - trace| vs delta
  bool zero_trace = false;
};

struct BoundaryRatio {
  EndpointTrace left, right;
  double window_lo = 0.0, window_hi = 0.0;
};

/// Trace of v/delta^{2s-1} at both endpoints of a Dirichlet solution, by
/// Richardson extrapolation on a geometric ladder of window nodes.
BoundaryRatio dirichlet_boundary_ratio(const SolveResult& v);

struct WeightedGradientSide {
  double limit = 0.0;               // extrapolated delta^{2-2s} * inward v'
  double relation_residual = 0.0;   // |limit - (2s-1) trace| / |(2s-1) trace|
  bool zero_trace = false;
};

struct WeightedGradient {
  WeightedGradientSide left, right;
};

/// Checks delta^{2-2s} v' = (2s-1) v/delta^{2s-1} at the boundary (inward
/// orientation), using one-sided quotients on the graded nodes.
WeightedGradient dirichlet_weighted_gradient(const SolveResult& v);

struct NormalDerivativeSide {
  double first_quotient_limit = 0.0;  // lim (u(sigma+t)-u(sigma))/t
  bool first_quotient_divergent = false;
  double ns_quotient_limit = 0.0;     // lim (u(sigma+t)-u(sigma))/t^{2s-1}
  double increment_exponent = 0.0;    // fitted exponent of |u(sigma+t)-u(sigma)|
  RateFit first_quotient_fit;         // |q1| vs t
};

struct NormalDerivative {
  NormalDerivativeSide left, right;
};

/// Difference-quotient limits of a Neumann solution at both endpoints.
NormalDerivative neumann_normal_derivative(const SolveResult& u);

/// Brute-force Hölder seminorm sup |u_i - u_j| / |x_i - x_j|^alpha over all
/// node pairs; alpha in (0,1].
double holder_estimate(const std::vector<double>& xs,
                       const std::vector<double>& values, double alpha);

struct SToOneRow {
  double s = 0.0;
  Bc bc = Bc::neumann;
  double l2_error = 0.0;  // distance to the classical solution of -u'' = f
};

/// Solves the nonlocal Neumann and Dirichlet problems for each s and reports
/// the L2 distance to the classical solutions (tridiagonal P1 reference).
std::vector<SToOneRow> s_to_one_comparison(const ScalarField& f,
                                           const std::vector<double>& s_list,
                                           const GradedMesh& mesh);

/// Classical P1 solution of -u'' = f on the mesh (Dirichlet: u = 0 at both
/// ends; Neumann: u'(boundary) = 0 with zero mean).
Eigen::VectorXd classical_solution(const GradedMesh& mesh,
                                   const ScalarField& f, Bc bc);

}  // namespace fraclap
