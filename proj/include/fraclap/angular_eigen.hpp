#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fraclap/frac_order.hpp"

namespace fraclap {

/// Weighted Sturm-Liouville problem on (0,pi):
///   -(sin^{1-2s}θ ψ')' + ((1-2s)²/4) sin^{1-2s}θ ψ = λ sin^{1-2s}θ ψ,
/// with the flux condition -lim_{θ→0} sin^{1-2s}θ ψ'(θ) = b_s ψ(0) entering
/// the form as the point term -b_s ψ(0)φ(0), and ψ(π) = 0.
struct AngularProblem {
  double s = 0.5;
  std::vector<double> grid;    // nodes on [0,pi], graded toward both ends
  Eigen::MatrixXd stiffness;   // over nodes 0..m-1 (Dirichlet node eliminated)
  Eigen::MatrixXd mass;
  double flux_constant = 0.0;  // kappa_bar * a_s = b_s
  double zeroth_coefficient = 0.0;  // (1-2s)^2/4
};

/// P1 discretization with n >= 32 elements; weighted element integrals use
/// endpoint power maps so accuracy is uniform in s.
AngularProblem assemble_angular(FracOrder s, int n);

struct EigenPair {
  double lambda = 0.0;
  Eigen::VectorXd psi;  // all grid nodes including theta = pi (ψ(π)=0 exact)
};

/// First k eigenpairs, ascending, normalized to ∫ sin^{1-2s}θ ψ² dθ = 1 and
/// signed so ψ(0) >= 0. Requires k <= n/4.
std::vector<EigenPair> eigenpairs(const AngularProblem& problem, int k);

struct GapCheck {
  bool holds = false;
  double margin = 0.0;  // (2s-1)/2 + sqrt(lambda_2) - 2s
  double sqrt_lambda2 = 0.0;
};
GapCheck gap_check(FracOrder s, int n = 512);

/// The angular profile of the extension of the half-line indicator,
///   ŵ₀(θ) = b_s ∫_{-cot θ}^∞ (1+t²)^{-(1+2s)/2} dt,
/// with limits 1 at θ=0 and 0 at θ=π.
double w0_angular_profile(double theta, FracOrder s);

/// Closed-form derivative ŵ₀'(θ) = -b_s sin^{2s-1}θ.
double w0_angular_profile_derivative(double theta, FracOrder s);

}  // namespace fraclap
