#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>

#include "fraclap/frac_order.hpp"
#include "fraclap/mesh.hpp"
#include "fraclap/scalar_field.hpp"

namespace fraclap {

enum class Bc { neumann, dirichlet };

/// Dense Galerkin system of the nonlocal form C_{s,Omega} over all nodal hat
/// functions.
struct NonlocalSystem {
  GradedMesh mesh;
  double s = 0.5;
  Bc bc = Bc::neumann;
  Eigen::MatrixXd stiffness;   // (n+1) x (n+1), entry (i,j) = C(phi_i, phi_j)
  Eigen::VectorXd hat_masses;  // ∫ phi_i
  double assembly_seconds = 0.0;
};

/// Assemble C_{s,Omega} over hats. OpenMP-parallel over element pairs with a
/// fixed pair enumeration; the result is bitwise independent of the thread
/// count. Dirichlet with s <= 1/2 is rejected (the two problems coincide
/// there; use the Neumann path).
NonlocalSystem assemble(const GradedMesh& mesh, FracOrder s, Bc bc);

/// Serial reference assembly; produces bitwise the same matrix as assemble().
NonlocalSystem assemble_serial(const GradedMesh& mesh, FracOrder s, Bc bc);

/// Load vector ∫ f phi_i (per-entry Gauss-Kronrod; endpoint power maps when
/// the field declares a negative endpoint_exponent).
Eigen::VectorXd load(const GradedMesh& mesh, const ScalarField& f);

/// Bilinear form value u^T A v.
double energy(const NonlocalSystem& sys, const Eigen::VectorXd& u,
              const Eigen::VectorXd& v);

struct SolveDiagnostics {
  double assembly_seconds = 0.0;
  double solver_residual = 0.0;
  double constraint_residual = 0.0;
};

struct SolveResult {
  Eigen::VectorXd values;  // nodal values over all mesh nodes
  Bc bc = Bc::neumann;
  double s = 0.5;
  GradedMesh mesh;
  SolveDiagnostics diagnostics;
};

/// Thrown when the Neumann datum fails the zero-mean compatibility test.
class CompatibilityError : public std::runtime_error {
 public:
  CompatibilityError(const std::string& what, double measured_integral)
      : std::runtime_error(what), integral_(measured_integral) {}
  double measured_integral() const { return integral_; }

 private:
  double integral_;
};

SolveResult solve_dirichlet(const GradedMesh& mesh, FracOrder s,
                            const ScalarField& f);
SolveResult solve_neumann(const GradedMesh& mesh, FracOrder s,
                          const ScalarField& f);

/// Variants reusing an assembled system.
SolveResult solve_dirichlet(const NonlocalSystem& sys,
                            const Eigen::VectorXd& load_vector);
SolveResult solve_neumann(const NonlocalSystem& sys,
                          const Eigen::VectorXd& load_vector,
                          double f_integral, double f_l1_norm);

// --- P1 utilities -----------------------------------------------------------

double l2_distance(const GradedMesh& mesh, const Eigen::VectorXd& nodal,
                   const std::function<double(double)>& reference);
double mean_value(const GradedMesh& mesh, const Eigen::VectorXd& nodal);
double l1_norm(const GradedMesh& mesh, const ScalarField& f);

namespace detail {

/// Raw ∬_{e x f} D_i D_j |x-y|^{-1-2s} over the slot nodes
/// {e, e+1, f, f+1}; upper triangle of the 4x4 is filled.
struct PairBlock {
  double v[4][4];
};
PairBlock pair_block(const GradedMesh& mesh, int e, int f, double two_s);

void scatter_block(Eigen::MatrixXd& A, int e, int f, const PairBlock& block,
                   double c1s);

Eigen::VectorXd hat_masses(const GradedMesh& mesh);

}  // namespace detail

}  // namespace fraclap
