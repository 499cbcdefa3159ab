#pragma once

#include "fraclap/frac_order.hpp"

namespace fraclap::constants {

/// Normalizer of the fractional Laplacian, c_{N,s} = s 4^s Γ(N/2+s) /
/// (π^{N/2} Γ(1−s)).
double c_ns(int dimension, FracOrder s);

/// Killing amplitude a_s = c_{1,s}/(2s): the half-line potential is
/// a_s x^{−2s}.
double a_s(FracOrder s);

/// Poisson-kernel normalizer b_s = Γ(s+1/2)/(√π Γ(s)), i.e. the reciprocal of
/// ∫_R (1+u²)^{−(1+2s)/2} du.
double b_s(FracOrder s);

/// Extension flux constant κ̄_s := b_s/a_s (equals 2^{1−2s}Γ(1−s)/Γ(s);
/// κ̄_{1/2}=1).
double kappa_bar(FracOrder s);

/// Power-function multiplier of the half-line regional operator,
///   μ(γ,s) = c_{1,s} ∫₀¹ (t^γ−1)(1−t^{2s−1−γ}) (1−t)^{−1−2s} dt,
/// valid for γ ∈ (−1, 2s); absolute quadrature error ≤ 1e−9.
/// Vanishes exactly at γ ∈ {0, 2s−1}.
double mu(double gamma, FracOrder s);

/// Sharp constant Γ((2s+1)/2)²/π of the full-line fractional Hardy
/// inequality; equals a_s − μ((2s−1)/2, s).
double hardy_constant(FracOrder s);

/// Numeric s→1 limit of c_{N,s}|B₁|/(2(1−s)), evaluated at s = 1−1e−8.
/// Analytically 2 for every N.
double gamma_n_limit(int dimension);

/// All scalar constants for one order, with the derived identity
/// kappa_bar·a_s = b_s holding by construction.
struct ConstantsBundle {
  double c_ns;
  double a_s;
  double b_s;
  double kappa_bar;
  double hardy;
  int dimension;
};
ConstantsBundle bundle(FracOrder s, int dimension = 1);

}  // namespace fraclap::constants
