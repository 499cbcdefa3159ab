#pragma once

#include "fraclap/frac_order.hpp"
#include "fraclap/scalar_field.hpp"

namespace fraclap {

struct HalfPlanePoint {
  double x = 0.0;
  double t = 1.0;  // must be > 0
};

/// Caffarelli-Silvestre harmonic extension
///   w(x,t) = b_s t^{2s} ∫_R u(y) (|x-y|² + t²)^{-(1+2s)/2} dy.
/// Requires tail descriptors on both sides with power exponents < 2s.
double poisson_extend(const ScalarField& u, HalfPlanePoint p, FracOrder s,
                      double abs_tol = 1e-9);

/// Extension of the power field omega_gamma (gamma in (-1, 2s)).
double w_gamma(double gamma, HalfPlanePoint p, FracOrder s,
               double abs_tol = 1e-9);

struct FluxResult {
  double flux = 0.0;  // lim_{t->0} t^{1-2s} ∂_t w  (= -kappa_bar (-Δ)^s u)
  double error_estimate = 0.0;
  double first_correction_exponent = 0.0;  // 2-2s, recorded with the result
};

/// Weighted normal flux of the extension at (x0, 0): central differences in t
/// on a dyadic sequence, Richardson-extrapolated with exponents
/// {2-2s, 2, 4-2s}.
FluxResult extension_flux(const ScalarField& u, double x0, FracOrder s);

}  // namespace fraclap
