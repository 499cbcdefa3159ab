#pragma once

#include "fraclap/domain.hpp"
#include "fraclap/frac_order.hpp"
#include "fraclap/scalar_field.hpp"

namespace fraclap {

/// Controls for the principal-value quadrature.
struct QuadSpec {
  double excision = 1e-3;    // cap on the PV excision radius
  double tolerance = 1e-9;   // absolute quadrature tolerance per evaluation
  double tail_radius = 1e4;  // numeric/analytic split on unbounded ranges
  int max_segments = 4000;
  // When set, evaluation refuses points with dist(x, boundary) < 4*excision
  // instead of shrinking the excision adaptively.
  bool pinned_excision = false;
};

struct PointValue {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
};

/// Pointwise regional fractional Laplacian
///   (-Δ)^s_Ω u(x) = c_{1,s} p.v. ∫_Ω (u(x)-u(y)) |x-y|^{-1-2s} dy
/// by symmetric excision with Taylor compensation. x must be interior and u
/// twice differentiable near x.
PointValue regional_flap(const ScalarField& u, const Domain1D& dom, double x,
                         FracOrder s, const QuadSpec& q = {});

/// (-Δ)^s of the zero-extension of a half-line field, evaluated at x > 0.
/// The negative-axis contribution is integrated numerically (truncated, with
/// an exact remainder), so this is an independent route to
/// regional_flap + killing_potential * u(x).
PointValue full_flap_zero_ext(const ScalarField& u, double x, FracOrder s,
                              const QuadSpec& q = {});

/// (-Δ)^s of a field on the whole line (both tail descriptors required).
PointValue full_flap_line(const ScalarField& u, double x, FracOrder s,
                          const QuadSpec& q = {});

/// Killing potential a_s x^{-2s} converting the half-line regional operator
/// into the full operator of the zero extension.
double killing_potential(double x, FracOrder s);

}  // namespace fraclap
