#pragma once

#include <functional>
#include <vector>

namespace fraclap {

/// Declared far-field behaviour of a field, used to complete truncated
/// integrals analytically.
struct TailDescriptor {
  enum class Kind { none, compact, power };

  Kind kind = Kind::none;
  double coefficient = 0.0;
  double exponent = 0.0;
  double start = 0.0;

  /// u vanishes identically beyond |y| >= start.
  static TailDescriptor compact(double start) {
    return {Kind::compact, 0.0, 0.0, start};
  }
  /// u(y) = coefficient * |y|^exponent for |y| >= start.
  static TailDescriptor power(double coefficient, double exponent,
                              double start = 1.0) {
    return {Kind::power, coefficient, exponent, start};
  }
};

enum class Smoothness { piecewise, twice_differentiable, smooth };

/// A user-supplied function together with the analytic metadata the
/// quadrature needs: smoothness near evaluation points, tail behaviour,
/// kink/jump locations and endpoint power exponents.
struct ScalarField {
  std::function<double(double)> value;
  Smoothness smoothness = Smoothness::smooth;

  // Optional derivative callbacks; finite differences are used when absent.
  std::function<double(double)> second_derivative;
  std::function<double(double)> fourth_derivative;

  TailDescriptor tail_right;  // behaviour as y -> +inf
  TailDescriptor tail_left;   // behaviour as y -> -inf

  // Points where the field is not smooth; quadrature ranges split there.
  std::vector<double> breakpoints;

  // u ~ C y^origin_exponent as y -> 0+ (half-line integrands).
  double origin_exponent = 0.0;
  // f ~ delta(x)^endpoint_exponent near interval endpoints (load quadrature).
  double endpoint_exponent = 0.0;

  double operator()(double x) const { return value(x); }
};

/// The power field omega_gamma = x^gamma 1_{(0,inf)}. Requires gamma > -1.
ScalarField omega_gamma(double gamma);

}  // namespace fraclap
