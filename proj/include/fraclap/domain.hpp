#pragma once

#include <limits>
#include <stdexcept>

namespace fraclap {

/// Computational domain: a bounded interval (a,b) or the half-line (0,∞).
struct Domain1D {
  enum class Kind { interval, half_line };

  Kind kind = Kind::interval;
  double a = 0.0;
  double b = 1.0;

  static Domain1D interval(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("interval requires a < b");
    return {Kind::interval, a, b};
  }
  static Domain1D half_line() {
    return {Kind::half_line, 0.0, std::numeric_limits<double>::infinity()};
  }

  double diameter() const {
    return kind == Kind::interval ? b - a
                                  : std::numeric_limits<double>::infinity();
  }
  bool contains_closure(double x) const {
    return kind == Kind::interval ? (x >= a && x <= b) : (x >= 0.0);
  }
};

}  // namespace fraclap
