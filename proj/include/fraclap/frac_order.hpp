#pragma once

#include <stdexcept>

namespace fraclap {

/// Fractional exponent s ∈ (0,1) with its regime classification. The
/// endpoints are rejected at construction so downstream formulas never see
/// s ∈ {0,1}.
class FracOrder {
 public:
  enum class Regime { below_half, at_half, above_half };

  explicit FracOrder(double s) : s_(s) {
    if (!(s > 0.0 && s < 1.0))
      throw std::domain_error("fractional order must lie in (0,1)");
  }

  double value() const { return s_; }
  double two_s() const { return 2.0 * s_; }

  Regime regime() const {
    if (s_ < 0.5) return Regime::below_half;
    if (s_ > 0.5) return Regime::above_half;
    return Regime::at_half;
  }

 private:
  double s_;
};

}  // namespace fraclap
