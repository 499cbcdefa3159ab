#include "fraclap/scalar_field.hpp"

#include <cmath>
#include <stdexcept>

namespace fraclap {

ScalarField omega_gamma(double gamma) {
  if (!(gamma > -1.0)) throw std::domain_error("omega_gamma: gamma must be > -1");
  ScalarField f;
  f.value = [gamma](double x) {
    return x > 0.0 ? std::pow(x, gamma) : 0.0;
  };
  f.second_derivative = [gamma](double x) {
    return x > 0.0 ? gamma * (gamma - 1.0) * std::pow(x, gamma - 2.0) : 0.0;
  };
  f.fourth_derivative = [gamma](double x) {
    return x > 0.0 ? gamma * (gamma - 1.0) * (gamma - 2.0) * (gamma - 3.0) *
                         std::pow(x, gamma - 4.0)
                   : 0.0;
  };
  f.tail_right = TailDescriptor::power(1.0, gamma, 1.0);
  f.tail_left = TailDescriptor::compact(0.0);
  f.breakpoints = {0.0};
  f.origin_exponent = gamma;
  return f;
}

}  // namespace fraclap
