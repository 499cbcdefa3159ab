#include "fraclap/constants.hpp"

#include <cmath>
#include <numbers>

#include "fraclap/quadrature.hpp"

namespace fraclap::constants {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;
}  // namespace

double c_ns(int dimension, FracOrder s) {
  if (dimension < 1) throw std::domain_error("c_ns: dimension must be >= 1");
  const double sv = s.value();
  return sv * std::pow(4.0, sv) * std::tgamma(0.5 * dimension + sv) /
         (std::pow(kPi, 0.5 * dimension) * std::tgamma(1.0 - sv));
}

double a_s(FracOrder s) { return c_ns(1, s) / (2.0 * s.value()); }

double b_s(FracOrder s) {
  const double sv = s.value();
  return std::tgamma(sv + 0.5) / (kSqrtPi * std::tgamma(sv));
}

double kappa_bar(FracOrder s) { return b_s(s) / a_s(s); }

double mu(double gamma, FracOrder s) {
  const double sv = s.value();
  if (!(gamma > -1.0 && gamma < 2.0 * sv))
    throw std::domain_error("mu: gamma must lie in (-1, 2s)");

  const double beta = 2.0 * sv - 1.0 - gamma;  // second numerator exponent
  if (gamma == 0.0 || beta == 0.0) return 0.0;  // integrand vanishes identically

  const double sigma = 1.0 + 2.0 * sv;

  // Integrand in the variable u = 1-t; expm1/log1p keep the numerator
  // accurate when u is many orders below machine epsilon of t. Both mapped
  // endpoints vanish after the power substitutions; underflowed arguments
  // return the limit 0 directly.
  auto f_of_u = [&](double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    const double l = std::log1p(-u);  // log t
    const double n1 = std::expm1(gamma * l);
    const double n2 = -std::expm1(beta * l);
    return n1 * n2 * std::pow(u, -sigma);
  };

  // t in (0, 1/2): integrable endpoint power at t -> 0 of exponent
  // min(0, gamma, 2s-1, beta); evaluated directly in t so sub-epsilon
  // arguments keep full precision.
  auto f_of_t = [&](double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double l = std::log(t);
    const double n1 = std::expm1(gamma * l);
    const double n2 = -std::expm1(beta * l);
    return n1 * n2 * std::exp(-sigma * std::log1p(-t));
  };
  const double e0 = std::min({0.0, gamma, 2.0 * sv - 1.0, beta});
  quad::Result left =
      quad::integrate_power_left(f_of_t, 0.0, 0.5, e0, 5e-11, 4000);

  // u in (0, 1/2) i.e. t in (1/2, 1): the numerator vanishes like u^2, so the
  // integrand carries the power u^{1-2s} (> -1).
  quad::Result right =
      quad::integrate_power_left(f_of_u, 0.0, 0.5, 1.0 - 2.0 * sv, 5e-11, 4000);

  return c_ns(1, s) * (left.value + right.value);
}

double hardy_constant(FracOrder s) {
  const double g = std::tgamma(s.value() + 0.5);
  return g * g / kPi;
}

double gamma_n_limit(int dimension) {
  if (dimension < 1)
    throw std::domain_error("gamma_n_limit: dimension must be >= 1");
  // c_{N,s}|B_1|/(2(1-s)) with |B_1| = pi^{N/2}/Gamma(N/2+1) and
  // (1-s)Gamma(1-s) written as Gamma(2-s) to avoid cancellation.
  const double sv = 1.0 - 1e-8;
  return sv * std::pow(4.0, sv) * std::tgamma(0.5 * dimension + sv) /
         (2.0 * std::tgamma(2.0 - sv) * std::tgamma(0.5 * dimension + 1.0));
}

ConstantsBundle bundle(FracOrder s, int dimension) {
  ConstantsBundle b;
  b.c_ns = c_ns(dimension, s);
  b.a_s = a_s(s);
  b.b_s = b_s(s);
  b.kappa_bar = b.b_s / b.a_s;
  b.hardy = hardy_constant(s);
  b.dimension = dimension;
  return b;
}

}  // namespace fraclap::constants
