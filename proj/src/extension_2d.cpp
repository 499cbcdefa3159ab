#include "fraclap/extension_2d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fraclap/constants.hpp"
#include "fraclap/quadrature.hpp"

namespace fraclap {

namespace {

/// Exact ∫_R^∞ C y^g ((y-x)² + t²)^{-(1+2s)/2} dy for R > max(x,0) via
/// y = R/v.
double extension_power_tail(double C, double g, double R, double x, double t,
                            double two_s, double abs_tol) {
  if (C == 0.0) return 0.0;
  const double sh = 0.5 * (1.0 + two_s);
  const double alpha = two_s - 1.0 - g;
  auto f = [&](double v) {
    const double d = R - x * v;
    return std::pow(v, alpha) * std::pow(d * d + t * t * v * v, -sh);
  };
  const double scale = C * std::pow(R, 1.0 + g);
  return scale * quad::integrate_power_left(f, 0.0, 1.0, alpha,
                                            abs_tol / std::abs(scale))
                     .value;
}

void check_tail(const TailDescriptor& tail, double two_s) {
  if (tail.kind == TailDescriptor::Kind::none)
    throw std::invalid_argument(
        "poisson_extend: tail descriptors required on both sides");
  if (tail.kind == TailDescriptor::Kind::power && !(tail.exponent < two_s))
    throw std::invalid_argument(
        "poisson_extend: tail exponent >= 2s, extension integral diverges");
}

}  // namespace

double poisson_extend(const ScalarField& u, HalfPlanePoint p, FracOrder s,
                      double abs_tol) {
  if (!(p.t > 0.0)) throw std::domain_error("poisson_extend: requires t > 0");
  const double two_s = s.two_s();
  check_tail(u.tail_right, two_s);
  check_tail(u.tail_left, two_s);

  const double sh = 0.5 * (1.0 + two_s);
  const double bs = constants::b_s(s);
  const double pre = bs * std::pow(p.t, two_s);
  auto kernel = [&](double y) {
    const double d = p.x - y;
    return std::pow(d * d + p.t * p.t, -sh);
  };
  auto g = [&](double y) { return u(y) * kernel(y); };

  const double R = std::max({u.tail_right.start, p.x + 10.0 * p.t,
                             p.x + 10.0, 2.0 * std::abs(p.x) + 1.0});
  const double L = std::min({-u.tail_left.start, p.x - 10.0 * p.t, p.x - 10.0,
                             -2.0 * std::abs(p.x) - 1.0});

  // numeric core, split at the field's breakpoints and at the kernel peak
  std::vector<double> cuts{L, R};
  for (double bp : u.breakpoints)
    if (bp > L && bp < R) cuts.push_back(bp);
  for (double c : {p.x - p.t, p.x, p.x + p.t})
    if (c > L && c < R) cuts.push_back(c);
  std::sort(cuts.begin(), cuts.end());
  const double tol = abs_tol / (2.0 * pre * cuts.size());

  double core = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    if (!(hi > lo)) continue;
    if (lo == 0.0 && u.origin_exponent < 0.0)
      core += quad::integrate_power_left(g, lo, hi, u.origin_exponent, tol)
                  .value;
    else if (hi == 0.0 && u.origin_exponent < 0.0)
      core += quad::integrate_power_right(g, lo, hi, u.origin_exponent, tol)
                  .value;
    else
      core += quad::integrate(g, lo, hi, tol).value;
  }

  double tails = 0.0;
  if (u.tail_right.kind == TailDescriptor::Kind::power)
    tails += extension_power_tail(u.tail_right.coefficient,
                                  u.tail_right.exponent, R, p.x, p.t, two_s,
                                  abs_tol / (2.0 * pre));
  if (u.tail_left.kind == TailDescriptor::Kind::power)
    tails += extension_power_tail(u.tail_left.coefficient,
                                  u.tail_left.exponent, -L, -p.x, p.t, two_s,
                                  abs_tol / (2.0 * pre));
  return pre * (core + tails);
}

double w_gamma(double gamma, HalfPlanePoint p, FracOrder s, double abs_tol) {
  if (!(gamma < s.two_s()))
    throw std::domain_error("w_gamma: gamma must be < 2s");
  return poisson_extend(omega_gamma(gamma), p, s, abs_tol);
}

FluxResult extension_flux(const ScalarField& u, double x0, FracOrder s) {
  const double two_s = s.two_s();
  // Noise in the difference quotient scales like quad_tol * t^{-2s} / h, so
  // the tolerance is tight and the dyadic sequence stops at 2^-10.
  const double quad_tol = 1e-13;

  std::vector<double> gs;
  for (int k = 3; k <= 10; ++k) {
    const double t = std::pow(2.0, -k);
    const double h = t / 50.0;
    const double wp = poisson_extend(u, {x0, t + h}, s, quad_tol);
    const double wm = poisson_extend(u, {x0, t - h}, s, quad_tol);
    gs.push_back(std::pow(t, 1.0 - two_s) * (wp - wm) / (2.0 * h));
  }

  // Richardson with the extension's correction exponents.
  const double exps[3] = {2.0 - two_s, 2.0, 4.0 - two_s};
  std::vector<double> level = gs;
  double prev_last = gs.back();
  for (double p : exps) {
    if (level.size() < 2) break;
    const double r = std::pow(2.0, p);
    std::vector<double> next(level.size() - 1);
    for (std::size_t i = 0; i + 1 < level.size(); ++i)
      next[i] = (r * level[i + 1] - level[i]) / (r - 1.0);
    prev_last = level.back();
    level = std::move(next);
  }

  FluxResult out;
  out.flux = level.back();
  out.error_estimate = std::abs(out.flux - prev_last);
  out.first_correction_exponent = 2.0 - two_s;
  if (!std::isfinite(out.flux))
    throw std::runtime_error("extension_flux: extrapolation diverged");
  return out;
}

}  // namespace fraclap
