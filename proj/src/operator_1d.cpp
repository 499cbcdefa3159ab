#include "fraclap/operator_1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fraclap/constants.hpp"
#include "fraclap/mesh.hpp"
#include "fraclap/quadrature.hpp"

namespace fraclap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative floor for the PV pieces: the integrand carries the subtractive
// noise of u(x)-u(y), so demanding much below 1e-10 of the piece magnitude
// only exhausts budgets near the boundary. The achieved estimate is still
// reported with the value.
constexpr double kPieceRel = 1e-10;

double breakpoint_distance(const ScalarField& u, double x) {
  double d = kInf;
  for (double bp : u.breakpoints) d = std::min(d, std::abs(x - bp));
  return d;
}

struct Derivatives {
  double d2 = 0.0, d4 = 0.0;
  double d2_error = 0.0;
};

Derivatives local_derivatives(const ScalarField& u, double x, double radius) {
  Derivatives d;
  if (u.second_derivative) {
    d.d2 = u.second_derivative(x);
  }
  if (u.fourth_derivative) {
    d.d4 = u.fourth_derivative(x);
  } else {
    const double h = std::min(1e-2, radius / 4.0);
    d.d4 = (u(x - 2 * h) - 4 * u(x - h) + 6 * u(x) - 4 * u(x + h) +
            u(x + 2 * h)) /
           (h * h * h * h);
  }
  if (!u.second_derivative) {
    const double h = std::min(1e-4, radius / 4.0);
    d.d2 = (u(x - h) - 2 * u(x) + u(x + h)) / (h * h);
    d.d2_error = h * h * (std::abs(d.d4) + 1.0) / 12.0 +
                 4e-16 * (std::abs(u(x)) + 1.0) / (h * h);
  }
  return d;
}

/// Adaptive integration of f over (lo,hi) split at the field's breakpoints.
template <class F>
quad::Result integrate_split(F&& f, double lo, double hi,
                             const std::vector<double>& breakpoints,
                             double abs_tol, int max_segments,
                             double rel_tol = kPieceRel) {
  std::vector<double> cuts{lo};
  for (double bp : breakpoints)
    if (bp > lo && bp < hi) cuts.push_back(bp);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  quad::Result acc;
  const double each = abs_tol / static_cast<double>(cuts.size() - 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    acc += quad::integrate(f, cuts[i], cuts[i + 1], each, max_segments, true,
                           rel_tol);
  return acc;
}

/// Exact ∫_R^∞ y^gamma (y-x)^{-1-2s} dy for R > max(x,0), via y = R/v:
///   R^{1+gamma} ∫_0^1 v^{2s-1-gamma} (R - x v)^{-1-2s} dv.
quad::Result power_tail_integral(double coefficient, double gamma, double R,
                                 double x, double two_s, double abs_tol) {
  if (coefficient == 0.0) return {};
  const double sigma = 1.0 + two_s;
  const double alpha = two_s - 1.0 - gamma;
  auto f = [&](double v) {
    return std::pow(v, alpha) * std::pow(R - x * v, -sigma);
  };
  quad::Result r = quad::integrate_power_left(
      f, 0.0, 1.0, alpha, abs_tol / std::pow(R, 1.0 + gamma));
  const double scale = coefficient * std::pow(R, 1.0 + gamma);
  r.value *= scale;
  r.error = std::abs(r.error * scale) + 1e-16 * std::abs(r.value);
  return r;
}

struct PvContext {
  double x, ux, sigma, two_s, eps;
  double rel_tol = kPieceRel;
  const ScalarField* u;
  const QuadSpec* q;
};

/// ∫ over (lo,hi) of (u(x)-u(y)) |x-y|^{-sigma}, with the origin-exponent map
/// applied on (0, min(1,hi)) when the field is singular at 0.
quad::Result pv_range(const PvContext& c, double lo, double hi,
                      double abs_tol) {
  auto g = [&](double y) {
    return (c.ux - (*c.u)(y)) * std::pow(std::abs(c.x - y), -c.sigma);
  };
  quad::Result acc;
  if (lo == 0.0 && c.u->origin_exponent < 0.0 && hi > 0.0) {
    const double split = std::min(1.0, hi);
    acc += quad::integrate_power_left(g, 0.0, split, c.u->origin_exponent,
                                      abs_tol / 2, c.q->max_segments,
                                      c.rel_tol);
    if (hi > split)
      acc += integrate_split(g, split, hi, c.u->breakpoints, abs_tol / 2,
                             c.q->max_segments, c.rel_tol);
    return acc;
  }
  return integrate_split(g, lo, hi, c.u->breakpoints, abs_tol,
                         c.q->max_segments, c.rel_tol);
}

/// Right tail from Y to infinity: u(x)·(Y-x)^{-2s}/(2s) minus the field part
/// completed from the tail descriptor.
quad::Result right_tail(const PvContext& c, double Y, double abs_tol) {
  quad::Result acc;
  acc.value = c.ux * std::pow(Y - c.x, -c.two_s) / c.two_s;
  acc.error = 1e-16 * std::abs(acc.value);
  const TailDescriptor& tail = c.u->tail_right;
  if (tail.kind == TailDescriptor::Kind::none)
    throw std::invalid_argument(
        "half-line evaluation requires a right tail descriptor");
  if (tail.kind == TailDescriptor::Kind::power) {
    quad::Result t = power_tail_integral(tail.coefficient, tail.exponent, Y,
                                         c.x, c.two_s, abs_tol);
    acc.value -= t.value;
    acc.error += t.error;
  }
  return acc;
}

PointValue assemble_pv(const PvContext& c, const quad::Result& pieces,
                       const Derivatives& d, double c1s) {
  const double eps = c.eps;
  const double comp =
      d.d2 * std::pow(eps, 2.0 - c.two_s) / (2.0 - c.two_s) +
      d.d4 * std::pow(eps, 4.0 - c.two_s) / (12.0 * (4.0 - c.two_s));
  const double comp_residual =
      std::pow(eps, 6.0 - c.two_s) * (1.0 + std::abs(d.d4)) +
      d.d2_error * std::pow(eps, 2.0 - c.two_s) / (2.0 - c.two_s);
  PointValue out;
  out.value = c1s * (pieces.value - comp);
  out.error = c1s * (pieces.error + comp_residual);
  return out;
}

void check_spec(const QuadSpec& q, const Domain1D& dom) {
  if (!(q.tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  if (!(q.excision > 0.0)) throw std::invalid_argument("excision must be > 0");
  if (dom.kind == Domain1D::Kind::interval &&
      !(q.excision < dom.diameter() / 4.0))
    throw std::invalid_argument("excision must be < domain diameter / 4");
}

}  // namespace

PointValue regional_flap(const ScalarField& u, const Domain1D& dom, double x,
                         FracOrder s, const QuadSpec& q) {
  check_spec(q, dom);
  if (u.smoothness == Smoothness::piecewise)
    throw std::invalid_argument(
        "regional_flap requires a twice differentiable field near x");
  const double dist = delta(dom, x);
  if (dist <= 0.0)
    throw std::domain_error("regional_flap: evaluation point on the boundary");
  if (dist <= 64.0 * std::numeric_limits<double>::epsilon() * std::abs(x))
    throw std::domain_error(
        "regional_flap: boundary distance below binary64 resolution");
  if (q.pinned_excision && dist < 4.0 * q.excision)
    throw std::domain_error(
        "regional_flap: point within 4 excision radii of the boundary");

  PvContext c;
  c.x = x;
  c.ux = u(x);
  c.two_s = s.two_s();
  c.sigma = 1.0 + c.two_s;
  c.u = &u;
  c.q = &q;
  c.eps = std::min({q.excision, dist / 8.0, breakpoint_distance(u, x) / 8.0});
  // close to the boundary the coordinate quantization eps*|x|/dist bounds the
  // attainable relative accuracy; tolerances degrade gracefully with it
  c.rel_tol = std::max(
      kPieceRel,
      20.0 * std::numeric_limits<double>::epsilon() * std::abs(x) / dist);

  const Derivatives d = local_derivatives(u, x, c.eps * 8.0);

  quad::Result pieces;
  const double tol = q.tolerance / 4.0;
  if (dom.kind == Domain1D::Kind::interval) {
    pieces += pv_range(c, dom.a, x - c.eps, tol);
    pieces += pv_range(c, x + c.eps, dom.b, tol);
  } else {
    const double Y =
        std::max({q.tail_radius, 2.0 * x, u.tail_right.start, 1.0});
    pieces += pv_range(c, 0.0, x - c.eps, tol);
    pieces += pv_range(c, x + c.eps, Y, tol);
    pieces += right_tail(c, Y, tol);
  }
  return assemble_pv(c, pieces, d, constants::c_ns(1, s));
}

PointValue full_flap_zero_ext(const ScalarField& u, double x, FracOrder s,
                              const QuadSpec& q) {
  if (!(x > 0.0))
    throw std::domain_error("full_flap_zero_ext: x must be positive");
  PointValue reg = regional_flap(u, Domain1D::half_line(), x, s, q);

  // Negative-axis contribution of the zero extension, integrated numerically
  // up to -L with the exact power remainder beyond.
  const double two_s = s.two_s();
  const double sigma = 1.0 + two_s;
  const double ux = u(x);
  const double L = std::max(q.tail_radius, 2.0 * x);
  auto g = [&](double y) { return ux * std::pow(x - y, -sigma); };
  quad::Result neg =
      quad::integrate(g, -L, 0.0, q.tolerance / 4.0, q.max_segments);
  const double remainder = ux * std::pow(x + L, -two_s) / two_s;

  const double c1s = constants::c_ns(1, s);
  PointValue out;
  out.value = reg.value + c1s * (neg.value + remainder);
  out.error = reg.error + c1s * (neg.error + 1e-16 * std::abs(remainder));
  return out;
}

PointValue full_flap_line(const ScalarField& u, double x, FracOrder s,
                          const QuadSpec& q) {
  if (u.tail_left.kind == TailDescriptor::Kind::none ||
      u.tail_right.kind == TailDescriptor::Kind::none)
    throw std::invalid_argument(
        "full_flap_line requires tail descriptors on both sides");
  if (u.smoothness == Smoothness::piecewise)
    throw std::invalid_argument(
        "full_flap_line requires a twice differentiable field near x");

  PvContext c;
  c.x = x;
  c.ux = u(x);
  c.two_s = s.two_s();
  c.sigma = 1.0 + c.two_s;
  c.u = &u;
  c.q = &q;
  c.eps = std::min(q.excision, breakpoint_distance(u, x) / 8.0);
  if (!(c.eps > 0.0))
    throw std::domain_error("full_flap_line: evaluation at a breakpoint");

  const Derivatives d = local_derivatives(u, x, c.eps * 8.0);
  const double tol = q.tolerance / 6.0;

  quad::Result pieces;
  const double Yr =
      std::max({q.tail_radius, 2.0 * std::abs(x), u.tail_right.start, 1.0});
  const double Yl =
      std::max({q.tail_radius, 2.0 * std::abs(x), u.tail_left.start, 1.0});
  pieces += pv_range(c, -Yl, x - c.eps, tol);
  pieces += pv_range(c, x + c.eps, Yr, tol);
  pieces += right_tail(c, Yr, tol);

  // Left tail: u(x)·(Yl+x)^{-2s}/(2s) minus ∫_{-inf}^{-Yl} u(y)(x-y)^{-sigma}.
  quad::Result lt;
  lt.value = c.ux * std::pow(Yl + x, -c.two_s) / c.two_s;
  lt.error = 1e-16 * std::abs(lt.value);
  if (u.tail_left.kind == TailDescriptor::Kind::power) {
    quad::Result t = power_tail_integral(u.tail_left.coefficient,
                                         u.tail_left.exponent, Yl, -x,
                                         c.two_s, tol);
    lt.value -= t.value;
    lt.error += t.error;
  }
  pieces += lt;

  return assemble_pv(c, pieces, d, constants::c_ns(1, s));
}

double killing_potential(double x, FracOrder s) {
  if (!(x > 0.0))
    throw std::domain_error("killing_potential: x must be positive");
  return constants::a_s(s) * std::pow(x, -s.two_s());
}

}  // namespace fraclap
