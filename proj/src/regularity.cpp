#include "fraclap/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fraclap {

namespace {

struct WindowSamples {
  // node distance to the endpoint and nodal value, ordered by increasing
  // distance, endpoint value first removed
  std::vector<double> dist;
  std::vector<double> value;
};

/// Nodes of one endpoint side whose boundary distance lies in the window.
WindowSamples side_samples(const SolveResult& r, bool left, double lo,
                           double hi) {
  const auto& nodes = r.mesh.nodes;
  const int n = r.mesh.element_count();
  WindowSamples out;
  if (left) {
    for (int i = 1; i <= n / 2; ++i) {
      const double d = nodes[i] - nodes[0];
      if (d >= lo && d <= hi) {
        out.dist.push_back(d);
        out.value.push_back(r.values[i]);
      }
    }
  } else {
    for (int i = n - 1; i >= n / 2; --i) {
      const double d = nodes[n] - nodes[i];
      if (d >= lo && d <= hi) {
        out.dist.push_back(d);
        out.value.push_back(r.values[i]);
      }
    }
  }
  return out;
}

/// Geometric sub-ladder (ratio ~2, descending) of sample indices.
std::vector<int> geometric_ladder(const std::vector<double>& dist) {
  std::vector<int> idx;
  if (dist.empty()) return idx;
  double target = dist.back();
  int i = static_cast<int>(dist.size()) - 1;
  while (i >= 0) {
    // nearest sample to the current target
    int best = i;
    for (int j = i; j >= 0; --j)
      if (std::abs(dist[j] - target) < std::abs(dist[best] - target)) best = j;
    if (idx.empty() || best != idx.back()) idx.push_back(best);
    target *= 0.5;
    if (target < dist.front() * 0.75) break;
    while (i >= 0 && dist[i] > target * 1.5) --i;
  }
  return idx;  // descending distance
}

/// Linear-in-delta extrapolation to zero through consecutive ladder points;
/// returns the last extrapolant and the spread to the previous one.
std::pair<double, double> extrapolate_to_zero(const std::vector<double>& d,
                                              const std::vector<double>& v,
                                              const std::vector<int>& ladder) {
  double last = v[ladder.back()], prev = last;
  for (std::size_t k = 0; k + 1 < ladder.size(); ++k) {
    const int a = ladder[k], b = ladder[k + 1];  // d[a] > d[b]
    const double r0 = (v[b] * d[a] - v[a] * d[b]) / (d[a] - d[b]);
    prev = last;
    last = r0;
  }
  return {last, std::abs(last - prev)};
}

void require_dirichlet(const SolveResult& r, const char* who) {
  if (r.bc != Bc::dirichlet)
    throw std::invalid_argument(std::string(who) +
                                ": requires a Dirichlet solution");
}

}  // namespace

RateFit fit_boundary_rate(std::vector<std::pair<double, double>> samples) {
  const std::size_t total = samples.size();
  std::erase_if(samples, [](const auto& p) { return p.second == 0.0; });
  if (total == 0 || samples.size() < 6 ||
      static_cast<double>(total - samples.size()) > 0.1 * total)
    throw std::invalid_argument(
        "fit_boundary_rate: need >= 6 positive samples (at most 10% zeros)");
  for (const auto& [d, v] : samples)
    if (!(d > 0.0) || !(v > 0.0))
      throw std::invalid_argument(
          "fit_boundary_rate: samples must have delta > 0 and |value| >= 0");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [d, v] : samples) {
    const double x = std::log(d), y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(samples.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;

  RateFit fit;
  fit.exponent = slope;
  fit.constant = std::exp(intercept);
  fit.points = static_cast<int>(samples.size());
  fit.delta_min = samples.front().first;
  fit.delta_max = samples.front().first;
  fit.residual = 0.0;
  for (const auto& [d, v] : samples) {
    fit.delta_min = std::min(fit.delta_min, d);
    fit.delta_max = std::max(fit.delta_max, d);
    const double model = fit.constant * std::pow(d, fit.exponent);
    fit.residual = std::max(fit.residual, std::abs(v - model) / model);
  }
  return fit;
}

std::pair<double, double> probe_window(const GradedMesh& mesh) {
  const double radius = 0.5 * (mesh.domain.b - mesh.domain.a);
  return {20.0 * mesh.smallest_element(), 0.1 * radius};
}

BoundaryRatio dirichlet_boundary_ratio(const SolveResult& v) {
  require_dirichlet(v, "dirichlet_boundary_ratio");
  const double alpha = 2.0 * v.s - 1.0;
  const auto [lo, hi] = probe_window(v.mesh);

  BoundaryRatio out;
  out.window_lo = lo;
  out.window_hi = hi;
  const double scale = v.values.cwiseAbs().maxCoeff();

  for (bool left : {true, false}) {
    EndpointTrace& tr = left ? out.left : out.right;
    WindowSamples ws = side_samples(v, left, lo, hi);
    if (ws.dist.size() < 6)
      throw std::runtime_error(
          "dirichlet_boundary_ratio: probe window under-resolved by the mesh");
    if (scale == 0.0) {
      tr.zero_trace = true;
      continue;
    }
    std::vector<double> ratio(ws.dist.size());
    for (std::size_t i = 0; i < ws.dist.size(); ++i)
      ratio[i] = ws.value[i] / std::pow(ws.dist[i], alpha);

    const std::vector<int> ladder = geometric_ladder(ws.dist);
    auto [trace, spread] = extrapolate_to_zero(ws.dist, ratio, ladder);
    tr.trace = trace;
    tr.extrapolation_spread = spread;
    tr.zero_trace = std::abs(trace) < 1e-12 * scale;
    if (!tr.zero_trace) {
      std::vector<std::pair<double, double>> flat;
      for (std::size_t i = 0; i < ws.dist.size(); ++i)
        flat.emplace_back(ws.dist[i], std::abs(ratio[i] - trace));
      try {
        tr.flatness = fit_boundary_rate(std::move(flat));
      } catch (const std::invalid_argument&) {
        tr.flatness = RateFit{};  // perfectly flat synthetic data
      }
    }
  }
  return out;
}

WeightedGradient dirichlet_weighted_gradient(const SolveResult& v) {
  require_dirichlet(v, "dirichlet_weighted_gradient");
  if (!(v.s > 0.5))
    throw std::invalid_argument("dirichlet_weighted_gradient: requires s > 1/2");
  const double alpha = 2.0 * v.s - 1.0;
  const BoundaryRatio ratio = dirichlet_boundary_ratio(v);
  const auto [lo, hi] = probe_window(v.mesh);
  const auto& nodes = v.mesh.nodes;
  const int n = v.mesh.element_count();

  WeightedGradient out;
  for (bool left : {true, false}) {
    WeightedGradientSide& side = left ? out.left : out.right;
    const EndpointTrace& tr = left ? ratio.left : ratio.right;
    if (tr.zero_trace) {
      side.zero_trace = true;
      continue;
    }
    // one-sided quotients on consecutive window nodes, inward orientation
    std::vector<double> d, g;
    for (int e = 0; e < n; ++e) {
      const int i = left ? e : n - 1 - e;
      const double mid = 0.5 * (nodes[i] + nodes[i + 1]);
      const double dist = left ? mid - nodes[0] : nodes[n] - mid;
      if (dist < lo || dist > hi) continue;
      const double slope =
          (v.values[i + 1] - v.values[i]) / (nodes[i + 1] - nodes[i]);
      const double inward = left ? slope : -slope;
      d.push_back(dist);  // ascending by construction on either side
      g.push_back(std::pow(dist, 2.0 - 2.0 * v.s) * inward);
    }
    if (d.size() < 6)
      throw std::runtime_error(
          "dirichlet_weighted_gradient: probe window under-resolved");

    const std::vector<int> ladder = geometric_ladder(d);
    auto [limit, spread] = extrapolate_to_zero(d, g, ladder);
    (void)spread;
    side.limit = limit;
    side.relation_residual =
        std::abs(limit - alpha * tr.trace) / std::abs(alpha * tr.trace);
  }
  return out;
}

NormalDerivative neumann_normal_derivative(const SolveResult& u) {
  if (u.bc != Bc::neumann)
    throw std::invalid_argument(
        "neumann_normal_derivative: requires a Neumann solution");
  const double alpha = 2.0 * u.s - 1.0;
  const auto [lo, hi] = probe_window(u.mesh);
  const int n = u.mesh.element_count();

  NormalDerivative out;
  for (bool left : {true, false}) {
    NormalDerivativeSide& side = left ? out.left : out.right;
    const double u0 = left ? u.values[0] : u.values[n];
    WindowSamples ws = side_samples(u, left, lo, hi);
    if (ws.dist.size() < 6)
      throw std::runtime_error(
          "neumann_normal_derivative: probe window under-resolved");

    std::vector<std::pair<double, double>> incr, q1abs;
    std::vector<double> q1, q2, t;
    for (std::size_t i = 0; i < ws.dist.size(); ++i) {
      const double ti = ws.dist[i];
      const double di = ws.value[i] - u0;
      t.push_back(ti);
      q1.push_back(di / ti);
      q2.push_back(di / std::pow(ti, alpha));
      incr.emplace_back(ti, std::abs(di));
      q1abs.emplace_back(ti, std::abs(di / ti));
    }
    side.increment_exponent = fit_boundary_rate(incr).exponent;
    side.first_quotient_fit = fit_boundary_rate(q1abs);

    if (side.first_quotient_fit.exponent < -0.05 &&
        side.first_quotient_fit.residual < 0.5) {
      // clean negative power: the quotient diverges, report the exponent only
      side.first_quotient_divergent = true;
      side.first_quotient_limit = std::numeric_limits<double>::quiet_NaN();
    } else {
      // model q1 = limit + A t^{2s-1}: least squares, intercept is the limit
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (std::size_t i = 0; i < t.size(); ++i) {
        const double x = std::pow(t[i], alpha);
        sx += x;
        sy += q1[i];
        sxx += x * x;
        sxy += x * q1[i];
      }
      const double m = static_cast<double>(t.size());
      const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
      side.first_quotient_limit = (sy - slope * sx) / m;
    }
    {
      // model q2 = limit + B t^{min(2-2s,1)}
      const double p = std::min(2.0 - 2.0 * u.s, 1.0);
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (std::size_t i = 0; i < t.size(); ++i) {
        const double x = std::pow(t[i], p);
        sx += x;
        sy += q2[i];
        sxx += x * x;
        sxy += x * q2[i];
      }
      const double m = static_cast<double>(t.size());
      const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
      side.ns_quotient_limit = (sy - slope * sx) / m;
    }
  }
  return out;
}

double holder_estimate(const std::vector<double>& xs,
                       const std::vector<double>& values, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::domain_error("holder_estimate: alpha must lie in (0,1]");
  if (xs.size() != values.size() || xs.size() < 2)
    throw std::invalid_argument("holder_estimate: need matching samples");
  double sup = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const double dx = std::abs(xs[i] - xs[j]);
      if (dx == 0.0) continue;
      sup = std::max(sup,
                     std::abs(values[i] - values[j]) / std::pow(dx, alpha));
    }
  return sup;
}

Eigen::VectorXd classical_solution(const GradedMesh& mesh,
                                   const ScalarField& f, Bc bc) {
  const int n = mesh.element_count();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int e = 0; e < n; ++e) {
    const double k = 1.0 / mesh.element_size(e);
    A(e, e) += k;
    A(e + 1, e + 1) += k;
    A(e, e + 1) -= k;
    A(e + 1, e) -= k;
  }
  const Eigen::VectorXd F = load(mesh, f);

  Eigen::VectorXd out = Eigen::VectorXd::Zero(n + 1);
  if (bc == Bc::dirichlet) {
    out.segment(1, n - 1) = A.block(1, 1, n - 1, n - 1)
                                .ldlt()
                                .solve(F.segment(1, n - 1));
  } else {
    const Eigen::VectorXd m = detail::hat_masses(mesh);
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n + 2, n + 2);
    B.topLeftCorner(n + 1, n + 1) = A;
    B.block(0, n + 1, n + 1, 1) = m;
    B.block(n + 1, 0, 1, n + 1) = m.transpose();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 2);
    rhs.head(n + 1) = F;
    out = B.partialPivLu().solve(rhs).head(n + 1);
  }
  return out;
}

std::vector<SToOneRow> s_to_one_comparison(const ScalarField& f,
                                           const std::vector<double>& s_list,
                                           const GradedMesh& mesh) {
  std::vector<SToOneRow> rows;
  const Eigen::VectorXd neumann_ref = classical_solution(mesh, f, Bc::neumann);
  const Eigen::VectorXd dirichlet_ref =
      classical_solution(mesh, f, Bc::dirichlet);
  auto interp = [&](const Eigen::VectorXd& nodal) {
    return [&mesh, nodal](double x) { return mesh.interpolate(nodal, x); };
  };
  for (double sv : s_list) {
    const FracOrder s(sv);
    {
      SolveResult r = solve_neumann(mesh, s, f);
      rows.push_back(
          {sv, Bc::neumann, l2_distance(mesh, r.values, interp(neumann_ref))});
    }
    if (sv > 0.5) {
      SolveResult r = solve_dirichlet(mesh, s, f);
      rows.push_back({sv, Bc::dirichlet,
                      l2_distance(mesh, r.values, interp(dirichlet_ref))});
    }
  }
  return rows;
}

}  // namespace fraclap
