#pragma once

#include <cmath>
#include <cstdio>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace fraclap::quad {

/// Thrown when adaptive refinement exhausts its segment budget before the
/// requested tolerance is met.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved_error_(achieved_error) {}
  double achieved_error() const { return achieved_error_; }

 private:
  double achieved_error_;
};

struct Result {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  long evaluations = 0;

  Result& operator+=(const Result& o) {
    value += o.value;
    error += o.error;
    evaluations += o.evaluations;
    return *this;
  }
};

/// Gauss-Legendre rule on [-1,1]. Rules are generated once (Newton on the
/// Legendre recurrence) and cached; orders 2..64.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_rule(int order);

template <class F>
double gauss(F&& f, double a, double b, int order) {
  const GaussRule& r = gauss_rule(order);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i)
    acc += r.weights[i] * f(mid + half * r.nodes[i]);
  return acc * half;
}

namespace detail {

// 7/15 Gauss-Kronrod node pair (QUADPACK dqk15 constants).
inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kGk15WeightsK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGk15WeightsG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void gk15(F&& f, double a, double b, double& kronrod, double& err) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double fv[15];
  fv[7] = f(mid);
  double resk = kGk15WeightsK[7] * fv[7];
  double resg = kGk15WeightsG[3] * fv[7];
  for (int i = 0; i < 7; ++i) {
    const double d = half * kGk15Nodes[i];
    fv[i] = f(mid - d);
    fv[14 - i] = f(mid + d);
    const double fsum = fv[i] + fv[14 - i];
    resk += kGk15WeightsK[i] * fsum;
    if (i % 2 == 1) resg += kGk15WeightsG[i / 2] * fsum;
  }
  kronrod = resk * half;
  // QUADPACK-style scaled estimate against the centred variation.
  const double mean = resk * 0.5;
  double resasc = kGk15WeightsK[7] * std::abs(fv[7] - mean);
  for (int i = 0; i < 7; ++i)
    resasc += kGk15WeightsK[i] *
              (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));
  resasc *= std::abs(half);
  err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration. Deterministic: the worst
/// segment (ties broken by creation index) is bisected until the summed error
/// estimate meets abs_tol + rel_tol * |integral|, and the final value is
/// accumulated over segments sorted left to right.
template <class F>
Result integrate(F&& f, double a, double b, double abs_tol,
                 int max_segments = 2000, bool throw_on_budget = true,
                 double rel_tol = 1e-12) {
  Result out;
  if (!(b > a)) return out;

  struct Seg {
    double a, b, value, err;
    long id;
  };
  struct Worse {
    bool operator()(const Seg& x, const Seg& y) const {
      if (x.err != y.err) return x.err < y.err;
      return x.id > y.id;
    }
  };
  std::priority_queue<Seg, std::vector<Seg>, Worse> heap;
  long next_id = 0;
  long evals = 0;
  double total_err = 0.0, running_value = 0.0;

  auto push = [&](double lo, double hi) {
    Seg s{lo, hi, 0.0, 0.0, next_id++};
    detail::gk15(f, lo, hi, s.value, s.err);
    evals += 15;
    heap.push(s);
    total_err += s.err;
    running_value += s.value;
  };

  push(a, b);
  auto tol = [&] { return abs_tol + rel_tol * std::abs(running_value); };
  while (total_err > tol() && static_cast<int>(heap.size()) < max_segments) {
    Seg worst = heap.top();
    const double width_floor =
        4.0 * std::numeric_limits<double>::epsilon() *
            std::max(std::abs(worst.a), std::abs(worst.b)) +
        1e-305;
    if (!(worst.b - worst.a > width_floor))
      break;  // cannot be refined further in binary64
    heap.pop();
    total_err -= worst.err;
    running_value -= worst.value;
    const double m = 0.5 * (worst.a + worst.b);
    push(worst.a, m);
    push(m, worst.b);
  }
  if (total_err > tol() && throw_on_budget) {
    // Roundoff floor: do not report failure when the estimate is already at
    // the noise level of the accumulated segment values.
    double scale = 0.0;
    std::priority_queue<Seg, std::vector<Seg>, Worse> probe = heap;
    while (!probe.empty()) {
      scale += std::abs(probe.top().value);
      probe.pop();
    }
    if (total_err > 1e-13 * scale) {
      char msg[160];
      std::snprintf(msg, sizeof(msg),
                    "adaptive quadrature exhausted its budget (err=%.3g, "
                    "tol=%.3g, segments=%zu, range=[%.6g,%.6g])",
                    total_err, tol(), heap.size(), a, b);
      throw QuadratureError(msg, total_err);
    }
  }

  std::vector<Seg> segs;
  segs.reserve(heap.size());
  while (!heap.empty()) {
    segs.push_back(heap.top());
    heap.pop();
  }
  std::sort(segs.begin(), segs.end(),
            [](const Seg& x, const Seg& y) { return x.a < y.a; });
  for (const Seg& s : segs) {
    out.value += s.value;
    out.error += s.err;
  }
  out.evaluations = evals;
  return out;
}

/// ∫_a^b f where f ~ C (x-a)^alpha as x→a+, alpha > -1. The map
/// x = a + (b-a) τ^r with r = 2/(1+min(alpha,0)) regularizes the endpoint so
/// the mapped integrand vanishes like τ there.
template <class F>
Result integrate_power_left(F&& f, double a, double b, double alpha,
                            double abs_tol, int max_segments = 2000,
                            double rel_tol = 1e-12) {
  if (!(alpha > -1.0)) throw std::domain_error("endpoint exponent must be > -1");
  if (!(b > a)) return {};
  const double r = 2.0 / (1.0 + std::min(alpha, 0.0));
  const double len = b - a;
  auto g = [&](double tau) {
    const double x = a + len * std::pow(tau, r);
    return f(x) * len * r * std::pow(tau, r - 1.0);
  };
  return integrate(g, 0.0, 1.0, abs_tol, max_segments, true, rel_tol);
}

/// Mirror of integrate_power_left for a singularity at the right endpoint.
template <class F>
Result integrate_power_right(F&& f, double a, double b, double alpha,
                             double abs_tol, int max_segments = 2000,
                             double rel_tol = 1e-12) {
  auto g = [&](double x) { return f(a + b - x); };
  return integrate_power_left(g, a, b, alpha, abs_tol, max_segments, rel_tol);
}

}  // namespace fraclap::quad
