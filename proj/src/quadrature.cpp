#include "fraclap/quadrature.hpp"

#include <array>
#include <numbers>

namespace fraclap::quad {

namespace {

GaussRule make_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * x * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (x * p1 - p2) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_rule(int order) {
  constexpr int kMaxOrder = 64;
  static const std::array<GaussRule, kMaxOrder + 1> cache = [] {
    std::array<GaussRule, kMaxOrder + 1> c;
    for (int n = 1; n <= kMaxOrder; ++n) c[n] = make_rule(n);
    return c;
  }();
  if (order < 1 || order > kMaxOrder)
    throw std::domain_error("gauss_rule: order out of range");
  return cache[order];
}

}  // namespace fraclap::quad
