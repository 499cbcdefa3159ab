#pragma once

#include <vector>

#include "fraclap/domain.hpp"
#include "fraclap/frac_order.hpp"

namespace fraclap {

/// Distance to the boundary. Throws if x lies outside the closure.
double delta(const Domain1D& dom, double x);

/// One-dimensional mesh on an interval with nodes graded toward both
/// endpoints. Immutable after construction.
struct GradedMesh {
  Domain1D domain;
  std::vector<double> nodes;  // size n+1, strictly increasing, endpoints exact
  double grading = 1.0;

  int element_count() const { return static_cast<int>(nodes.size()) - 1; }
  double element_size(int e) const { return nodes[e + 1] - nodes[e]; }
  double smallest_element() const;

  /// Index of the element containing x (clamped to [0, n-1]).
  int find_element(double x) const;

  /// Piecewise-linear interpolation of nodal values at x.
  template <class V>
  double interpolate(const V& nodal, double x) const {
    const int e = find_element(x);
    const double t = (x - nodes[e]) / element_size(e);
    return (1.0 - t) * nodal[e] + t * nodal[e + 1];
  }
};

/// Two-sided graded nodes on (a,b): node j maps j/n through a symmetric power
/// law with exponent beta_g; beta_g = 1 is the uniform mesh. n must be even
/// and >= 4.
GradedMesh graded_mesh(double a, double b, int n, double beta_g);

/// Default grading for resolving the delta^{2s-1} Dirichlet boundary layer:
/// 2/(2s-1) clamped to [1,4].
double default_dirichlet_grading(FracOrder s);

}  // namespace fraclap
