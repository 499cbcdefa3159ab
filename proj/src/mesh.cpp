#include "fraclap/mesh.hpp"

#include <algorithm>
#include <cmath>

namespace fraclap {

double delta(const Domain1D& dom, double x) {
  if (!dom.contains_closure(x))
    throw std::domain_error("delta: point outside the domain closure");
  if (dom.kind == Domain1D::Kind::half_line) return x;
  return std::min(x - dom.a, dom.b - x);
}

double GradedMesh::smallest_element() const {
  double h = element_size(0);
  for (int e = 1; e < element_count(); ++e) h = std::min(h, element_size(e));
  return h;
}

int GradedMesh::find_element(double x) const {
  const auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
  int e = static_cast<int>(it - nodes.begin()) - 1;
  return std::clamp(e, 0, element_count() - 1);
}

GradedMesh graded_mesh(double a, double b, int n, double beta_g) {
  if (!(a < b)) throw std::invalid_argument("graded_mesh: requires a < b");
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("graded_mesh: n must be even and >= 4");
  if (!(beta_g >= 1.0))
    throw std::invalid_argument("graded_mesh: grading must be >= 1");

  GradedMesh mesh;
  mesh.domain = Domain1D::interval(a, b);
  mesh.grading = beta_g;
  mesh.nodes.resize(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double xi = static_cast<double>(j) / n;
    double g;
    if (xi <= 0.5)
      g = 0.5 * std::pow(2.0 * xi, beta_g);
    else
      g = 1.0 - 0.5 * std::pow(2.0 * (1.0 - xi), beta_g);
    mesh.nodes[j] = a + (b - a) * g;
  }
  mesh.nodes[0] = a;
  mesh.nodes[n] = b;
  mesh.nodes[n / 2] = 0.5 * (a + b);
  return mesh;
}

double default_dirichlet_grading(FracOrder s) {
  if (s.value() <= 0.5) return 1.0;
  return std::clamp(2.0 / (2.0 * s.value() - 1.0), 1.0, 4.0);
}

}  // namespace fraclap
