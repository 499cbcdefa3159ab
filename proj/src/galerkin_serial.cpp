#include <chrono>

#include "fraclap/constants.hpp"
#include "fraclap/galerkin.hpp"

namespace fraclap {

// Straightforward single-threaded pair loop, kept as the reference the
// OpenMP assembly is tested against. Same local blocks, same scatter order,
// hence bitwise identical output.
NonlocalSystem assemble_serial(const GradedMesh& mesh, FracOrder s, Bc bc) {
  if (bc == Bc::dirichlet && !(s.value() > 0.5))
    throw std::invalid_argument(
        "Dirichlet problem requires s > 1/2 (for s <= 1/2 the spaces "
        "coincide; use the Neumann path)");
  const auto t0 = std::chrono::steady_clock::now();
  const int n = mesh.element_count();
  const double two_s = s.two_s();
  const double c1s = constants::c_ns(1, s);

  NonlocalSystem sys;
  sys.mesh = mesh;
  sys.s = s.value();
  sys.bc = bc;
  sys.stiffness = Eigen::MatrixXd::Zero(n + 1, n + 1);
  sys.hat_masses = detail::hat_masses(mesh);

  for (int e = 0; e < n; ++e)
    for (int f = e; f < n; ++f)
      detail::scatter_block(sys.stiffness, e, f,
                            detail::pair_block(mesh, e, f, two_s), c1s);

  for (int i = 0; i <= n; ++i)
    for (int j = 0; j < i; ++j) sys.stiffness(i, j) = sys.stiffness(j, i);

  sys.assembly_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return sys;
}

}  // namespace fraclap
