#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fraclap::cli {

/// A declarative experiment: one named scenario plus its parameters. Invalid
/// configurations raise ConfigError (CLI exit code 2); numerical failures
/// propagate the library exceptions (exit code 3).
struct ExperimentConfig {
  std::string scenario = "constants";
  std::vector<double> s_values;  // empty -> per-scenario defaults
  std::vector<int> mesh_sizes;   // empty -> per-scenario defaults
  double grading = 0.0;          // 0 -> default (Dirichlet layer heuristic)
  std::string f_name = "const1"; // const1 | linear | sine | manufactured
  std::string bc = "dirichlet";  // for the generic solve scenario
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  int threads = 0;  // 0 -> runtime default
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string>& scenario_names();

/// Runs the scenario, writing one CSV per table plus manifest.json into
/// out_dir (atomically). Returns 0 on success. Deterministic given the
/// config and seed.
int run(const ExperimentConfig& config);

}  // namespace fraclap::cli
