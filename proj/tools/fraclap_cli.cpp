#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "fraclap/experiments.hpp"
#include "json.hpp"

int main(int argc, char** argv) {
  fraclap::cli::ExperimentConfig config;

  CLI::App app{"fraclap: regional / censored fractional Laplacian laboratory"};
  app.set_config("--config", "", "Declarative key=value experiment file");
  app.add_option("--scenario", config.scenario,
                 "Scenario name (see subcommands)");
  app.add_option("--s", config.s_values, "Fractional orders in (0,1)");
  app.add_option("--n", config.mesh_sizes, "Mesh sizes (even, >= 4)");
  app.add_option("--grading", config.grading,
                 "Mesh grading exponent (0 = default)");
  app.add_option("--f", config.f_name,
                 "Datum: const1 | linear | sine | manufactured");
  app.add_option("--bc", config.bc, "solve scenario: neumann | dirichlet");
  app.add_option("--out", config.out_dir, "Output directory");
  app.add_option("--seed", config.seed, "Seed for randomized suites");
  app.add_option("--threads", config.threads, "OpenMP threads (0 = default)");

  for (const auto& name : fraclap::cli::scenario_names())
    app.add_subcommand(name, "run the " + name + " scenario");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  for (const auto* sub : app.get_subcommands()) config.scenario = sub->get_name();

  try {
    return fraclap::cli::run(config);
  } catch (const fraclap::cli::ConfigError& e) {
    nlohmann::json err{{"error", "config"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    nlohmann::json err{{"error", "numerical"},
                       {"message", e.what()},
                       {"scenario", config.scenario}};
    std::cerr << err.dump() << "\n";
    return 3;
  }
}
