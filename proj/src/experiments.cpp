#include "fraclap/experiments.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "fraclap/angular_eigen.hpp"
#include "fraclap/constants.hpp"
#include "fraclap/extension_2d.hpp"
#include "fraclap/galerkin.hpp"
#include "fraclap/operator_1d.hpp"
#include "fraclap/regularity.hpp"
#include "json.hpp"

namespace fraclap::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "1.0.0";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// CSV table with deterministic formatting (17 significant digits,
/// '.'-decimal).
class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : header_(std::move(header)) {}
  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }
  void write(const fs::path& path) const {
    const fs::path tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp);
      for (std::size_t i = 0; i < header_.size(); ++i)
        out << header_[i] << (i + 1 < header_.size() ? "," : "\n");
      for (const auto& r : rows_)
        for (std::size_t i = 0; i < r.size(); ++i)
          out << r[i] << (i + 1 < r.size() ? "," : "\n");
    }
    fs::rename(tmp, path);
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

ScalarField const_field(double c) {
  ScalarField f;
  f.value = [c](double) { return c; };
  f.second_derivative = [](double) { return 0.0; };
  f.fourth_derivative = [](double) { return 0.0; };
  return f;
}

ScalarField linear_field() {
  ScalarField f;
  f.value = [](double x) { return x; };
  f.second_derivative = [](double) { return 0.0; };
  f.fourth_derivative = [](double) { return 0.0; };
  return f;
}

ScalarField sine_field() {
  ScalarField f;
  f.value = [](double x) { return std::sin(std::numbers::pi * x); };
  return f;
}

/// f* = (-Δ)^s_Ω applied to u*(x) = (x-a)(b-x); blows up like
/// delta^{1-2s} at the endpoints for s > 1/2.
ScalarField manufactured_field(const Domain1D& dom, FracOrder s) {
  ScalarField ustar;
  const double a = dom.a, b = dom.b;
  ustar.value = [a, b](double x) { return (x - a) * (b - x); };
  ustar.second_derivative = [](double) { return -2.0; };
  ustar.fourth_derivative = [](double) { return 0.0; };

  ScalarField f;
  f.value = [ustar, dom, s](double x) {
    return regional_flap(ustar, dom, x, s).value;
  };
  f.endpoint_exponent = std::min(0.0, 1.0 - s.two_s());
  return f;
}

ScalarField named_field(const std::string& name, const Domain1D& dom,
                        FracOrder s) {
  if (name == "const1") return const_field(1.0);
  if (name == "linear") return linear_field();
  if (name == "sine") return sine_field();
  if (name == "manufactured") return manufactured_field(dom, s);
  throw ConfigError("unknown field: " + name);
}

/// Smooth random bump on the half-line for the killing-identity suite.
ScalarField random_bump(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> center(1.0, 4.0), width(0.3, 1.0),
      amp(0.5, 1.5);
  struct Bump {
    double a, c, w;
  };
  std::vector<Bump> bumps;
  for (int j = 0; j < 3; ++j) bumps.push_back({amp(rng), center(rng), width(rng)});
  ScalarField f;
  f.value = [bumps](double y) {
    double v = 0.0;
    for (const auto& b : bumps) {
      const double z = (y - b.c) / b.w;
      v += b.a * std::exp(-0.5 * z * z);
    }
    return v;
  };
  f.tail_right = TailDescriptor::compact(40.0);
  f.tail_left = TailDescriptor::compact(40.0);
  return f;
}

struct ScenarioContext {
  const ExperimentConfig& config;
  fs::path out;
  std::vector<std::string> outputs;
  nlohmann::json tolerances;
};

std::vector<double> s_or(const ExperimentConfig& c, std::vector<double> d) {
  return c.s_values.empty() ? d : c.s_values;
}
std::vector<int> n_or(const ExperimentConfig& c, std::vector<int> d) {
  return c.mesh_sizes.empty() ? d : c.mesh_sizes;
}

void write_csv(ScenarioContext& ctx, const std::string& name, const Csv& csv) {
  csv.write(ctx.out / name);
  ctx.outputs.push_back(name);
}

// --- scenarios --------------------------------------------------------------

void run_constants(ScenarioContext& ctx) {
  Csv csv({"s", "c1s", "a_s", "b_s", "kappa_bar", "hardy", "mu_mid",
           "identity_residual"});
  for (double sv : s_or(ctx.config, {0.3, 0.5, 0.6, 0.75, 0.9})) {
    const FracOrder s(sv);
    const auto b = constants::bundle(s);
    const double mu_mid = constants::mu(0.5 * (s.two_s() - 1.0), s);
    const double residual = std::abs(b.a_s - mu_mid - b.hardy);
    csv.row({fmt(sv), fmt(b.c_ns), fmt(b.a_s), fmt(b.b_s), fmt(b.kappa_bar),
             fmt(b.hardy), fmt(mu_mid), fmt(residual)});
  }
  ctx.tolerances["constants_identity"] = 1e-8;
  write_csv(ctx, "constants.csv", csv);
}

void run_eval_op(ScenarioContext& ctx) {
  Csv csv({"s", "field", "x", "regional", "regional_err", "full", "full_err",
           "killing_term", "identity_residual"});
  std::mt19937_64 rng(ctx.config.seed);
  for (double sv : s_or(ctx.config, {0.6, 0.75, 0.9})) {
    const FracOrder s(sv);
    std::vector<std::pair<std::string, ScalarField>> fields;
    fields.emplace_back("omega_0", omega_gamma(0.0));
    fields.emplace_back("omega_2s-1", omega_gamma(s.two_s() - 1.0));
    fields.emplace_back("omega_(2s-1)/2",
                        omega_gamma(0.5 * (s.two_s() - 1.0)));
    for (int j = 0; j < 5; ++j)
      fields.emplace_back("bump" + std::to_string(j), random_bump(rng));
    for (const auto& [name, u] : fields) {
      for (double x : {0.25, 1.0, 4.0}) {
        const PointValue reg = regional_flap(u, Domain1D::half_line(), x, s);
        const PointValue full = full_flap_zero_ext(u, x, s);
        const double kill = killing_potential(x, s) * u(x);
        const double residual = std::abs(full.value - reg.value - kill);
        csv.row({fmt(sv), name, fmt(x), fmt(reg.value), fmt(reg.error),
                 fmt(full.value), fmt(full.error), fmt(kill), fmt(residual)});
      }
    }
  }
  ctx.tolerances["killing_identity_factor"] = 10.0;
  write_csv(ctx, "eval_op.csv", csv);
}

void run_solve(ScenarioContext& ctx) {
  Csv csv({"s", "n", "bc", "assembly_seconds", "solver_residual",
           "constraint_residual", "mean", "sup"});
  for (double sv : s_or(ctx.config, {0.75})) {
    const FracOrder s(sv);
    for (int n : n_or(ctx.config, {256})) {
      const double grading = ctx.config.grading > 0.0
                                 ? ctx.config.grading
                                 : default_dirichlet_grading(s);
      const GradedMesh mesh = graded_mesh(-1.0, 1.0, n, grading);
      const ScalarField f = named_field(ctx.config.f_name, mesh.domain, s);
      SolveResult r = ctx.config.bc == "neumann" ? solve_neumann(mesh, s, f)
                                                 : solve_dirichlet(mesh, s, f);
      csv.row({fmt(sv), std::to_string(n), ctx.config.bc,
               fmt(r.diagnostics.assembly_seconds),
               fmt(r.diagnostics.solver_residual),
               fmt(r.diagnostics.constraint_residual),
               fmt(mean_value(mesh, r.values)),
               fmt(r.values.cwiseAbs().maxCoeff())});
      Csv sol({"x", "value"});
      for (int i = 0; i < r.values.size(); ++i)
        sol.row({fmt(mesh.nodes[i]), fmt(r.values[i])});
      write_csv(ctx,
                "solution_s" + fmt(sv) + "_n" + std::to_string(n) + ".csv",
                sol);
    }
  }
  write_csv(ctx, "solve.csv", csv);
}

void run_rates(ScenarioContext& ctx) {
  Csv csv({"s", "n", "side", "fitted_exponent", "expected_exponent", "trace",
           "trace_spread", "flatness_exponent", "grad_limit",
           "grad_relation_residual", "window_lo", "window_hi"});
  for (double sv : s_or(ctx.config, {0.7, 0.8})) {
    const FracOrder s(sv);
    for (int n : n_or(ctx.config, {1024})) {
      const double grading = ctx.config.grading > 0.0
                                 ? ctx.config.grading
                                 : default_dirichlet_grading(s);
      const GradedMesh mesh = graded_mesh(-1.0, 1.0, n, grading);
      const ScalarField f = named_field(ctx.config.f_name, mesh.domain, s);
      const SolveResult r = solve_dirichlet(mesh, s, f);
      const BoundaryRatio ratio = dirichlet_boundary_ratio(r);
      const WeightedGradient grad = dirichlet_weighted_gradient(r);
      const auto [lo, hi] = probe_window(mesh);

      for (bool left : {true, false}) {
        const EndpointTrace& tr = left ? ratio.left : ratio.right;
        const WeightedGradientSide& gs = left ? grad.left : grad.right;
        // exponent fit of |v| against the boundary distance on this side
        std::vector<std::pair<double, double>> samples;
        const int nn = mesh.element_count();
        for (int i = 1; i < nn; ++i) {
          const double d = left ? mesh.nodes[i] - mesh.nodes[0]
                                : mesh.nodes[nn] - mesh.nodes[i];
          const bool this_side = left ? (i <= nn / 2) : (i >= nn / 2);
          if (this_side && d >= lo && d <= hi)
            samples.emplace_back(d, std::abs(r.values[i]));
        }
        const RateFit fit = fit_boundary_rate(std::move(samples));
        csv.row({fmt(sv), std::to_string(n), left ? "left" : "right",
                 fmt(fit.exponent), fmt(s.two_s() - 1.0), fmt(tr.trace),
                 fmt(tr.extrapolation_spread), fmt(tr.flatness.exponent),
                 fmt(gs.limit), fmt(gs.relation_residual), fmt(lo), fmt(hi)});
      }
    }
  }
  ctx.tolerances["rate_exponent_band"] = 0.05;
  ctx.tolerances["gradient_relation_band"] = 0.05;
  write_csv(ctx, "dirichlet_rate.csv", csv);
}

void run_neumann_rate(ScenarioContext& ctx) {
  Csv csv({"s", "n", "side", "first_quotient_limit", "ns_quotient_limit",
           "increment_exponent", "sup_u"});
  for (double sv : s_or(ctx.config, {0.8})) {
    const FracOrder s(sv);
    for (int n : n_or(ctx.config, {1024})) {
      const double grading = ctx.config.grading > 0.0 ? ctx.config.grading : 2.0;
      const GradedMesh mesh = graded_mesh(-1.0, 1.0, n, grading);
      const ScalarField f = linear_field();
      const SolveResult r = solve_neumann(mesh, s, f);
      const NormalDerivative nd = neumann_normal_derivative(r);
      const double sup = r.values.cwiseAbs().maxCoeff();
      for (bool left : {true, false}) {
        const NormalDerivativeSide& side = left ? nd.left : nd.right;
        csv.row({fmt(sv), std::to_string(n), left ? "left" : "right",
                 fmt(side.first_quotient_limit), fmt(side.ns_quotient_limit),
                 fmt(side.increment_exponent), fmt(sup)});
      }
    }
  }
  ctx.tolerances["first_quotient_rel_sup"] = 1e-2;
  write_csv(ctx, "neumann_rate.csv", csv);
}

void run_eigen(ScenarioContext& ctx) {
  Csv csv({"s", "n", "lambda1", "lambda1_expected", "sqrt_lambda2",
           "gap_margin"});
  for (double sv : s_or(ctx.config, {0.3, 0.5, 0.75, 0.9})) {
    const FracOrder s(sv);
    for (int n : n_or(ctx.config, {512})) {
      const AngularProblem prob = assemble_angular(s, n);
      const auto pairs = eigenpairs(prob, 2);
      const double expected = 0.25 * (s.two_s() - 1.0) * (s.two_s() - 1.0);
      const GapCheck gap = gap_check(s, n);
      csv.row({fmt(sv), std::to_string(n), fmt(pairs[0].lambda), fmt(expected),
               fmt(gap.sqrt_lambda2), fmt(gap.margin)});
    }
  }
  ctx.tolerances["lambda1_band"] = 1e-3;
  write_csv(ctx, "eigen.csv", csv);
}

void run_extension(ScenarioContext& ctx) {
  Csv csv({"s", "x0", "flux", "pv_value", "minus_kappa_pv", "rel_err",
           "w0_deriv_max_err"});
  for (double sv : s_or(ctx.config, {0.6, 0.8})) {
    const FracOrder s(sv);
    ScalarField bump;
    bump.value = [](double y) { return std::exp(-0.5 * y * y); };
    bump.second_derivative = [](double y) {
      return (y * y - 1.0) * std::exp(-0.5 * y * y);
    };
    bump.fourth_derivative = [](double y) {
      return (y * y * y * y - 6.0 * y * y + 3.0) * std::exp(-0.5 * y * y);
    };
    bump.tail_right = TailDescriptor::compact(40.0);
    bump.tail_left = TailDescriptor::compact(40.0);

    const double x0 = 0.0;
    const FluxResult flux = extension_flux(bump, x0, s);
    const PointValue pv = full_flap_line(bump, x0, s);
    const double target = -constants::kappa_bar(s) * pv.value;
    const double rel = std::abs(flux.flux - target) / std::abs(target);

    double w0_err = 0.0;
    for (double th = 0.1; th < std::numbers::pi - 0.1; th += 0.3) {
      const double h = 1e-4;
      const double num = (w0_angular_profile(th + h, s) -
                          w0_angular_profile(th - h, s)) /
                         (2.0 * h);
      w0_err = std::max(
          w0_err, std::abs(num - w0_angular_profile_derivative(th, s)));
    }
    csv.row({fmt(sv), fmt(x0), fmt(flux.flux), fmt(pv.value), fmt(target),
             fmt(rel), fmt(w0_err)});
  }
  ctx.tolerances["flux_rel"] = 1e-3;
  ctx.tolerances["w0_derivative"] = 1e-6;
  write_csv(ctx, "extension.csv", csv);
}

void run_limit_s1(ScenarioContext& ctx) {
  Csv csv({"s", "bc", "l2_error"});
  const std::vector<double> ss = s_or(ctx.config, {0.9, 0.95, 0.99});
  const int n = n_or(ctx.config, {512})[0];
  {
    const GradedMesh mesh = graded_mesh(-1.0, 1.0, n, 2.0);
    for (const auto& row :
         s_to_one_comparison(const_field(1.0), ss, mesh)) {
      if (row.bc == Bc::dirichlet)
        csv.row({fmt(row.s), "dirichlet", fmt(row.l2_error)});
    }
    for (const auto& row : s_to_one_comparison(linear_field(), ss, mesh)) {
      if (row.bc == Bc::neumann)
        csv.row({fmt(row.s), "neumann", fmt(row.l2_error)});
    }
  }
  write_csv(ctx, "limit_s1.csv", csv);

  Csv gn({"N", "gamma_n", "deviation"});
  for (int N : {1, 2, 3})
    gn.row({std::to_string(N), fmt(constants::gamma_n_limit(N)),
            fmt(std::abs(constants::gamma_n_limit(N) - 2.0))});
  ctx.tolerances["gamma_n_band"] = 1e-6;
  write_csv(ctx, "gamma_n.csv", gn);
}

using ScenarioFn = void (*)(ScenarioContext&);

const std::vector<std::pair<std::string, ScenarioFn>>& scenario_table() {
  static const std::vector<std::pair<std::string, ScenarioFn>> table = {
      {"constants", run_constants},   {"eval-op", run_eval_op},
      {"solve", run_solve},           {"rates", run_rates},
      {"dirichlet_rate", run_rates},  {"neumann_rate", run_neumann_rate},
      {"eigen", run_eigen},           {"extension", run_extension},
      {"limit-s1", run_limit_s1},
  };
  return table;
}

void validate(const ExperimentConfig& c) {
  if (c.scenario != "all") {
    bool known = false;
    for (const auto& [name, fn] : scenario_table())
      if (name == c.scenario) known = true;
    if (!known) throw ConfigError("unknown scenario: " + c.scenario);
  }
  for (double s : c.s_values)
    if (!(s > 0.0 && s < 1.0))
      throw ConfigError("s values must lie in (0,1)");
  for (int n : c.mesh_sizes)
    if (n < 4 || n % 2 != 0) throw ConfigError("mesh sizes must be even, >= 4");
  if (c.grading != 0.0 && !(c.grading >= 1.0))
    throw ConfigError("grading must be >= 1 (or 0 for the default)");
  if (c.bc != "neumann" && c.bc != "dirichlet")
    throw ConfigError("bc must be neumann or dirichlet");
  if (c.f_name != "const1" && c.f_name != "linear" && c.f_name != "sine" &&
      c.f_name != "manufactured")
    throw ConfigError("unknown field: " + c.f_name);
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : scenario_table()) v.push_back(name);
    v.push_back("all");
    return v;
  }();
  return names;
}

int run(const ExperimentConfig& config) {
  validate(config);
  if (config.threads > 0) omp_set_num_threads(config.threads);
  const auto t0 = std::chrono::steady_clock::now();

  ScenarioContext ctx{config, fs::path(config.out_dir), {}, {}};
  fs::create_directories(ctx.out);

  if (config.scenario == "all") {
    ExperimentConfig sub = config;
    sub.s_values.clear();
    sub.mesh_sizes.clear();
    for (const auto& [name, fn] : scenario_table()) {
      if (name == "rates") continue;  // alias of dirichlet_rate
      ScenarioContext sctx{sub, ctx.out, {}, {}};
      fn(sctx);
      for (auto& o : sctx.outputs) ctx.outputs.push_back(o);
      ctx.tolerances.update(sctx.tolerances);
    }
  } else {
    for (const auto& [name, fn] : scenario_table())
      if (name == config.scenario) fn(ctx);
  }

  nlohmann::json manifest;
  manifest["scenario"] = config.scenario;
  manifest["config"] = {
      {"s_values", config.s_values}, {"mesh_sizes", config.mesh_sizes},
      {"grading", config.grading},   {"f", config.f_name},
      {"bc", config.bc},             {"seed", config.seed},
      {"threads", config.threads},
  };
  manifest["tolerances"] = ctx.tolerances;
  manifest["versions"] = {
      {"fraclap", kVersion},
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                    std::to_string(EIGEN_MAJOR_VERSION) + "." +
                    std::to_string(EIGEN_MINOR_VERSION)},
  };
  // wall clock is reported but excluded from determinism comparisons
  manifest["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  manifest["outputs"] = ctx.outputs;

  const fs::path mpath = ctx.out / "manifest.json";
  const fs::path tmp = mpath.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << manifest.dump(2) << "\n";
  }
  fs::rename(tmp, mpath);
  return 0;
}

}  // namespace fraclap::cli
