// Command-line surface: fit runs, parameter sweeps, the dual-space
// verification suite, and chart emission from sweep tables.
//
// Exit codes: 0 success, 1 usage error, 2 numerical failure.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include "sdr/driver.hpp"
#include "sdr/experiments.hpp"
#include "sdr/fourier_verify.hpp"

namespace {

struct CommonFlags {
  int n = 4;
  int k = 2;
  double lambda = 0.1;
  std::string gamma = "inf";
  double radius = 0.0;
  double quantile_p = 0.01;
  int iters = -1;
  int units = -1;
  int gauss_samples = -1;
  int cutoff_samples = -1;
  std::uint64_t seed = 1;
  std::string preset = "desk";
  std::string activation = "tanh";
  double learning_rate = 1e-2;
  int inner_steps = 200;
  bool cold_start = false;
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--n", f.n, "input dimension");
  cmd->add_option("--k", f.k, "target subspace dimension");
  cmd->add_option("--lambda", f.lambda, "penalty weight");
  cmd->add_option("--gamma", f.gamma, "cutoff steepness (positive real or 'inf')");
  cmd->add_option("--radius", f.radius, "cutoff radius (overrides --quantile-p)");
  cmd->add_option("--quantile-p", f.quantile_p, "tail probability used to derive the radius");
  cmd->add_option("--iters", f.iters, "outer iterations N");
  cmd->add_option("--units", f.units, "ridge units M");
  cmd->add_option("--gauss-samples", f.gauss_samples, "gaussian sample count K");
  cmd->add_option("--cutoff-samples", f.cutoff_samples, "cutoff sample count L");
  cmd->add_option("--seed", f.seed, "run seed");
  cmd->add_option("--preset", f.preset, "parameter preset: paper or desk")
      ->check(CLI::IsMember({"paper", "desk"}));
  cmd->add_option("--activation", f.activation, "ridge nonlinearity")
      ->check(CLI::IsMember({"tanh", "sigmoid"}));
  cmd->add_option("--learning-rate", f.learning_rate, "inner Adam step size");
  cmd->add_option("--inner-steps", f.inner_steps, "inner optimizer steps per outer iteration");
  cmd->add_flag("--cold-start", f.cold_start, "re-initialize the model every outer iteration");
  cmd->add_option("--threads", f.threads, "worker threads for independent sweep cells");
  cmd->set_config("--config", "", "flat key=value configuration file; flags override it");
}

sdr::RunConfig build_config(const CommonFlags& f) {
  sdr::RunConfig cfg = f.preset == "paper" ? sdr::paper_preset() : sdr::desk_preset();
  cfg.n = f.n;
  cfg.k = f.k;
  cfg.lambda = f.lambda;
  if (f.gamma == "inf") {
    cfg.gamma = std::numeric_limits<double>::infinity();
  } else {
    cfg.gamma = std::stod(f.gamma);
  }
  cfg.radius = f.radius;
  cfg.quantile_p = f.quantile_p;
  if (f.iters >= 0) cfg.outer_iters = f.iters;
  if (f.units > 0) cfg.units = f.units;
  if (f.gauss_samples > 0) cfg.gauss_samples = f.gauss_samples;
  if (f.cutoff_samples > 0) cfg.cutoff_samples = f.cutoff_samples;
  cfg.seed = f.seed;
  cfg.activation = f.activation;
  cfg.opt.learning_rate = f.learning_rate;
  cfg.opt.step_count = f.inner_steps;
  cfg.opt.warm_start = !f.cold_start;
  return cfg;
}

std::string swap_extension(const std::string& path, const std::string& ext) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + ext;
  }
  return path.substr(0, dot) + ext;
}

int run_fit(const CommonFlags& f, double C, const std::string& out_path) {
  const sdr::RunConfig cfg = build_config(f);
  Eigen::MatrixXd P_true = Eigen::MatrixXd::Zero(cfg.n, cfg.n);
  for (int i = 0; i < cfg.k; ++i) P_true(i, i) = 1.0;

  const sdr::RunResult res =
      sdr::run_alternating(cfg, sdr::ackley_indicator_target(cfg.n, C), &P_true);

  sdr::result_to_json_file(res, out_path);
  sdr::trace_to_csv_file(res, swap_extension(out_path, ".csv"));

  std::printf("wrote %s and %s\n", out_path.c_str(), swap_extension(out_path, ".csv").c_str());
  if (!res.trace.empty()) {
    const auto& last = res.trace.back();
    std::printf("final: total=%.6g phi1=%.6g phi2=%.6g gap=%.6g acc=%.6g\n", last.total,
                last.phi1, last.phi2, last.gap, last.acc);
  }
  std::printf("phases: sample=%.2fs minimize=%.2fs moment=%.2fs projector=%.2fs\n",
              res.phase_seconds.sample, res.phase_seconds.minimize, res.phase_seconds.moment,
              res.phase_seconds.projector);
  return 0;
}

int run_sweep_cmd(const CommonFlags& f, const std::vector<int>& dims,
                  const std::vector<double>& Cs, const std::vector<double>& lambdas, int reps,
                  const std::string& out_path, bool with_chart) {
  sdr::SweepSpec spec;
  spec.dims = dims;
  spec.C_values = Cs;
  spec.lambdas = lambdas;
  spec.base = build_config(f);
  spec.repetitions = reps;
  spec.base_seed = f.seed;

  const auto rows = sdr::run_sweep(spec, f.threads);
  sdr::sweep_to_csv_file(rows, out_path);
  std::printf("wrote %s (%zu rows)\n", out_path.c_str(), rows.size());
  if (with_chart) {
    const std::string svg = swap_extension(out_path, ".svg");
    sdr::emit_chart_file(rows, svg);
    std::printf("wrote %s\n", svg.c_str());
  }
  int failed = 0;
  for (const auto& r : rows) failed += r.failed ? 1 : 0;
  if (failed) std::fprintf(stderr, "%d of %zu cells failed\n", failed, rows.size());
  return 0;
}

int run_verify() {
  using sdr::make_grid_1d;
  bool ok = true;
  const int N = 512;
  const double X = 12.0;

  const auto gauss = make_grid_1d(N, X, [](double x) {
    return std::complex<double>(std::exp(-0.5 * x * x), 0.0);
  });
  const auto zero = make_grid_1d(N, X, [](double) { return std::complex<double>(0.0, 0.0); });
  const auto modulated = make_grid_1d(N, X, [](double x) {
    return std::complex<double>(std::exp(-0.5 * x * x) * std::cos(3.0 * x), 0.0);
  });

  const struct {
    const char* name;
    const sdr::GridFunction* g;
  } cases[] = {{"gaussian", &gauss}, {"zero", &zero}, {"modulated-gaussian", &modulated}};
  for (const auto& c : cases) {
    const auto check = sdr::convolution_identity_check(*c.g);
    std::printf("convolution identity [%-18s] residual = %.3e%s\n", c.name, check.residual,
                check.resolved ? "" : " (unresolved)");
    ok = ok && check.residual < 1e-6;
  }

  // Weierstrass transform of the standard Gaussian against its closed form.
  const auto w = sdr::weierstrass_transform(gauss);
  double sup = 0.0;
  for (int i = 0; i < N; ++i) {
    const double x = gauss.coord(i);
    sup = std::max(sup, std::abs(w.values[i].real() - std::sqrt(M_PI) * std::exp(-0.25 * x * x)));
  }
  std::printf("weierstrass gaussian sup-error = %.3e\n", sup);
  ok = ok && sup < 1e-6;

  const auto profile = [](double s) { return std::cos(4.0 * s); };
  const double eps = 4.0 * (M_PI / X);
  const double f1 = sdr::spectral_support_fraction(profile, 1.0, 0.0, eps);
  const double f2 = sdr::spectral_support_fraction(profile, std::cos(M_PI / 6), std::sin(M_PI / 6), eps);
  const auto iso = sdr::make_grid_2d(N, X, [](double x, double y) {
    const double r = std::sqrt(x * x + y * y);
    return std::complex<double>(std::cos(4.0 * r) * std::exp(-r * r / 8.0), 0.0);
  });
  const double f3 = sdr::spectral_energy_fraction(iso, 1.0, 0.0, eps);
  std::printf("spectral support fraction [ridge e1   ] = %.4f\n", f1);
  std::printf("spectral support fraction [ridge 30deg] = %.4f\n", f2);
  std::printf("spectral support fraction [isotropic  ] = %.4f\n", f3);
  ok = ok && f1 > 0.95 && f2 > 0.95 && f3 < 0.5;

  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"penalized alternating subspace recovery"};
  app.require_subcommand(1);

  CommonFlags flags;
  double fit_C = 0.0;
  std::string fit_out = "run.json";
  auto* fit = app.add_subcommand("fit", "run the alternating scheme once");
  add_common(fit, flags);
  fit->add_option("--C", fit_C, "indicator bump height of the synthetic target");
  fit->add_option("--out", fit_out, "output JSON path (trace CSV goes next to it)");

  std::vector<int> sweep_dims{4};
  std::vector<double> sweep_C{0.0, 1.0, 5.0};
  std::vector<double> sweep_lambda{1e-3, 1e-2, 1e-1, 1.0, 10.0};
  int sweep_reps = 3;
  std::string sweep_out = "sweep.csv";
  bool sweep_chart = false;
  auto* sweep = app.add_subcommand("sweep", "run an accuracy sweep over (n, C, lambda, seed)");
  add_common(sweep, flags);
  sweep->add_option("--dims", sweep_dims, "input dimensions to sweep");
  sweep->add_option("--C-values", sweep_C, "indicator bump heights");
  sweep->add_option("--lambdas", sweep_lambda, "penalty weights");
  sweep->add_option("--reps", sweep_reps, "seeds per cell");
  sweep->add_option("--out", sweep_out, "output CSV path");
  sweep->add_flag("--chart", sweep_chart, "also emit an SVG chart next to the CSV");

  auto* verify = app.add_subcommand("verify", "run the dual-space verification suite");

  std::string plot_in, plot_out;
  auto* plot = app.add_subcommand("plot", "render a sweep CSV as an SVG chart");
  plot->add_option("csv", plot_in, "sweep CSV produced by the sweep subcommand")->required();
  plot->add_option("--out", plot_out, "output SVG path (default: CSV path with .svg)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (fit->parsed()) return run_fit(flags, fit_C, fit_out);
    if (sweep->parsed()) {
      return run_sweep_cmd(flags, sweep_dims, sweep_C, sweep_lambda, sweep_reps, sweep_out,
                           sweep_chart);
    }
    if (verify->parsed()) return run_verify();
    if (plot->parsed()) {
      const auto rows = sdr::sweep_from_csv_file(plot_in);
      const std::string out = plot_out.empty() ? swap_extension(plot_in, ".svg") : plot_out;
      sdr::emit_chart_file(rows, out);
      std::printf("wrote %s\n", out.c_str());
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
