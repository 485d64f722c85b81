#include "sdr/driver.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sdr/rng.hpp"

namespace sdr {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string format17(double v) {
  std::ostringstream ss;
  ss << std::setprecision(17) << v;
  return ss.str();
}

}  // namespace

double RunConfig::resolved_radius() const {
  if (radius > 0.0) return radius;
  return quantile_radius(quantile_p, n);
}

void RunConfig::validate() const {
  if (n < 2 || k < 1 || k >= n) throw std::invalid_argument("need 1 <= k < n and n >= 2");
  if (lambda < 0.0) throw std::invalid_argument("lambda must be nonnegative");
  if (outer_iters < 0) throw std::invalid_argument("outer iteration count must be >= 0");
  if (units < 1 || gauss_samples < 1 || cutoff_samples < 1) {
    throw std::invalid_argument("unit and sample counts must be >= 1");
  }
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive or inf");
  if (radius <= 0.0 && !(quantile_p > 0.0 && quantile_p < 1.0)) {
    throw std::invalid_argument("quantile_p must be in (0,1) when radius is derived");
  }
}

std::uint64_t gauss_seed(std::uint64_t run_seed) { return derive_seed(run_seed, 0x67); }
std::uint64_t cutoff_seed(std::uint64_t run_seed) { return derive_seed(run_seed, 0x63); }
std::uint64_t init_seed(std::uint64_t run_seed, int outer_t) {
  return derive_seed(run_seed, 0x1000 + static_cast<std::uint64_t>(outer_t));
}

RunResult run_alternating(const RunConfig& cfg_in, const TargetFunction& target,
                          const Eigen::MatrixXd* P_true, const RunHooks* hooks) {
  cfg_in.validate();
  RunConfig cfg = cfg_in;
  cfg.radius = cfg_in.resolved_radius();
  const Activation& act = activation_by_name(cfg.activation);

  RunResult res;
  res.config = cfg;

  const auto t_sample = Clock::now();
  SampleBatch gauss = (hooks && hooks->gauss_batch)
                          ? *hooks->gauss_batch
                          : sample_gaussian(cfg.n, cfg.gauss_samples, gauss_seed(cfg.seed));
  SampleBatch cutoff = (hooks && hooks->cutoff_batch)
                           ? *hooks->cutoff_batch
                           : sample_cutoff(cfg.n, cfg.cutoff_samples, cfg.gamma, cfg.radius,
                                           cutoff_seed(cfg.seed));
  res.phase_seconds.sample = seconds_since(t_sample);

  RidgeModel prev = zero_model(cfg.n, cfg.units, cfg.gamma, cfg.radius, act);
  Projector P;
  P.k = cfg.k;
  P.entries = Eigen::MatrixXd::Zero(cfg.n, cfg.n);

  res.projector = P;
  res.model = prev;
  res.trace.reserve(cfg.outer_iters);

  for (int t = 1; t <= cfg.outer_iters; ++t) {
    const ObjectiveContext ctx =
        make_objective_context(target, gauss, cutoff, cfg.lambda, prev, P.entries);

    RidgeModel start = prev;
    if (t == 1 || !cfg.opt.warm_start) {
      start = (t == 1 && hooks && hooks->init_model)
                  ? *hooks->init_model
                  : random_model(cfg.n, cfg.units, cfg.gamma, cfg.radius, act,
                                 init_seed(cfg.seed, t));
    }

    const auto t_min = Clock::now();
    RidgeModel fitted;
    try {
      fitted = minimize(start, ctx, cfg.opt);
    } catch (const NonFiniteError& e) {
      throw std::runtime_error("outer iteration " + std::to_string(t) + ": " + e.what());
    }
    res.phase_seconds.minimize += seconds_since(t_min);

    const auto t_mom = Clock::now();
    const MomentMatrix Mhat = estimate_moment(fitted, cutoff);
    res.phase_seconds.moment += seconds_since(t_mom);

    const auto t_proj = Clock::now();
    const SymEigen eig = sym_eigen(Mhat.entries);
    P = top_k_projector(Mhat, cfg.k);
    res.phase_seconds.projector += seconds_since(t_proj);

    TraceRow row;
    row.t = t;
    row.phi1 = data_fit(fitted, target, gauss);
    row.phi2 = penalty_term(fitted, cutoff, ctx.anchors);
    row.total = row.phi1 + cfg.lambda * row.phi2;
    row.eigenvalues = eig.values;
    row.gap = cfg.k < cfg.n ? eig.values(cfg.k - 1) - eig.values(cfg.k) : 0.0;
    if (P_true) row.acc = subspace_accuracy(P.entries, *P_true);
    res.trace.push_back(std::move(row));

    prev = fitted;
  }

  res.projector = P;
  res.model = prev;
  return res;
}

void result_to_json(const RunResult& result, std::ostream& out) {
  nlohmann::json j;
  const RunConfig& c = result.config;
  j["config"] = {
      {"n", c.n},
      {"k", c.k},
      {"lambda", c.lambda},
      {"gamma", std::isinf(c.gamma) ? nlohmann::json("inf") : nlohmann::json(c.gamma)},
      {"radius", c.radius},
      {"quantile_p", c.quantile_p},
      {"outer_iters", c.outer_iters},
      {"units", c.units},
      {"gauss_samples", c.gauss_samples},
      {"cutoff_samples", c.cutoff_samples},
      {"seed", c.seed},
      {"activation", c.activation},
      {"optimizer",
       {{"step_count", c.opt.step_count},
        {"learning_rate", c.opt.learning_rate},
        {"beta1", c.opt.beta1},
        {"beta2", c.opt.beta2},
        {"eps", c.opt.eps},
        {"warm_start", c.opt.warm_start}}},
  };

  j["projector"] = nlohmann::json::array();
  for (Eigen::Index i = 0; i < result.projector.entries.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index jj = 0; jj < result.projector.entries.cols(); ++jj) {
      row.push_back(result.projector.entries(i, jj));
    }
    j["projector"].push_back(row);
  }
  j["projector_rank"] = result.projector.k;
  j["projector_fallback"] = result.projector.fallback;

  std::ostringstream model_text;
  save_model(result.model, model_text);
  j["model"] = model_text.str();

  j["trace"] = nlohmann::json::array();
  for (const TraceRow& r : result.trace) {
    nlohmann::json row = {{"t", r.t},   {"phi1", r.phi1}, {"phi2", r.phi2},
                          {"total", r.total}, {"gap", r.gap}};
    nlohmann::json ev = nlohmann::json::array();
    for (Eigen::Index i = 0; i < r.eigenvalues.size(); ++i) ev.push_back(r.eigenvalues(i));
    row["eigenvalues"] = ev;
    if (std::isfinite(r.acc)) row["acc"] = r.acc;
    j["trace"].push_back(row);
  }

  out << j.dump(2) << '\n';
}

void trace_to_csv(const RunResult& result, std::ostream& out) {
  const int n = result.config.n;
  out << "t,phi1,phi2,total";
  for (int i = 1; i <= n; ++i) out << ",eig" << i;
  out << ",gap,acc\n";
  for (const TraceRow& r : result.trace) {
    out << r.t << ',' << format17(r.phi1) << ',' << format17(r.phi2) << ','
        << format17(r.total);
    for (Eigen::Index i = 0; i < r.eigenvalues.size(); ++i) {
      out << ',' << format17(r.eigenvalues(i));
    }
    out << ',' << format17(r.gap) << ',' << format17(r.acc) << '\n';
  }
}

void result_to_json_file(const RunResult& result, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  result_to_json(result, f);
}

void trace_to_csv_file(const RunResult& result, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  trace_to_csv(result, f);
}

}  // namespace sdr
