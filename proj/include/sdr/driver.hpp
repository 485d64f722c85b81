#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sdr/model.hpp"
#include "sdr/objective.hpp"
#include "sdr/optimizer.hpp"
#include "sdr/sampling.hpp"
#include "sdr/spectral.hpp"

namespace sdr {

// Outer-loop configuration. If radius <= 0 it is derived from quantile_p as
// the gaussian tail radius Q(quantile_p, n) before the run starts.
struct RunConfig {
  int n = 4;
  int k = 2;
  double lambda = 0.1;
  double gamma = std::numeric_limits<double>::infinity();
  double radius = 0.0;
  double quantile_p = 0.01;
  int outer_iters = 50;     // N
  int units = 64;           // M
  int gauss_samples = 500;  // K
  int cutoff_samples = 2000;  // L
  std::uint64_t seed = 1;
  std::string activation = "tanh";
  OptimizerConfig opt;

  double resolved_radius() const;
  void validate() const;
};

struct TraceRow {
  int t = 0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  double total = 0.0;
  Eigen::VectorXd eigenvalues;  // descending, all n
  double gap = 0.0;             // lambda_k - lambda_{k+1} (0 when k = n)
  double acc = std::numeric_limits<double>::quiet_NaN();
};

struct PhaseSeconds {
  double sample = 0.0;
  double minimize = 0.0;
  double moment = 0.0;
  double projector = 0.0;
};

struct RunResult {
  Projector projector;
  RidgeModel model;
  std::vector<TraceRow> trace;
  PhaseSeconds phase_seconds;
  RunConfig config;  // resolved (radius filled in)
};

// Optional injection points for tests: pre-built batches and the model the
// first inner minimization starts from.
struct RunHooks {
  std::optional<SampleBatch> gauss_batch;
  std::optional<SampleBatch> cutoff_batch;
  std::optional<RidgeModel> init_model;
};

// Child-seed streams derived from the run seed.
std::uint64_t gauss_seed(std::uint64_t run_seed);
std::uint64_t cutoff_seed(std::uint64_t run_seed);
std::uint64_t init_seed(std::uint64_t run_seed, int outer_t);

// The alternating scheme: P_0 = 0 and G_0 = 0, both batches sampled once,
// then N rounds of inner minimization against frozen anchors followed by
// moment estimation and top-k projection. P_true, when given, fills the
// accuracy column of the trace.
RunResult run_alternating(const RunConfig& cfg, const TargetFunction& target,
                          const Eigen::MatrixXd* P_true = nullptr,
                          const RunHooks* hooks = nullptr);

// Deterministic serializations; wall-clock timings are deliberately not
// written so identical runs produce identical bytes.
void result_to_json(const RunResult& result, std::ostream& out);
void trace_to_csv(const RunResult& result, std::ostream& out);
void result_to_json_file(const RunResult& result, const std::string& path);
void trace_to_csv_file(const RunResult& result, const std::string& path);

}  // namespace sdr
