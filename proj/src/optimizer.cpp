#include "sdr/optimizer.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "sdr/model.hpp"
#include "sdr/objective.hpp"

namespace sdr {

namespace {

void check_config(const OptimizerConfig& cfg) {
  if (cfg.step_count < 1) throw std::invalid_argument("step_count must be >= 1");
  if (!(cfg.learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be positive");
  if (!(cfg.beta1 > 0.0 && cfg.beta1 < 1.0 && cfg.beta2 > 0.0 && cfg.beta2 < 1.0)) {
    throw std::invalid_argument("beta1 and beta2 must lie in (0, 1)");
  }
}

// Block b covers params [offset, offset+len); the a_i blocks carry the
// direction vectors, then M scalar offsets, then M scalar coefficients.
struct Block {
  int offset;
  int len;
};

const char* block_label(int block_idx, int M) {
  if (block_idx < M) return "a";
  if (block_idx < 2 * M) return "b";
  return "c";
}

}  // namespace

RidgeModel minimize(const RidgeModel& model0, const ObjectiveContext& ctx,
                    const OptimizerConfig& cfg) {
  check_config(cfg);

  const int n = model0.n;
  const int M = model0.M;
  std::vector<Block> blocks;
  blocks.reserve(3 * M);
  for (int i = 0; i < M; ++i) blocks.push_back({i * n, n});
  for (int i = 0; i < 2 * M; ++i) blocks.push_back({M * n + i, 1});

  RidgeModel model = model0;
  Eigen::VectorXd p = model.params();
  Eigen::VectorXd m1 = Eigen::VectorXd::Zero(p.size());
  Eigen::VectorXd v2 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(blocks.size()));

  Eigen::VectorXd best_p = p;
  double best_obj = std::numeric_limits<double>::infinity();

  for (int step = 0; step <= cfg.step_count; ++step) {
    const bool last = step == cfg.step_count;
    model.set_params(p);
    const ObjectiveValue val = eval_objective(model, ctx, !last);
    if (!std::isfinite(val.total)) throw NonFiniteError("objective", step);
    if (val.total < best_obj) {
      best_obj = val.total;
      best_p = p;
    }
    if (last) break;

    m1 = cfg.beta1 * m1 + (1.0 - cfg.beta1) * val.grad;
    const double bc1 = 1.0 - std::pow(cfg.beta1, step + 1);
    const double bc2 = 1.0 - std::pow(cfg.beta2, step + 1);
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      const auto [off, len] = blocks[bi];
      const auto g = val.grad.segment(off, len);
      if (!g.allFinite()) throw NonFiniteError(block_label(static_cast<int>(bi), M), step);
      v2(bi) = cfg.beta2 * v2(bi) + (1.0 - cfg.beta2) * g.squaredNorm() / len;
      const double denom = std::sqrt(v2(bi) / bc2) + cfg.eps;
      p.segment(off, len) -= (cfg.learning_rate / bc1 / denom) * m1.segment(off, len);
    }
  }

  model.set_params(best_p);
  return model;
}

}  // namespace sdr
