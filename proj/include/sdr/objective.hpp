#pragma once

#include <Eigen/Dense>
#include <functional>

namespace sdr {

struct RidgeModel;
struct SampleBatch;
struct Projector;

using TargetFunction = std::function<double(const Eigen::VectorXd&)>;

// Everything the inner minimization needs, frozen for one outer iteration:
// the two fixed batches with their cached cutoff factors, the target values,
// and the penalty anchors (previous model's effective gradients times the
// previous projector).
struct ObjectiveContext {
  TargetFunction target;
  Eigen::MatrixXd X;          // K x n gaussian points
  Eigen::VectorXd fvals;      // target at X rows
  Eigen::VectorXd s_x;        // cutoff factor at X rows
  Eigen::MatrixXd Z;          // L x n cutoff points
  Eigen::VectorXd rho_z;      // radial coefficient at Z rows (0 for gamma = inf)
  Eigen::MatrixXd anchors;    // L x n
  Eigen::MatrixXd projector;  // n x n, P_{t-1}
  double lambda = 0.0;

  int K() const { return static_cast<int>(X.rows()); }
  int L() const { return static_cast<int>(Z.rows()); }
};

struct ObjectiveValue {
  double phi1 = 0.0;
  double phi2 = 0.0;
  double total = 0.0;
  Eigen::VectorXd grad;  // empty unless requested
};

// Scratch matrices for eval_objective; reusing one across optimizer steps
// avoids megabytes of churn per evaluation.
struct ObjectiveWorkspace {
  Eigen::MatrixXd Ux, psi_x, dpsi_x;
  Eigen::MatrixXd Uz, psi_z, dpsi_z, ddpsi_z;
  Eigen::MatrixXd H, Rm, T, C1, Wx, gA;
  Eigen::VectorXd G, e, w1, theta, q, w, gb, gc;
};

// (1/K) sum (f(x_i) - G(x_i))^2 over a gaussian batch.
double data_fit(const RidgeModel& model, const TargetFunction& target,
                const SampleBatch& gauss_batch);

// L x n matrix whose rows are the model's effective gradient at each z_i
// right-multiplied by the projector. Computed once per outer iteration.
Eigen::MatrixXd penalty_anchor(const RidgeModel& model, const SampleBatch& cutoff_batch,
                               const Eigen::MatrixXd& projector);

// (1/L) sum |h_model(z_i) - anchor_i|^2.
double penalty_term(const RidgeModel& model, const SampleBatch& cutoff_batch,
                    const Eigen::MatrixXd& anchors);

ObjectiveContext make_objective_context(const TargetFunction& target,
                                        const SampleBatch& gauss_batch,
                                        const SampleBatch& cutoff_batch, double lambda,
                                        const RidgeModel& prev_model,
                                        const Eigen::MatrixXd& projector);

// data_fit + lambda * penalty_term against the frozen context.
double objective_total(const RidgeModel& model, const ObjectiveContext& ctx);

// Value and, when with_grad, the exact analytic gradient with respect to the
// flat parameter vector [a_1..a_M, b, c]. Per-sample terms are reduced in
// index order so results do not depend on thread count.
ObjectiveValue eval_objective(const RidgeModel& model, const ObjectiveContext& ctx,
                              bool with_grad, ObjectiveWorkspace* ws = nullptr);

// Gradient of objective_total over all model parameters (flat layout).
Eigen::VectorXd grad_params(const RidgeModel& model, const ObjectiveContext& ctx);

}  // namespace sdr
