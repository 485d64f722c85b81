#include "sdr/objective.hpp"

#include <cmath>
#include <stdexcept>

#include "sdr/model.hpp"
#include "sdr/sampling.hpp"
#include "sdr/spectral.hpp"

namespace sdr {

namespace {

// u = pts * a' - b into U, then the activation triple entrywise. ddpsi may
// be null when the second derivative is not needed.
void unit_responses(const RidgeModel& m, const Eigen::MatrixXd& pts, Eigen::MatrixXd& U,
                    Eigen::MatrixXd& psi, Eigen::MatrixXd& dpsi, Eigen::MatrixXd* ddpsi) {
  const Eigen::Index rows = pts.rows();
  U.resize(rows, m.M);
  U.noalias() = pts * m.a.transpose();
  U.rowwise() -= m.b.transpose();
  psi.resize(rows, m.M);
  dpsi.resize(rows, m.M);
  if (ddpsi) ddpsi->resize(rows, m.M);
  m.act->triple_batch(U.data(), psi.data(), dpsi.data(), ddpsi ? ddpsi->data() : nullptr,
                      rows * m.M);
}

Eigen::VectorXd cutoff_factors(const RidgeModel& m, const Eigen::MatrixXd& pts) {
  Eigen::VectorXd s(pts.rows());
  for (Eigen::Index i = 0; i < pts.rows(); ++i) s(i) = m.cutoff(pts.row(i).norm());
  return s;
}

Eigen::VectorXd radial_coeffs(const RidgeModel& m, const Eigen::MatrixXd& pts) {
  Eigen::VectorXd rho(pts.rows());
  for (Eigen::Index i = 0; i < pts.rows(); ++i) rho(i) = m.radial_coeff(pts.row(i).norm());
  return rho;
}

// Effective gradient rows for a whole batch with precomputed responses.
Eigen::MatrixXd effective_grad_rows(const RidgeModel& m, const Eigen::MatrixXd& pts,
                                    const Eigen::MatrixXd& psi, const Eigen::MatrixXd& dpsi,
                                    const Eigen::VectorXd& rho) {
  Eigen::MatrixXd H = (dpsi * m.c.asDiagonal()) * m.a;  // rows = grad theta
  if (!m.hard_cutoff()) {
    const Eigen::VectorXd theta = psi * m.c;
    H -= (rho.cwiseProduct(theta)).asDiagonal() * pts;
  }
  return H;
}

}  // namespace

double data_fit(const RidgeModel& model, const TargetFunction& target,
                const SampleBatch& gauss_batch) {
  if (gauss_batch.density != Density::gaussian) {
    throw std::invalid_argument("data_fit expects a gaussian batch");
  }
  if (gauss_batch.dim() != model.n) {
    throw std::invalid_argument("batch dimension does not match model dimension");
  }
  const int K = gauss_batch.count();
  double acc = 0.0;
  for (int i = 0; i < K; ++i) {
    const Eigen::VectorXd x = gauss_batch.points.row(i).transpose();
    const double d = target(x) - model.eval(x);
    acc += d * d;
  }
  return acc / static_cast<double>(K);
}

Eigen::MatrixXd penalty_anchor(const RidgeModel& model, const SampleBatch& cutoff_batch,
                               const Eigen::MatrixXd& projector) {
  if (projector.rows() != model.n || projector.cols() != model.n) {
    throw std::invalid_argument("projector dimension does not match model dimension");
  }
  return model.effective_grads(cutoff_batch.points) * projector;
}

double penalty_term(const RidgeModel& model, const SampleBatch& cutoff_batch,
                    const Eigen::MatrixXd& anchors) {
  if (anchors.rows() != cutoff_batch.count() || anchors.cols() != model.n) {
    throw std::invalid_argument("anchor matrix shape does not match the cutoff batch");
  }
  const Eigen::MatrixXd H = model.effective_grads(cutoff_batch.points);
  return (H - anchors).squaredNorm() / static_cast<double>(cutoff_batch.count());
}

ObjectiveContext make_objective_context(const TargetFunction& target,
                                        const SampleBatch& gauss_batch,
                                        const SampleBatch& cutoff_batch, double lambda,
                                        const RidgeModel& prev_model,
                                        const Eigen::MatrixXd& projector) {
  if (lambda < 0.0) throw std::invalid_argument("lambda must be nonnegative");
  if (gauss_batch.density != Density::gaussian || cutoff_batch.density != Density::cutoff) {
    throw std::invalid_argument("objective context needs one gaussian and one cutoff batch");
  }
  ObjectiveContext ctx;
  ctx.target = target;
  ctx.X = gauss_batch.points;
  ctx.Z = cutoff_batch.points;
  ctx.lambda = lambda;
  ctx.fvals.resize(ctx.K());
  for (int i = 0; i < ctx.K(); ++i) ctx.fvals(i) = target(ctx.X.row(i).transpose());
  ctx.s_x = cutoff_factors(prev_model, ctx.X);
  ctx.rho_z = radial_coeffs(prev_model, ctx.Z);
  ctx.anchors = penalty_anchor(prev_model, cutoff_batch, projector);
  ctx.projector = projector;
  if (ctx.anchors.rows() != ctx.L()) {
    throw std::invalid_argument("anchor rows must match the cutoff batch size");
  }
  return ctx;
}

ObjectiveValue eval_objective(const RidgeModel& model, const ObjectiveContext& ctx,
                              bool with_grad) {
  if (ctx.X.cols() != model.n || ctx.Z.cols() != model.n) {
    throw std::invalid_argument("context dimension does not match model dimension");
  }
  const int n = model.n;
  const int M = model.M;
  const double K = static_cast<double>(ctx.K());
  const double L = static_cast<double>(ctx.L());

  ObjectiveValue out;
  Eigen::MatrixXd gA = Eigen::MatrixXd::Zero(M, n);
  Eigen::VectorXd gb = Eigen::VectorXd::Zero(M);
  Eigen::VectorXd gc = Eigen::VectorXd::Zero(M);

  {  // data-fit half
    Eigen::MatrixXd psi, dpsi;
    unit_responses(model, ctx.X, psi, dpsi, nullptr);
    const Eigen::VectorXd G = ctx.s_x.cwiseProduct(psi * model.c);
    const Eigen::VectorXd e = G - ctx.fvals;
    out.phi1 = e.squaredNorm() / K;
    if (with_grad) {
      const Eigen::VectorXd w1 = (2.0 / K) * ctx.s_x.cwiseProduct(e);
      gc += psi.transpose() * w1;
      gb -= model.c.cwiseProduct(dpsi.transpose() * w1);
      gA += model.c.asDiagonal() * (dpsi.transpose() * (w1.asDiagonal() * ctx.X));
    }
  }

  const bool need_phi2 = ctx.lambda > 0.0;
  if (need_phi2) {  // penalty half
    Eigen::MatrixXd psz, dpsz, ddpsz;
    unit_responses(model, ctx.Z, psz, dpsz, with_grad ? &ddpsz : nullptr);
    Eigen::MatrixXd H = (dpsz * model.c.asDiagonal()) * model.a;
    Eigen::VectorXd theta;
    if (!model.hard_cutoff()) {
      theta = psz * model.c;
      H -= (ctx.rho_z.cwiseProduct(theta)).asDiagonal() * ctx.Z;
    }
    const Eigen::MatrixXd Rm = H - ctx.anchors;
    out.phi2 = Rm.squaredNorm() / L;
    if (with_grad) {
      const double s = 2.0 * ctx.lambda / L;
      const Eigen::MatrixXd T = Rm * model.a.transpose();             // r_i . a_j
      const Eigen::VectorXd q = (Rm.array() * ctx.Z.array()).rowwise().sum();  // r_i . z_i
      const Eigen::VectorXd w = ctx.rho_z.cwiseProduct(q);
      gc += s * ((dpsz.array() * T.array()).colwise().sum().matrix().transpose() -
                 psz.transpose() * w);
      gb += s * model.c.cwiseProduct(
                    dpsz.transpose() * w -
                    (ddpsz.array() * T.array()).colwise().sum().matrix().transpose());
      const Eigen::MatrixXd C1 =
          (ddpsz.array() * T.array()).matrix() - w.asDiagonal() * dpsz;
      gA += model.c.asDiagonal() *
            (s * (C1.transpose() * ctx.Z + dpsz.transpose() * Rm)).eval();
    }
  }

  out.total = out.phi1 + ctx.lambda * out.phi2;
  if (with_grad) {
    out.grad.resize(model.param_count());
    for (int i = 0; i < M; ++i) out.grad.segment(i * n, n) = gA.row(i).transpose();
    out.grad.segment(M * n, M) = gb;
    out.grad.segment(M * n + M, M) = gc;
  }
  return out;
}

double objective_total(const RidgeModel& model, const ObjectiveContext& ctx) {
  return eval_objective(model, ctx, false).total;
}

Eigen::VectorXd grad_params(const RidgeModel& model, const ObjectiveContext& ctx) {
  return eval_objective(model, ctx, true).grad;
}

}  // namespace sdr
