#include "sdr/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "sdr/model.hpp"
#include "sdr/sampling.hpp"

namespace sdr {

namespace {

double offdiag_norm(const Eigen::MatrixXd& A) {
  double s = 0.0;
  for (Eigen::Index p = 0; p < A.rows(); ++p) {
    for (Eigen::Index q = p + 1; q < A.cols(); ++q) s += 2.0 * A(p, q) * A(p, q);
  }
  return std::sqrt(s);
}

}  // namespace

MomentMatrix moment_from_grads(const Eigen::MatrixXd& grads) {
  const double L = static_cast<double>(grads.rows());
  Eigen::MatrixXd M = grads.transpose() * grads / L;
  M = 0.5 * (M + M.transpose()).eval();
  return MomentMatrix{std::move(M)};
}

MomentMatrix estimate_moment(const RidgeModel& model, const SampleBatch& cutoff_batch) {
  if (cutoff_batch.density != Density::cutoff) {
    throw std::invalid_argument("estimate_moment expects a cutoff-density batch");
  }
  return moment_from_grads(model.effective_grads(cutoff_batch.points));
}

SymEigen sym_eigen(const Eigen::MatrixXd& M) {
  const Eigen::Index n = M.rows();
  if (M.cols() != n) throw std::invalid_argument("sym_eigen expects a square matrix");
  const double fro = M.norm();
  if ((M - M.transpose()).norm() > 1e-9 * std::max(fro, 1e-300)) {
    throw std::invalid_argument("sym_eigen expects a symmetric matrix");
  }

  Eigen::MatrixXd A = 0.5 * (M + M.transpose());
  Eigen::MatrixXd V = Eigen::MatrixXd::Identity(n, n);

  // Cyclic-by-row Jacobi sweeps until the off-diagonal mass is negligible.
  const double tol = 1e-12 * std::max(fro, 1e-300);
  for (int sweep = 0; sweep < 100 && offdiag_norm(A) > tol; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = A(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double tau = (A(q, q) - A(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double cth = 1.0 / std::sqrt(1.0 + t * t);
        const double sth = t * cth;

        for (Eigen::Index i = 0; i < n; ++i) {
          const double aip = A(i, p), aiq = A(i, q);
          A(i, p) = cth * aip - sth * aiq;
          A(i, q) = sth * aip + cth * aiq;
        }
        for (Eigen::Index i = 0; i < n; ++i) {
          const double api = A(p, i), aqi = A(q, i);
          A(p, i) = cth * api - sth * aqi;
          A(q, i) = sth * api + cth * aqi;
        }
        for (Eigen::Index i = 0; i < n; ++i) {
          const double vip = V(i, p), viq = V(i, q);
          V(i, p) = cth * vip - sth * viq;
          V(i, q) = sth * vip + cth * viq;
        }
      }
    }
  }

  // Stable descending sort keeps the sweep order on ties, which makes the
  // degenerate-spectrum output deterministic.
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return A(i, i) > A(j, j); });

  SymEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    out.values(r) = A(order[r], order[r]);
    Eigen::VectorXd v = V.col(order[r]);
    Eigen::Index imax = 0;
    for (Eigen::Index i = 1; i < n; ++i) {
      if (std::abs(v(i)) > std::abs(v(imax))) imax = i;
    }
    if (v(imax) < 0.0) v = -v;
    out.vectors.col(r) = v;
  }
  return out;
}

Projector top_k_projector(const MomentMatrix& M, int k) {
  const int n = M.dim();
  if (k < 1 || k > n) throw std::invalid_argument("projector rank k out of range");

  Projector proj;
  proj.k = k;
  const SymEigen eig = sym_eigen(M.entries);
  if (eig.values.cwiseAbs().maxCoeff() < 1e-12) {
    proj.fallback = true;
    proj.entries = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < k; ++i) proj.entries(i, i) = 1.0;
    return proj;
  }
  const Eigen::MatrixXd U = eig.vectors.leftCols(k);
  proj.entries = U * U.transpose();
  proj.entries = 0.5 * (proj.entries + proj.entries.transpose()).eval();
  return proj;
}

double rank_penalty(const MomentMatrix& M, int k) {
  const int n = M.dim();
  if (k < 1 || k > n) throw std::invalid_argument("rank_penalty k out of range");
  const SymEigen eig = sym_eigen(M.entries);
  double s = 0.0;
  for (int i = k; i < n; ++i) s += eig.values(i);
  return s;
}

double subspace_accuracy(const Eigen::MatrixXd& P, const Eigen::MatrixXd& P_true) {
  if (P.rows() != P_true.rows() || P.cols() != P_true.cols()) {
    throw std::invalid_argument("projector dimensions differ");
  }
  return (P - P_true).norm();
}

void matrix_to_csv(const Eigen::MatrixXd& M, std::ostream& out) {
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (j) out << ',';
      out << M(i, j);
    }
    out << '\n';
  }
}

void matrix_to_csv_file(const Eigen::MatrixXd& M, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  matrix_to_csv(M, f);
}

}  // namespace sdr
