#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

namespace sdr {

struct RidgeModel;
struct SampleBatch;

// Symmetric PSD estimate of the gradient Gram matrix; kept symmetrized to
// machine precision.
struct MomentMatrix {
  Eigen::MatrixXd entries;
  int dim() const { return static_cast<int>(entries.rows()); }
};

// Symmetric idempotent rank-<=k matrix. `fallback` is set when the moment
// matrix was numerically zero and the canonical first-k axes were used.
struct Projector {
  Eigen::MatrixXd entries;
  int k = 0;
  bool fallback = false;
};

struct SymEigen {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // columns, orthonormal, sign-normalized
};

// (1/L) sum_i h(z_i) h(z_i)', h the model's effective gradient field;
// symmetrized after accumulation.
MomentMatrix estimate_moment(const RidgeModel& model, const SampleBatch& cutoff_batch);

MomentMatrix moment_from_grads(const Eigen::MatrixXd& grads);

// Cyclic Jacobi for symmetric matrices. Eigenvalues descending; each
// eigenvector's largest-magnitude component is made positive (first such
// index on ties). Throws if the input is not symmetric to 1e-9 * ||M||_F.
SymEigen sym_eigen(const Eigen::MatrixXd& M);

// P = sum of the top-k eigenvector outer products. If every eigenvalue is
// below 1e-12 the projector onto the first k canonical axes is returned
// with the fallback flag set.
Projector top_k_projector(const MomentMatrix& M, int k);

// Sum of the trailing n-k eigenvalues: the Eckart-Young distance from
// M^{1/2} to the rank-k matrices.
double rank_penalty(const MomentMatrix& M, int k);

// Frobenius distance between two projectors.
double subspace_accuracy(const Eigen::MatrixXd& P, const Eigen::MatrixXd& P_true);

void matrix_to_csv(const Eigen::MatrixXd& M, std::ostream& out);
void matrix_to_csv_file(const Eigen::MatrixXd& M, const std::string& path);

}  // namespace sdr
