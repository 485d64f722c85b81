#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "sdr/activation.hpp"

namespace sdr {

// Ridge network restricted to a ball:
//
//   G(x) = sigma(gamma * (R - |x|)) * theta(x),
//   theta(x) = sum_i c_i * psi(a_i' x - b_i).
//
// gamma = +inf turns the sigmoid cutoff into the hard indicator [|x| <= R].
// Instances are immutable in use; optimizer steps construct updated copies
// through the flat parameter vector.
struct RidgeModel {
  int n = 0;                    // input dimension
  int M = 0;                    // number of ridge units
  Eigen::MatrixXd a;            // M x n, row i = direction of unit i
  Eigen::VectorXd b;            // offsets, length M
  Eigen::VectorXd c;            // output coefficients, length M
  const Activation* act = &tanh_activation();
  double gamma = std::numeric_limits<double>::infinity();
  double R = 1.0;

  bool hard_cutoff() const { return std::isinf(gamma); }

  // sigma(gamma * (R - |x|)); indicator of the closed ball for gamma = inf.
  double cutoff(double r) const;

  // gamma * (1 - sigma(gamma*(R-r))) / r, the radial factor of the
  // effective gradient field. Defined as 0 at r = 0 and for gamma = inf.
  double radial_coeff(double r) const;

  double eval(const Eigen::VectorXd& x) const;

  // Full analytic gradient of G: -gamma*(x/|x|)*sigma*(1-sigma)*theta + sigma*grad_theta.
  Eigen::VectorXd grad_x(const Eigen::VectorXd& x) const;

  // Effective gradient field h(x) = -gamma*(1-sigma)*(x/|x|)*theta + grad_theta,
  // i.e. grad G with the common sigma factor stripped; this is what the
  // penalty and the moment matrix integrate against the sigma^2 measure.
  // For gamma = inf it is plain grad_theta.
  Eigen::VectorXd effective_grad(const Eigen::VectorXd& x) const;

  // Rows are effective_grad at each row of pts.
  Eigen::MatrixXd effective_grads(const Eigen::MatrixXd& pts) const;

  // Flat parameter layout: [a_1 (n), ..., a_M (n), b (M), c (M)].
  Eigen::VectorXd params() const;
  void set_params(const Eigen::VectorXd& p);
  int param_count() const { return M * n + 2 * M; }
};

// Model of the configured shape with all parameters zero; evaluates to 0
// everywhere and has a zero gradient field (the G_0 of the outer loop).
RidgeModel zero_model(int n, int M, double gamma, double R, const Activation& act);

// Seeded random initialization: a entries N(0, 1/n), b uniform(-R, R),
// c N(0, 1/sqrt(M)).
RidgeModel random_model(int n, int M, double gamma, double R, const Activation& act,
                        std::uint64_t seed);

// Flat text format: header "ridgemodel n M gamma R activation", then one
// line per unit "a_1 ... a_n b c". Values round-trip through 17 significant
// digits; gamma = inf is written as "inf".
void save_model(const RidgeModel& m, std::ostream& out);
RidgeModel load_model(std::istream& in);
void save_model_file(const RidgeModel& m, const std::string& path);
RidgeModel load_model_file(const std::string& path);

}  // namespace sdr
