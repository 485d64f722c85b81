#include "sdr/model.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sdr/rng.hpp"

namespace sdr {

namespace {

void require_dim(const RidgeModel& m, const Eigen::VectorXd& x) {
  if (x.size() != m.n) {
    throw std::invalid_argument("point dimension " + std::to_string(x.size()) +
                                " does not match model dimension " + std::to_string(m.n));
  }
}

}  // namespace

double RidgeModel::cutoff(double r) const {
  if (hard_cutoff()) return r <= R ? 1.0 : 0.0;
  return stable_sigmoid(gamma * (R - r));
}

double RidgeModel::radial_coeff(double r) const {
  if (hard_cutoff() || r == 0.0) return 0.0;
  return gamma * (1.0 - stable_sigmoid(gamma * (R - r))) / r;
}

double RidgeModel::eval(const Eigen::VectorXd& x) const {
  require_dim(*this, x);
  const double s = cutoff(x.norm());
  if (s == 0.0) return 0.0;
  double theta = 0.0;
  for (int i = 0; i < M; ++i) {
    theta += c(i) * act->value(a.row(i).dot(x) - b(i));
  }
  return s * theta;
}

Eigen::VectorXd RidgeModel::grad_x(const Eigen::VectorXd& x) const {
  require_dim(*this, x);
  const double r = x.norm();
  const double s = cutoff(r);
  if (s == 0.0) return Eigen::VectorXd::Zero(n);

  double theta = 0.0;
  Eigen::VectorXd grad_theta = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < M; ++i) {
    double psi, dpsi, ddpsi;
    act->triple(a.row(i).dot(x) - b(i), psi, dpsi, ddpsi);
    theta += c(i) * psi;
    grad_theta += c(i) * dpsi * a.row(i).transpose();
  }
  if (hard_cutoff()) return grad_theta;  // interior formula; |x| = R has measure zero

  Eigen::VectorXd g = s * grad_theta;
  if (r > 0.0) {
    g -= (gamma * s * (1.0 - s) * theta / r) * x;
  }
  return g;
}

Eigen::VectorXd RidgeModel::effective_grad(const Eigen::VectorXd& x) const {
  require_dim(*this, x);
  double theta = 0.0;
  Eigen::VectorXd grad_theta = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < M; ++i) {
    double psi, dpsi, ddpsi;
    act->triple(a.row(i).dot(x) - b(i), psi, dpsi, ddpsi);
    theta += c(i) * psi;
    grad_theta += c(i) * dpsi * a.row(i).transpose();
  }
  const double rc = radial_coeff(x.norm());
  if (rc == 0.0) return grad_theta;
  return grad_theta - (rc * theta) * x;
}

Eigen::MatrixXd RidgeModel::effective_grads(const Eigen::MatrixXd& pts) const {
  if (pts.cols() != n) {
    throw std::invalid_argument("batch dimension does not match model dimension");
  }
  Eigen::MatrixXd out(pts.rows(), n);
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    out.row(i) = effective_grad(pts.row(i).transpose()).transpose();
  }
  return out;
}

Eigen::VectorXd RidgeModel::params() const {
  Eigen::VectorXd p(param_count());
  for (int i = 0; i < M; ++i) p.segment(i * n, n) = a.row(i).transpose();
  p.segment(M * n, M) = b;
  p.segment(M * n + M, M) = c;
  return p;
}

void RidgeModel::set_params(const Eigen::VectorXd& p) {
  if (p.size() != param_count()) {
    throw std::invalid_argument("parameter vector has wrong length");
  }
  for (int i = 0; i < M; ++i) a.row(i) = p.segment(i * n, n).transpose();
  b = p.segment(M * n, M);
  c = p.segment(M * n + M, M);
}

RidgeModel zero_model(int n, int M, double gamma, double R, const Activation& act) {
  RidgeModel m;
  m.n = n;
  m.M = M;
  m.a = Eigen::MatrixXd::Zero(M, n);
  m.b = Eigen::VectorXd::Zero(M);
  m.c = Eigen::VectorXd::Zero(M);
  m.act = &act;
  m.gamma = gamma;
  m.R = R;
  return m;
}

RidgeModel random_model(int n, int M, double gamma, double R, const Activation& act,
                        std::uint64_t seed) {
  RidgeModel m = zero_model(n, M, gamma, R, act);
  Rng rng(seed);
  const double a_scale = 1.0 / std::sqrt(static_cast<double>(n));
  const double c_scale = 1.0 / std::sqrt(static_cast<double>(M));
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < n; ++j) m.a(i, j) = a_scale * rng.normal();
  }
  for (int i = 0; i < M; ++i) m.b(i) = R * (2.0 * rng.uniform01() - 1.0);
  for (int i = 0; i < M; ++i) m.c(i) = c_scale * rng.normal();
  return m;
}

void save_model(const RidgeModel& m, std::ostream& out) {
  out << "ridgemodel " << m.n << ' ' << m.M << ' ';
  out << std::setprecision(17);
  if (m.hard_cutoff()) {
    out << "inf";
  } else {
    out << m.gamma;
  }
  out << ' ' << m.R << ' ' << m.act->name << '\n';
  for (int i = 0; i < m.M; ++i) {
    for (int j = 0; j < m.n; ++j) out << m.a(i, j) << ' ';
    out << m.b(i) << ' ' << m.c(i) << '\n';
  }
}

RidgeModel load_model(std::istream& in) {
  std::string tag;
  in >> tag;
  if (tag != "ridgemodel") {
    throw std::runtime_error("not a ridgemodel file");
  }
  int n = 0, M = 0;
  std::string gamma_str, act_name;
  double R = 0.0;
  in >> n >> M >> gamma_str >> R >> act_name;
  if (!in || n < 1 || M < 1 || R <= 0.0) {
    throw std::runtime_error("malformed ridgemodel header");
  }
  double gamma;
  if (gamma_str == "inf") {
    gamma = std::numeric_limits<double>::infinity();
  } else {
    gamma = std::stod(gamma_str);
    if (gamma <= 0.0) throw std::runtime_error("gamma must be positive or inf");
  }
  RidgeModel m = zero_model(n, M, gamma, R, activation_by_name(act_name));
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < n; ++j) in >> m.a(i, j);
    in >> m.b(i) >> m.c(i);
  }
  if (!in) throw std::runtime_error("truncated ridgemodel file");
  return m;
}

void save_model_file(const RidgeModel& m, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  save_model(m, f);
}

RidgeModel load_model_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return load_model(f);
}

}  // namespace sdr
