#pragma once

#include <cstddef>
#include <string>

namespace sdr {

// Ridge-unit nonlinearity psi together with its first two derivatives.
// The value and both derivatives come out of one transcendental evaluation,
// which matters in the training loop. Bounded first derivative is assumed
// by the model class; sup_abs bounds |psi| itself.
//
// triple_batch is the vectorized form used on whole response matrices;
// ddpsi may be null when the second derivative is not needed.
struct Activation {
  const char* name;
  void (*triple)(double u, double& psi, double& dpsi, double& ddpsi);
  void (*triple_batch)(const double* u, double* psi, double* dpsi, double* ddpsi,
                       std::ptrdiff_t count);
  double (*value)(double u);
  double sup_abs;
};

// Lookup by name ("tanh", "sigmoid"); throws std::invalid_argument on
// unknown names. The returned reference has static storage duration.
const Activation& activation_by_name(const std::string& name);

const Activation& tanh_activation();
const Activation& sigmoid_activation();

// Numerically stable logistic sigmoid; also used for the radial cutoff.
double stable_sigmoid(double t);

}  // namespace sdr
