#pragma once

#include <stdexcept>
#include <string>

namespace sdr {

struct RidgeModel;
struct ObjectiveContext;

struct OptimizerConfig {
  int step_count = 200;
  double learning_rate = 1e-2;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  bool warm_start = true;  // consumed by the outer loop, not by minimize()
};

// Raised when the objective or a gradient block stops being finite; names
// the offending parameter block so the driver can report it.
struct NonFiniteError : std::runtime_error {
  NonFiniteError(const std::string& block, int step)
      : std::runtime_error("non-finite value in parameter block '" + block + "' at inner step " +
                           std::to_string(step)),
        block_name(block),
        inner_step(step) {}
  std::string block_name;
  int inner_step;
};

// Adam-style first-order minimization of the frozen objective. Second
// moments are kept per parameter block (one scalar per direction vector
// a_i, one per offset, one per output coefficient), which makes the update
// equivariant under rotations of the input space. The best iterate seen,
// including the starting point, is returned, so the result never degrades
// the objective.
RidgeModel minimize(const RidgeModel& model0, const ObjectiveContext& ctx,
                    const OptimizerConfig& cfg);

}  // namespace sdr
