#include <doctest.h>

#include <cmath>

#include "sdr/model.hpp"
#include "sdr/objective.hpp"
#include "sdr/optimizer.hpp"
#include "sdr/sampling.hpp"

using namespace sdr;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ObjectiveContext fit_only_context(const TargetFunction& target, int n, double gamma, double R,
                                  int K, int L, std::uint64_t seed, double lambda = 0.0) {
  const auto gauss = sample_gaussian(n, K, seed);
  const auto cutoff = sample_cutoff(n, L, gamma, R, seed + 1);
  const RidgeModel prev = zero_model(n, 1, gamma, R, tanh_activation());
  return make_objective_context(target, gauss, cutoff, lambda, prev,
                                Eigen::MatrixXd::Zero(n, n));
}

}  // namespace

TEST_SUITE("optimizer") {

TEST_CASE("near-identifiable single unit converges to the target") {
  const int n = 2;
  const double R = 2.0;
  const TargetFunction target = [R](const Eigen::VectorXd& x) {
    return x.norm() <= R ? std::tanh(x(0)) : 0.0;
  };
  const ObjectiveContext ctx = fit_only_context(target, n, kInf, R, 300, 50, 41);

  RidgeModel m0 = zero_model(n, 1, kInf, R, tanh_activation());
  m0.a(0, 0) = 1.07;
  m0.a(0, 1) = -0.05;
  m0.b(0) = 0.04;
  m0.c(0) = 0.92;

  OptimizerConfig cfg;
  cfg.step_count = 3000;
  cfg.learning_rate = 5e-3;
  const RidgeModel fit = minimize(m0, ctx, cfg);
  CHECK(eval_objective(fit, ctx, false).phi1 < 1e-4);
}

TEST_CASE("stationary start returns unchanged") {
  const int n = 3;
  const TargetFunction zero = [](const Eigen::VectorXd&) { return 0.0; };
  const ObjectiveContext ctx = fit_only_context(zero, n, kInf, 1.0, 40, 30, 7);
  const RidgeModel m0 = zero_model(n, 4, kInf, 1.0, tanh_activation());
  OptimizerConfig cfg;
  cfg.step_count = 50;
  const RidgeModel out = minimize(m0, ctx, cfg);
  CHECK(out.params() == m0.params());
}

TEST_CASE("identical configuration gives identical bits") {
  const int n = 3;
  const RidgeModel truth = random_model(n, 3, kInf, 1.0, tanh_activation(), 9);
  const TargetFunction target = [truth](const Eigen::VectorXd& x) { return truth.eval(x); };
  const ObjectiveContext ctx = fit_only_context(target, n, kInf, 1.0, 60, 40, 13, 0.2);
  const RidgeModel m0 = random_model(n, 5, kInf, 1.0, tanh_activation(), 15);
  OptimizerConfig cfg;
  cfg.step_count = 120;
  const RidgeModel r1 = minimize(m0, ctx, cfg);
  const RidgeModel r2 = minimize(m0, ctx, cfg);
  CHECK(r1.params() == r2.params());
}

TEST_CASE("never returns something worse than the start") {
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3;
    const double gamma = trial % 2 ? kInf : 5.0;
    const RidgeModel truth = random_model(n, 4, gamma, 1.2, tanh_activation(), 100 + trial);
    const TargetFunction target = [truth](const Eigen::VectorXd& x) { return truth.eval(x); };
    const ObjectiveContext ctx =
        fit_only_context(target, n, gamma, 1.2, 50, 60, 200 + trial, 0.3);
    const RidgeModel m0 = random_model(n, 6, gamma, 1.2, tanh_activation(), 300 + trial);
    OptimizerConfig cfg;
    cfg.step_count = 40;
    cfg.learning_rate = 0.05;  // deliberately aggressive
    const RidgeModel out = minimize(m0, ctx, cfg);
    CHECK(objective_total(out, ctx) <= objective_total(m0, ctx) + 1e-12);
  }
}

TEST_CASE("non-finite objective aborts with a diagnostic") {
  const int n = 2;
  const TargetFunction huge = [](const Eigen::VectorXd&) { return 1e160; };
  const ObjectiveContext ctx = fit_only_context(huge, n, kInf, 1.0, 20, 20, 3);
  RidgeModel m0 = zero_model(n, 2, kInf, 1.0, tanh_activation());
  OptimizerConfig cfg;
  cfg.step_count = 5;
  CHECK_THROWS_AS(minimize(m0, ctx, cfg), NonFiniteError);
  try {
    minimize(m0, ctx, cfg);
  } catch (const NonFiniteError& e) {
    CHECK(e.block_name == "objective");
    CHECK(e.inner_step == 0);
  }
}

TEST_CASE("configuration is validated") {
  const ObjectiveContext ctx =
      fit_only_context([](const Eigen::VectorXd&) { return 0.0; }, 2, kInf, 1.0, 10, 10, 1);
  const RidgeModel m0 = zero_model(2, 2, kInf, 1.0, tanh_activation());
  OptimizerConfig bad;
  bad.step_count = 0;
  CHECK_THROWS_AS(minimize(m0, ctx, bad), std::invalid_argument);
  bad = OptimizerConfig{};
  bad.learning_rate = 0.0;
  CHECK_THROWS_AS(minimize(m0, ctx, bad), std::invalid_argument);
  bad = OptimizerConfig{};
  bad.beta2 = 1.0;
  CHECK_THROWS_AS(minimize(m0, ctx, bad), std::invalid_argument);
}

}  // TEST_SUITE
