#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sdr/model.hpp"
#include "sdr/rng.hpp"

using namespace sdr;

namespace {

Eigen::VectorXd random_point(Rng& rng, int n, double scale) {
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x(i) = scale * rng.normal();
  return x;
}

// Central finite differences of eval along every coordinate.
Eigen::VectorXd fd_grad(const RidgeModel& m, const Eigen::VectorXd& x, double h) {
  Eigen::VectorXd g(m.n);
  for (int i = 0; i < m.n; ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    g(i) = (m.eval(xp) - m.eval(xm)) / (2.0 * h);
  }
  return g;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("zero coefficients give the zero function") {
  RidgeModel m = random_model(3, 5, std::numeric_limits<double>::infinity(), 1.5,
                              tanh_activation(), 11);
  m.c.setZero();
  Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    const Eigen::VectorXd x = random_point(rng, 3, 1.0);
    CHECK(m.eval(x) == 0.0);
    CHECK(m.grad_x(x).norm() == 0.0);
  }
}

TEST_CASE("hard cutoff vanishes outside the ball") {
  RidgeModel m = random_model(4, 6, std::numeric_limits<double>::infinity(), 1.0,
                              tanh_activation(), 3);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(4);
  x(0) = 2.0;  // |x| = 2R
  CHECK(m.eval(x) == 0.0);

  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    Eigen::VectorXd d = random_point(rng, 4, 1.0);
    d *= (1.0 + 2.0 * rng.uniform01()) * m.R / d.norm();  // |x| in (R, 3R)
    CHECK(m.eval(d) == 0.0);
  }
}

TEST_CASE("single tanh unit matches the closed form") {
  RidgeModel m = zero_model(4, 1, std::numeric_limits<double>::infinity(), 1.0,
                            tanh_activation());
  m.a(0, 0) = 1.0;
  m.c(0) = 1.0;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(4);
  x(0) = 0.5;
  CHECK(m.eval(x) == doctest::Approx(0.46211715726000975850).epsilon(1e-12));

  // tanh'(0) = 1, so the gradient at the origin is e1.
  const Eigen::VectorXd g = m.grad_x(Eigen::VectorXd::Zero(4));
  CHECK(g(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g.tail(3).norm() == 0.0);
}

TEST_CASE("analytic gradient matches finite differences") {
  const double inf = std::numeric_limits<double>::infinity();
  for (double gamma : {inf, 4.0}) {
    CAPTURE(gamma);
    RidgeModel m = random_model(4, 7, gamma, 2.0, tanh_activation(), 21);
    Rng rng(33);
    for (int i = 0; i < 100; ++i) {
      Eigen::VectorXd x = random_point(rng, 4, 1.0);
      if (x.norm() >= 0.9 * m.R) x *= 0.5 * m.R / x.norm();  // keep interior
      const Eigen::VectorXd ga = m.grad_x(x);
      const Eigen::VectorXd gf = fd_grad(m, x, 1e-5);
      const double rel = (ga - gf).norm() / std::max(gf.norm(), 1e-12);
      CHECK(rel < 1e-4);
    }
  }
}

TEST_CASE("bounded by the coefficient mass") {
  for (double gamma : {std::numeric_limits<double>::infinity(), 8.0}) {
    RidgeModel m = random_model(3, 9, gamma, 3.0, tanh_activation(), 2);
    const double bound = m.c.cwiseAbs().sum() * m.act->sup_abs;
    Rng rng(9);
    for (int i = 0; i < 200; ++i) {
      Eigen::VectorXd x = random_point(rng, 3, 1.0);
      if (!m.hard_cutoff()) {
        // inside the region where the cutoff is essentially 1
        const double rmax = m.R - 10.0 / m.gamma;
        if (x.norm() > rmax) x *= 0.9 * rmax / x.norm();
      }
      CHECK(std::abs(m.eval(x)) <= bound + 1e-12);
    }
  }
}

TEST_CASE("full gradient is the cutoff times the effective field") {
  RidgeModel m = random_model(3, 5, 6.0, 1.5, tanh_activation(), 17);
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const Eigen::VectorXd x = random_point(rng, 3, 0.8);
    const double s = m.cutoff(x.norm());
    const Eigen::VectorXd lhs = m.grad_x(x);
    const Eigen::VectorXd rhs = s * m.effective_grad(x);
    CHECK((lhs - rhs).norm() <= 1e-12 * std::max(1.0, rhs.norm()));
  }
}

TEST_CASE("serialization round-trips exactly") {
  for (double gamma : {std::numeric_limits<double>::infinity(), 2.5}) {
    const RidgeModel m = random_model(5, 4, gamma, 1.75, tanh_activation(), 77);
    std::stringstream ss;
    save_model(m, ss);
    const RidgeModel back = load_model(ss);
    CHECK(back.n == m.n);
    CHECK(back.M == m.M);
    CHECK(back.R == m.R);
    CHECK(std::string(back.act->name) == m.act->name);
    if (m.hard_cutoff()) {
      CHECK(back.hard_cutoff());
    } else {
      CHECK(back.gamma == m.gamma);
    }
    CHECK(back.a == m.a);
    CHECK(back.b == m.b);
    CHECK(back.c == m.c);
  }
}

TEST_CASE("dimension mismatch is rejected") {
  const RidgeModel m = random_model(3, 2, std::numeric_limits<double>::infinity(), 1.0,
                                    tanh_activation(), 1);
  CHECK_THROWS_AS(m.eval(Eigen::VectorXd::Zero(4)), std::invalid_argument);
  CHECK_THROWS_AS(m.grad_x(Eigen::VectorXd::Zero(2)), std::invalid_argument);
}

TEST_CASE("sigmoid activation is available and consistent") {
  const Activation& s = activation_by_name("sigmoid");
  double psi, dpsi, ddpsi;
  s.triple(0.3, psi, dpsi, ddpsi);
  CHECK(psi == doctest::Approx(1.0 / (1.0 + std::exp(-0.3))).epsilon(1e-15));
  const double h = 1e-6;
  CHECK(dpsi == doctest::Approx((s.value(0.3 + h) - s.value(0.3 - h)) / (2 * h)).epsilon(1e-8));
  CHECK_THROWS_AS(activation_by_name("relu"), std::invalid_argument);
}

}  // TEST_SUITE
