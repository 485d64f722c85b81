#include <doctest.h>

#include <cmath>
#include <complex>
#include <sstream>

#include "sdr/fourier_verify.hpp"

using namespace sdr;

namespace {

constexpr double kPi = 3.14159265358979323846;

GridFunction gaussian_1d(int N = 512, double X = 12.0) {
  return make_grid_1d(N, X, [](double x) {
    return std::complex<double>(std::exp(-0.5 * x * x), 0.0);
  });
}

GridFunction modulated_1d(int N = 512, double X = 12.0) {
  return make_grid_1d(N, X, [](double x) {
    return std::complex<double>(std::exp(-0.5 * x * x) * std::cos(3.0 * x), 0.0);
  });
}

double sup_diff(const GridFunction& a, const GridFunction& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    s = std::max(s, std::abs(a.values[i] - b.values[i]));
  }
  return s;
}

}  // namespace

TEST_SUITE("fourier") {

TEST_CASE("the standard gaussian is its own transform") {
  const GridFunction g = gaussian_1d();
  const GridFunction F = grid_fourier(g);
  // sup over the central half of the frequency grid
  double sup = 0.0;
  for (int i = F.points / 4; i < 3 * F.points / 4; ++i) {
    const double xi = F.coord(i);
    sup = std::max(sup, std::abs(F.values[i] - std::exp(-0.5 * xi * xi)));
  }
  CHECK(sup < 1e-8);
}

TEST_CASE("round trip returns the input") {
  const GridFunction g = modulated_1d();
  const GridFunction back = grid_fourier_inverse(grid_fourier(g));
  CHECK(back.points == g.points);
  CHECK(back.extent == doctest::Approx(g.extent).epsilon(1e-14));
  CHECK(sup_diff(back, g) < 1e-10);
}

TEST_CASE("2-D round trip") {
  const GridFunction g = make_grid_2d(64, 8.0, [](double x, double y) {
    return std::complex<double>(std::exp(-0.5 * (x * x + y * y)) * std::cos(x - 0.3 * y), 0.0);
  });
  const GridFunction back = grid_fourier_inverse(grid_fourier(g));
  CHECK(sup_diff(back, g) < 1e-10);

  // 2-D gaussian self-transform on the central block
  const GridFunction g2 = make_grid_2d(128, 10.0, [](double x, double y) {
    return std::complex<double>(std::exp(-0.5 * (x * x + y * y)), 0.0);
  });
  const GridFunction F2 = grid_fourier(g2);
  double sup = 0.0;
  for (int i = F2.points / 4; i < 3 * F2.points / 4; ++i) {
    for (int j = F2.points / 4; j < 3 * F2.points / 4; ++j) {
      const double xi = F2.coord(i), eta = F2.coord(j);
      sup = std::max(sup, std::abs(F2.at(i, j) - std::exp(-0.5 * (xi * xi + eta * eta))));
    }
  }
  CHECK(sup < 1e-8);
}

TEST_CASE("shift theorem: phase changes, magnitude does not") {
  const double x0 = 0.7;
  const GridFunction g = gaussian_1d();
  const GridFunction shifted = make_grid_1d(512, 12.0, [x0](double x) {
    return std::complex<double>(std::exp(-0.5 * (x - x0) * (x - x0)), 0.0);
  });
  const GridFunction F = grid_fourier(g);
  const GridFunction Fs = grid_fourier(shifted);
  double mag = 0.0, phase = 0.0;
  for (int i = 0; i < F.points; ++i) {
    mag = std::max(mag, std::abs(std::abs(Fs.values[i]) - std::abs(F.values[i])));
    const double xi = F.coord(i);
    const std::complex<double> expect =
        F.values[i] * std::polar(1.0, -xi * x0);
    phase = std::max(phase, std::abs(Fs.values[i] - expect));
  }
  CHECK(mag < 1e-9);
  CHECK(phase < 1e-8);
}

TEST_CASE("unitarity with spacing weights") {
  const GridFunction g = make_grid_1d(256, 10.0, [](double x) {
    return std::complex<double>(std::exp(-x * x / 3.0) * std::cos(2.0 * x),
                                0.2 * std::exp(-x * x / 2.0));
  });
  const GridFunction F = grid_fourier(g);
  CHECK(std::abs(F.norm() - g.norm()) < 1e-10 * g.norm());
}

TEST_CASE("weierstrass transform golden cases") {
  const GridFunction zero = make_grid_1d(128, 10.0, [](double) {
    return std::complex<double>(0.0, 0.0);
  });
  CHECK(weierstrass_transform(zero).norm() == 0.0);

  const GridFunction g = gaussian_1d();
  const GridFunction W = weierstrass_transform(g);
  double sup = 0.0;
  for (int i = 0; i < W.points; ++i) {
    const double x = W.coord(i);
    sup = std::max(sup, std::abs(W.values[i] - std::sqrt(kPi) * std::exp(-0.25 * x * x)));
  }
  CHECK(sup < 1e-6);
}

TEST_CASE("weierstrass transform is linear") {
  const GridFunction g1 = gaussian_1d(128, 9.0);
  const GridFunction g2 = modulated_1d(128, 9.0);
  const double alpha = 1.7;
  GridFunction combo = g1;
  for (std::size_t i = 0; i < combo.values.size(); ++i) {
    combo.values[i] = alpha * g1.values[i] + g2.values[i];
  }
  const GridFunction lhs = weierstrass_transform(combo);
  const GridFunction w1 = weierstrass_transform(g1);
  const GridFunction w2 = weierstrass_transform(g2);
  double sup = 0.0;
  for (std::size_t i = 0; i < lhs.values.size(); ++i) {
    sup = std::max(sup, std::abs(lhs.values[i] - (alpha * w1.values[i] + w2.values[i])));
  }
  CHECK(sup < 1e-12);
}

TEST_CASE("convolution identity holds on resolved inputs") {
  const auto gauss = convolution_identity_check(gaussian_1d());
  CHECK(gauss.resolved);
  CHECK(gauss.residual < 1e-6);

  const auto zero = convolution_identity_check(make_grid_1d(512, 12.0, [](double) {
    return std::complex<double>(0.0, 0.0);
  }));
  CHECK(zero.residual == 0.0);

  const auto mod = convolution_identity_check(modulated_1d());
  CHECK(mod.resolved);
  CHECK(mod.residual < 1e-6);
}

TEST_CASE("identity residual decreases as the grid refines") {
  const auto gauss_at = [](int N) {
    return convolution_identity_check(gaussian_1d(N, 12.0)).residual;
  };
  const auto mod_at = [](int N) {
    return convolution_identity_check(modulated_1d(N, 12.0)).residual;
  };
  CHECK(gauss_at(64) < gauss_at(32));
  CHECK(gauss_at(128) < gauss_at(64));
  CHECK(mod_at(64) < mod_at(32));
  CHECK(mod_at(128) < mod_at(64));
  // the zero input stays identically zero at every resolution
  for (int N : {32, 64, 128}) {
    const auto z = convolution_identity_check(make_grid_1d(N, 12.0, [](double) {
      return std::complex<double>(0.0, 0.0);
    }));
    CHECK(z.residual == 0.0);
  }
}

TEST_CASE("boundary mass flips the resolved flag") {
  const GridFunction wide = make_grid_1d(128, 4.0, [](double x) {
    return std::complex<double>(std::exp(-x * x / 200.0), 0.0);
  });
  const auto check = convolution_identity_check(wide);
  CHECK_FALSE(check.resolved);
}

TEST_CASE("windowed ridges concentrate their spectrum on the ridge line") {
  const auto profile = [](double s) { return std::cos(4.0 * s); };
  const double eps = 4.0 * (kPi / 12.0);
  const double f_e1 = spectral_support_fraction(profile, 1.0, 0.0, eps);
  CHECK(f_e1 > 0.95);

  const double c30 = std::cos(kPi / 6.0), s30 = std::sin(kPi / 6.0);
  const double f_rot = spectral_support_fraction(profile, c30, s30, eps);
  CHECK(f_rot > 0.95);

  // isotropic radial bump as the negative control, via the direct FFT path
  const GridFunction iso = make_grid_2d(512, 12.0, [](double x, double y) {
    const double r = std::sqrt(x * x + y * y);
    return std::complex<double>(std::cos(4.0 * r) * std::exp(-r * r / 8.0), 0.0);
  });
  const double f_iso = spectral_energy_fraction(iso, 1.0, 0.0, eps);
  CHECK(f_iso < 0.5);

  // energy fractions ignore profile scaling
  const auto scaled = [](double s) { return 7.3 * std::cos(4.0 * s); };
  CHECK(spectral_support_fraction(scaled, 1.0, 0.0, eps) ==
        doctest::Approx(f_e1).epsilon(1e-12));
}

TEST_CASE("grids are validated") {
  GridFunction bad;
  bad.dim = 1;
  bad.points = 100;  // not a power of two
  bad.extent = 5.0;
  bad.values.assign(100, {0.0, 0.0});
  CHECK_THROWS_AS(grid_fourier(bad), std::invalid_argument);

  CHECK_THROWS_AS(spectral_energy_fraction(gaussian_1d(), 1.0, 0.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("grid CSV export shape") {
  const GridFunction g = make_grid_1d(8, 2.0, [](double x) {
    return std::complex<double>(x, -x);
  });
  std::stringstream ss;
  grid_to_csv(g, ss);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "x,re,im");
  int rows = 0;
  std::string line;
  while (std::getline(ss, line)) ++rows;
  CHECK(rows == 8);
}

}  // TEST_SUITE
