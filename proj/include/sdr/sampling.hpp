#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace sdr {

enum class Density { gaussian, cutoff };

// Immutable seeded point set. Same (seed, n, count, parameters) always
// reproduces the same bits; batches are sampled once per run and shared.
struct SampleBatch {
  Eigen::MatrixXd points;  // count x n, one point per row
  Density density = Density::gaussian;
  std::uint64_t seed = 0;

  int dim() const { return static_cast<int>(points.cols()); }
  int count() const { return static_cast<int>(points.rows()); }
};

// K iid draws from pi^{-n/2} exp(-|x|^2): each coordinate N(0, 1/2).
SampleBatch sample_gaussian(int n, int K, std::uint64_t seed);

// L iid draws from the density proportional to sigma(gamma*(R-|x|))^2.
// gamma = inf: uniform on the ball of radius R (radial inverse CDF times a
// uniform direction). Finite gamma: rejection sampling against the uniform
// ball of radius R + 20/gamma with acceptance probability sigma^2; the
// envelope is valid since sigma <= 1 and the truncated tail is below
// double precision.
SampleBatch sample_cutoff(int n, int L, double gamma, double R, std::uint64_t seed);

// Radius R with P[|x| > R] = p under pi^{-n/2} exp(-|x|^2). Uses
// |x|^2 = chi^2_n / 2 and bisects the regularized incomplete gamma CDF to
// absolute tolerance 1e-8.
double quantile_radius(double p, int n);

// Regularized lower incomplete gamma P(a, x); exposed for the sampler tests.
double gamma_p(double a, double x);

// One point per row, bare decimal text.
void batch_to_csv(const SampleBatch& batch, std::ostream& out);
void batch_to_csv_file(const SampleBatch& batch, const std::string& path);

}  // namespace sdr
