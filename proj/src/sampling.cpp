#include "sdr/sampling.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "sdr/activation.hpp"
#include "sdr/rng.hpp"

namespace sdr {

namespace {

void require_counts(int n, int count) {
  if (n < 1) throw std::invalid_argument("dimension must be >= 1");
  if (count < 1) throw std::invalid_argument("sample count must be >= 1");
}

// Uniform direction on the unit sphere: normalized Gaussian vector.
Eigen::VectorXd unit_direction(int n, Rng& rng) {
  Eigen::VectorXd v(n);
  double norm2;
  do {
    for (int j = 0; j < n; ++j) v(j) = rng.normal();
    norm2 = v.squaredNorm();
  } while (norm2 == 0.0);
  return v / std::sqrt(norm2);
}

// Series expansion of P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) = 1 - P(a, x) via modified Lentz, x >= a + 1.
double gamma_q_contfrac(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_p(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_p: bad arguments");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_contfrac(a, x);
}

SampleBatch sample_gaussian(int n, int K, std::uint64_t seed) {
  require_counts(n, K);
  SampleBatch batch;
  batch.density = Density::gaussian;
  batch.seed = seed;
  batch.points.resize(K, n);
  Rng rng(seed);
  const double scale = std::sqrt(0.5);  // coordinate variance 1/2
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j < n; ++j) batch.points(i, j) = scale * rng.normal();
  }
  return batch;
}

SampleBatch sample_cutoff(int n, int L, double gamma, double R, std::uint64_t seed) {
  require_counts(n, L);
  if (R <= 0.0) throw std::invalid_argument("cutoff radius must be positive");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive or inf");

  SampleBatch batch;
  batch.density = Density::cutoff;
  batch.seed = seed;
  batch.points.resize(L, n);
  Rng rng(seed);

  const bool hard = std::isinf(gamma);
  const double envelope_R = hard ? R : R + 20.0 / gamma;
  const double inv_n = 1.0 / static_cast<double>(n);

  for (int i = 0; i < L; ++i) {
    for (;;) {
      const double r = envelope_R * std::pow(rng.uniform01_open0(), inv_n);
      if (!hard) {
        const double s = stable_sigmoid(gamma * (R - r));
        if (rng.uniform01() >= s * s) continue;
      }
      batch.points.row(i) = (r * unit_direction(n, rng)).transpose();
      break;
    }
  }
  return batch;
}

double quantile_radius(double p, int n) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("tail probability must be in (0,1)");
  if (n < 1) throw std::invalid_argument("dimension must be >= 1");
  const double a = 0.5 * static_cast<double>(n);
  const double target = 1.0 - p;  // P[|x| <= R] = gamma_p(n/2, R^2)

  double lo = 0.0;
  double hi = 1.0;
  while (gamma_p(a, hi * hi) < target) hi *= 2.0;
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    if (gamma_p(a, mid * mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void batch_to_csv(const SampleBatch& batch, std::ostream& out) {
  out << std::setprecision(17);
  for (int i = 0; i < batch.count(); ++i) {
    for (int j = 0; j < batch.dim(); ++j) {
      if (j) out << ',';
      out << batch.points(i, j);
    }
    out << '\n';
  }
}

void batch_to_csv_file(const SampleBatch& batch, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  batch_to_csv(batch, f);
}

}  // namespace sdr
