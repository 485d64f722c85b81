#include "sdr/fourier_verify.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <ostream>
#include <stdexcept>

namespace sdr {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

bool power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

void require_grid(const GridFunction& g) {
  if (g.dim != 1 && g.dim != 2) throw std::invalid_argument("grid dim must be 1 or 2");
  if (!power_of_two(g.points)) throw std::invalid_argument("grid points must be a power of two");
  if (!(g.extent > 0.0)) throw std::invalid_argument("grid extent must be positive");
  const std::size_t expect = g.dim == 1 ? g.points : static_cast<std::size_t>(g.points) * g.points;
  if (g.values.size() != expect) throw std::invalid_argument("grid value count mismatch");
}

void warn_boundary(const GridFunction& g, const char* who) {
  const double b = g.boundary_max();
  if (b > 1e-10) {
    std::cerr << who << ": input carries boundary mass " << b
              << " (> 1e-10); the transform may be unresolved\n";
  }
}

// DFT with FFTW, sign -1 (forward) or +1 (backward), unnormalized.
std::vector<std::complex<double>> raw_dft(const GridFunction& g, int sign) {
  std::vector<std::complex<double>> out(g.values.size());
  // FFTW's complex layout matches std::complex<double>.
  auto* in_ptr = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(g.values.data()));
  auto* out_ptr = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan =
      g.dim == 1
          ? fftw_plan_dft_1d(g.points, in_ptr, out_ptr, sign, FFTW_ESTIMATE | FFTW_PRESERVE_INPUT)
          : fftw_plan_dft_2d(g.points, g.points, in_ptr, out_ptr, sign,
                             FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  return out;
}

}  // namespace

double GridFunction::norm() const {
  double s = 0.0;
  for (const auto& v : values) s += std::norm(v);
  const double h = spacing();
  return std::sqrt(s * (dim == 1 ? h : h * h));
}

double GridFunction::boundary_max() const {
  double b = 0.0;
  if (dim == 1) {
    b = std::max(std::abs(values.front()), std::abs(values.back()));
  } else {
    for (int i = 0; i < points; ++i) {
      b = std::max({b, std::abs(at(0, i)), std::abs(at(points - 1, i)), std::abs(at(i, 0)),
                    std::abs(at(i, points - 1))});
    }
  }
  return b;
}

GridFunction make_grid_1d(int points, double extent,
                          const std::function<std::complex<double>(double)>& f) {
  GridFunction g;
  g.dim = 1;
  g.points = points;
  g.extent = extent;
  g.values.resize(points);
  for (int i = 0; i < points; ++i) g.values[i] = f(g.coord(i));
  require_grid(g);
  return g;
}

GridFunction make_grid_2d(int points, double extent,
                          const std::function<std::complex<double>(double, double)>& f) {
  GridFunction g;
  g.dim = 2;
  g.points = points;
  g.extent = extent;
  g.values.resize(static_cast<std::size_t>(points) * points);
  for (int i = 0; i < points; ++i) {
    for (int j = 0; j < points; ++j) g.at(i, j) = f(g.coord(i), g.coord(j));
  }
  require_grid(g);
  return g;
}

namespace {
GridFunction grid_fourier_impl(const GridFunction& g);
}

// Forward: F(xi_m) = (2pi)^{-n/2} h^n e^{i xi_m . X 1} DFT[f], with the output
// reordered so frequencies ascend; the image grid has extent N pi / (2 X).
GridFunction grid_fourier(const GridFunction& g) {
  require_grid(g);
  warn_boundary(g, "grid_fourier");
  return grid_fourier_impl(g);
}

namespace {

GridFunction grid_fourier_impl(const GridFunction& g) {
  const int N = g.points;
  const double h = g.spacing();
  const double dxi = kPi / g.extent;

  GridFunction out;
  out.dim = g.dim;
  out.points = N;
  out.extent = 0.5 * N * dxi;
  out.values.resize(g.values.size());

  const auto dft = raw_dft(g, FFTW_FORWARD);
  const double amp = std::pow(1.0 / std::sqrt(2.0 * kPi) * h, g.dim);

  // phase e^{i xi X} per axis index m (centered): xi_m = (m - N/2) dxi
  std::vector<std::complex<double>> phase(N);
  for (int m = 0; m < N; ++m) {
    const double xi = (m - N / 2) * dxi;
    phase[m] = std::polar(1.0, xi * g.extent);
  }

  if (g.dim == 1) {
    for (int m = 0; m < N; ++m) {
      const int k = (m - N / 2 + N) % N;  // DFT bin of this centered frequency
      out.values[m] = amp * phase[m] * dft[k];
    }
  } else {
    for (int m1 = 0; m1 < N; ++m1) {
      const int k1 = (m1 - N / 2 + N) % N;
      for (int m2 = 0; m2 < N; ++m2) {
        const int k2 = (m2 - N / 2 + N) % N;
        out.at(m1, m2) = amp * phase[m1] * phase[m2] * dft[static_cast<std::size_t>(k1) * N + k2];
      }
    }
  }
  return out;
}

}  // namespace

GridFunction grid_fourier_inverse(const GridFunction& g) {
  require_grid(g);
  warn_boundary(g, "grid_fourier_inverse");

  const int N = g.points;
  const double dxi = g.spacing();

  GridFunction out;
  out.dim = g.dim;
  out.points = N;
  out.extent = 0.5 * N * (kPi / g.extent);  // back to the primal extent
  out.values.resize(g.values.size());

  // Strip the forward phases, then an unnormalized inverse DFT.
  GridFunction tmp = g;
  std::vector<std::complex<double>> phase(N);
  for (int m = 0; m < N; ++m) {
    const double xi = (m - N / 2) * dxi;
    phase[m] = std::polar(1.0, -xi * out.extent);
  }
  if (g.dim == 1) {
    for (int m = 0; m < N; ++m) tmp.values[m] = g.values[m] * phase[m];
  } else {
    for (int m1 = 0; m1 < N; ++m1) {
      for (int m2 = 0; m2 < N; ++m2) tmp.at(m1, m2) = g.at(m1, m2) * phase[m1] * phase[m2];
    }
  }

  // Reorder centered bins into DFT layout.
  GridFunction shifted = tmp;
  if (g.dim == 1) {
    for (int m = 0; m < N; ++m) shifted.values[(m - N / 2 + N) % N] = tmp.values[m];
  } else {
    for (int m1 = 0; m1 < N; ++m1) {
      for (int m2 = 0; m2 < N; ++m2) {
        shifted.at((m1 - N / 2 + N) % N, (m2 - N / 2 + N) % N) = tmp.at(m1, m2);
      }
    }
  }

  const auto dft = raw_dft(shifted, FFTW_BACKWARD);
  const double amp = std::pow(1.0 / std::sqrt(2.0 * kPi) * dxi, g.dim);
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = amp * dft[i];
  return out;
}

GridFunction weierstrass_transform(const GridFunction& g) {
  require_grid(g);
  const int N = g.points;
  const double h = g.spacing();

  // Kernel-times-trapezoid-weight matrix over one axis.
  Eigen::MatrixXd K(N, N);
  for (int i = 0; i < N; ++i) {
    const double xi = g.coord(i);
    for (int j = 0; j < N; ++j) {
      const double d = xi - g.coord(j);
      double w = h;
      if (j == 0 || j == N - 1) w *= 0.5;
      K(i, j) = std::exp(-0.5 * d * d) * w;
    }
  }

  GridFunction out = g;
  using CMat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  if (g.dim == 1) {
    Eigen::Map<const Eigen::VectorXcd> v(g.values.data(), N);
    Eigen::Map<Eigen::VectorXcd> o(out.values.data(), N);
    o = K * v;
  } else {
    Eigen::Map<const CMat> V(g.values.data(), N, N);
    Eigen::Map<CMat> O(out.values.data(), N, N);
    O = K * V;            // convolve along the first axis
    O = (O * K.transpose()).eval();  // then along the second
  }
  return out;
}

IdentityCheck convolution_identity_check(const GridFunction& l) {
  require_grid(l);

  GridFunction weighted = l;
  if (l.dim == 1) {
    for (int i = 0; i < l.points; ++i) {
      const double x = l.coord(i);
      weighted.values[i] *= std::exp(-0.5 * x * x);
    }
  } else {
    for (int i = 0; i < l.points; ++i) {
      for (int j = 0; j < l.points; ++j) {
        const double x = l.coord(i), y = l.coord(j);
        weighted.at(i, j) *= std::exp(-0.5 * (x * x + y * y));
      }
    }
  }

  const GridFunction lhs = grid_fourier(weighted);
  const GridFunction spectrum = grid_fourier(l);
  GridFunction rhs = weierstrass_transform(spectrum);
  const double scale = std::pow(1.0 / std::sqrt(2.0 * kPi), l.dim);
  for (auto& v : rhs.values) v *= scale;

  IdentityCheck res;
  double num = 0.0;
  for (std::size_t i = 0; i < lhs.values.size(); ++i) num += std::norm(lhs.values[i] - rhs.values[i]);
  const double h = lhs.spacing();
  num = std::sqrt(num * (l.dim == 1 ? h : h * h));
  const double den = lhs.norm();
  res.residual = den > 0.0 ? num / den : 0.0;
  const double lmax = [&] {
    double m = 0.0;
    for (const auto& v : l.values) m = std::max(m, std::abs(v));
    return m;
  }();
  res.resolved = l.boundary_max() <= 1e-10 * (1.0 + lmax) &&
                 spectrum.boundary_max() <= 1e-10 * (1.0 + lmax);
  return res;
}

double spectral_energy_fraction(const GridFunction& l2d, double wx, double wy, double eps) {
  if (l2d.dim != 2) throw std::invalid_argument("spectral_energy_fraction needs a 2-D grid");
  require_grid(l2d);
  const double wn = std::sqrt(wx * wx + wy * wy);
  if (!(wn > 0.0)) throw std::invalid_argument("direction vector must be nonzero");
  const double ux = wx / wn, uy = wy / wn;

  // Energy ratios are unchanged by the transform's phase and scale factors,
  // so the boundary-decay precondition of grid_fourier does not apply here.
  const GridFunction F = grid_fourier_impl(l2d);
  double total = 0.0, banded = 0.0;
  for (int i = 0; i < F.points; ++i) {
    const double xi = F.coord(i);
    for (int j = 0; j < F.points; ++j) {
      const double eta = F.coord(j);
      const double e = std::norm(F.at(i, j));
      total += e;
      const double along = xi * ux + eta * uy;
      const double dx = xi - along * ux, dy = eta - along * uy;
      if (dx * dx + dy * dy <= eps * eps) banded += e;
    }
  }
  return total > 0.0 ? banded / total : 0.0;
}

double spectral_support_fraction(const std::function<double(double)>& g1d, double wx, double wy,
                                 double eps, const SupportFractionOptions& opts) {
  const double wn = std::sqrt(wx * wx + wy * wy);
  if (!(wn > 0.0)) throw std::invalid_argument("direction vector must be nonzero");
  const double ux = wx / wn, uy = wy / wn;

  const double s2 = 2.0 * opts.window_sigma * opts.window_sigma;
  GridFunction l = make_grid_2d(opts.points, opts.extent, [&](double x, double y) {
    const double s = ux * x + uy * y;
    return std::complex<double>(g1d(s) * std::exp(-(x * x + y * y) / s2), 0.0);
  });
  return spectral_energy_fraction(l, wx, wy, eps);
}

void grid_to_csv(const GridFunction& g, std::ostream& out) {
  out << std::setprecision(17);
  if (g.dim == 1) {
    out << "x,re,im\n";
    for (int i = 0; i < g.points; ++i) {
      out << g.coord(i) << ',' << g.values[i].real() << ',' << g.values[i].imag() << '\n';
    }
  } else {
    out << "x,y,re,im\n";
    for (int i = 0; i < g.points; ++i) {
      for (int j = 0; j < g.points; ++j) {
        out << g.coord(i) << ',' << g.coord(j) << ',' << g.at(i, j).real() << ','
            << g.at(i, j).imag() << '\n';
      }
    }
  }
}

void grid_to_csv_file(const GridFunction& g, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  grid_to_csv(g, f);
}

}  // namespace sdr
