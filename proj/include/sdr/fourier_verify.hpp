#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace sdr {

// Uniform grid on [-extent, extent)^dim with points-per-axis a power of two,
// complex values in row-major order. The Fourier image of such a grid is
// again a grid of this shape: spacing pi/extent, extent points*pi/(2*extent).
struct GridFunction {
  int dim = 1;        // 1 or 2
  int points = 0;     // per axis
  double extent = 0;  // X in [-X, X)
  std::vector<std::complex<double>> values;

  double spacing() const { return 2.0 * extent / points; }
  double coord(int idx) const { return -extent + idx * spacing(); }
  std::size_t size() const { return values.size(); }
  std::complex<double>& at(int i) { return values[i]; }
  std::complex<double>& at(int i, int j) {
    return values[static_cast<std::size_t>(i) * points + j];
  }
  const std::complex<double>& at(int i) const { return values[i]; }
  const std::complex<double>& at(int i, int j) const {
    return values[static_cast<std::size_t>(i) * points + j];
  }

  // l2 norm with spacing weights, i.e. sqrt(h^dim * sum |v|^2).
  double norm() const;
  // Largest |value| on the boundary nodes of the grid.
  double boundary_max() const;
};

GridFunction make_grid_1d(int points, double extent,
                          const std::function<std::complex<double>(double)>& f);
GridFunction make_grid_2d(int points, double extent,
                          const std::function<std::complex<double>(double, double)>& f);

// Discrete approximation of the unitary-convention continuous Fourier
// transform, F[f](xi) = (2pi)^{-n/2} \int f(x) e^{-i xi.x} dx, via an FFT
// with the spacing and phase factors of the grid. Requires power-of-two
// grids; warns on stderr when the input carries boundary mass above 1e-10.
GridFunction grid_fourier(const GridFunction& g);
GridFunction grid_fourier_inverse(const GridFunction& g);

// Weierstrass transform W[g](x) = \int exp(-|x-y|^2/2) g(y) dy by direct
// trapezoid quadrature on the grid (applied per axis in 2-D).
GridFunction weierstrass_transform(const GridFunction& g);

struct IdentityCheck {
  double residual = 0.0;
  bool resolved = true;  // false when input or spectrum carries boundary mass
};

// Relative grid residual of F[sqrt(p) l] = (2pi)^{-n/2} gamma * F[l] with
// p = exp(-|x|^2) and gamma the Gaussian kernel, testing the displayed
// convolution identity exactly as stated.
IdentityCheck convolution_identity_check(const GridFunction& l);

struct SupportFractionOptions {
  int points = 512;
  double extent = 12.0;
  double window_sigma = 3.0;
};

// Builds l(x) = g1d(w.x) * gaussian window on a 2-D grid and returns the
// fraction of spectral energy within distance eps of span(w).
double spectral_support_fraction(const std::function<double(double)>& g1d, double wx, double wy,
                                 double eps, const SupportFractionOptions& opts = {});

// Same band fraction for an arbitrary 2-D grid function; used directly for
// negative controls that are not ridge-shaped.
double spectral_energy_fraction(const GridFunction& l2d, double wx, double wy, double eps);

// Node coordinates plus real/imag parts, one node per row.
void grid_to_csv(const GridFunction& g, std::ostream& out);
void grid_to_csv_file(const GridFunction& g, const std::string& path);

}  // namespace sdr
