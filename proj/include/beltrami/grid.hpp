#pragma once

// Periodic square window, complex sample fields, and the spectral Wirtinger
// calculus (d_z, d_zbar) that everything else builds on. The window is a
// surrogate for the plane: compactly supported data is expected to live in
// the central half so that periodization tails stay small.

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "beltrami/errors.hpp"

namespace beltrami {

using Complex = std::complex<double>;

class PeriodicGrid;
using GridPtr = std::shared_ptr<const PeriodicGrid>;

// Square lattice with n samples per side (power of two, >= 16) on the window
// [-side/2, side/2)^2. Sample (j, k) sits at z = (-side/2 + j h) + i(-side/2 + k h)
// with h = side / n; values are stored row-major with j slowest.
class PeriodicGrid {
 public:
  static GridPtr make(int n, double side);

  int n() const { return n_; }
  double side() const { return side_; }
  double spacing() const { return side_ / n_; }
  std::size_t cells() const { return std::size_t(n_) * std::size_t(n_); }

  double coord(int j) const { return -0.5 * side_ + spacing() * j; }
  Complex point(int j, int k) const { return {coord(j), coord(k)}; }

  // Signed integer mode for spectrum index idx, in (-n/2, n/2].
  int signed_mode(int idx) const { return idx <= n_ / 2 ? idx : idx - n_; }
  bool nyquist(int idx) const { return idx == n_ / 2; }

  // xi = (2 pi / side) (a_hat + i b_hat) for spectrum index (a, b).
  Complex frequency(int a, int b) const {
    double s = 2.0 * 3.14159265358979323846 / side_;
    return {s * signed_mode(a), s * signed_mode(b)};
  }

  bool operator==(const PeriodicGrid& o) const {
    return n_ == o.n_ && side_ == o.side_;
  }
  bool operator!=(const PeriodicGrid& o) const { return !(*this == o); }

 private:
  PeriodicGrid(int n, double side) : n_(n), side_(side) {}
  int n_;
  double side_;
};

// Complex double-precision samples on a PeriodicGrid. Value semantics; all
// arithmetic checks that operands share one lattice.
class ComplexField {
 public:
  ComplexField() = default;
  ComplexField(GridPtr grid, std::vector<Complex> values);

  static ComplexField zeros(const GridPtr& grid);
  static ComplexField constant(const GridPtr& grid, Complex c);
  static ComplexField sample(const GridPtr& grid,
                             const std::function<Complex(Complex)>& f);

  const GridPtr& grid() const { return grid_; }
  std::size_t size() const { return v_.size(); }
  Complex& at(int j, int k) { return v_[std::size_t(j) * n_ + k]; }
  Complex at(int j, int k) const { return v_[std::size_t(j) * n_ + k]; }
  Complex& operator[](std::size_t i) { return v_[i]; }
  Complex operator[](std::size_t i) const { return v_[i]; }
  const std::vector<Complex>& values() const { return v_; }
  std::vector<Complex>& values() { return v_; }

  ComplexField& operator+=(const ComplexField& o);
  ComplexField& operator-=(const ComplexField& o);
  ComplexField& operator*=(Complex c);
  // Pointwise (Hadamard) product.
  ComplexField& hadamard(const ComplexField& o);

  // L2 norm with the cell-area weight: h * sqrt(sum |f|^2).
  double l2_norm() const;
  double max_abs() const;
  Complex mean() const;
  Complex sum() const;

  bool all_finite() const;

 private:
  GridPtr grid_;
  int n_ = 0;
  std::vector<Complex> v_;
};

ComplexField operator+(ComplexField a, const ComplexField& b);
ComplexField operator-(ComplexField a, const ComplexField& b);
ComplexField operator*(Complex c, ComplexField f);
ComplexField hadamard(ComplexField a, const ComplexField& b);
ComplexField conj_field(ComplexField f);

// Real samples on the same lattice (Jacobians, weights, coverages).
class RealField {
 public:
  RealField() = default;
  RealField(GridPtr grid, std::vector<double> values);

  static RealField zeros(const GridPtr& grid);
  static RealField constant(const GridPtr& grid, double c);
  static RealField sample(const GridPtr& grid,
                          const std::function<double(Complex)>& f);

  const GridPtr& grid() const { return grid_; }
  std::size_t size() const { return v_.size(); }
  double& at(int j, int k) { return v_[std::size_t(j) * n_ + k]; }
  double at(int j, int k) const { return v_[std::size_t(j) * n_ + k]; }
  double& operator[](std::size_t i) { return v_[i]; }
  double operator[](std::size_t i) const { return v_[i]; }
  const std::vector<double>& values() const { return v_; }

 private:
  GridPtr grid_;
  int n_ = 0;
  std::vector<double> v_;
};

void check_compatible(const GridPtr& a, const GridPtr& b);

// Forward DFT of the samples (FFTW sign convention, unnormalized); index
// (a, b) row-major matches PeriodicGrid::frequency(a, b).
std::vector<Complex> fourier_forward(const ComplexField& f);

// Inverse of fourier_forward (normalized by 1/n^2).
ComplexField fourier_inverse(const GridPtr& grid, std::span<const Complex> spectrum);

// Applies a diagonal Fourier multiplier. The callback receives the spectrum
// index pair (a, b); use grid facts (signed_mode, frequency) to build values.
ComplexField apply_multiplier(
    const ComplexField& f,
    const std::function<Complex(int a, int b, const PeriodicGrid&)>& m);

// Spectral Wirtinger derivatives: multipliers (i/2) conj(xi) and (i/2) xi.
// The Nyquist row and column are zeroed (no signed-frequency owner).
ComplexField d_z(const ComplexField& f);
ComplexField d_zbar(const ComplexField& f);

// Mixed derivative d_z^{a1} d_zbar^{a2} in a single transform pass.
ComplexField wirtinger(const ComplexField& f, int dz_order, int dzbar_order);

// Largest |f| sampled outside the centered square of side side/2, relative
// to max |f|; zero for exactly confined data.
double support_fraction(const ComplexField& f);

// Enforces the compact-support convention (tolerance relative to max |f|).
void require_central_support(const ComplexField& f, double tol = 1e-12);

class Rng;
// Random trigonometric polynomial with modes |a_hat|, |b_hat| <= max_mode,
// optionally mean-free, normalized to max |f| = 1.
ComplexField band_limited_random(const GridPtr& grid, int max_mode, Rng& rng,
                                 bool zero_mean = false);

}  // namespace beltrami
