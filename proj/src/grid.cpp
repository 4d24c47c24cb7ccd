#include "beltrami/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "beltrami/rng.hpp"

namespace beltrami {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// FFTW planning is not thread safe; fftw_execute_dft on private buffers is.
// Plans are created once per (n, sign) with FFTW_UNALIGNED so they accept any
// caller array, and cached for the process lifetime.
class PlanCache {
 public:
  fftw_plan get(int n, int sign) {
    std::scoped_lock lock(mutex_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<Complex> a(std::size_t(n) * n), b(std::size_t(n) * n);
    fftw_plan p = fftw_plan_dft_2d(
        n, n, reinterpret_cast<fftw_complex*>(a.data()),
        reinterpret_cast<fftw_complex*>(b.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

void dft2d(int n, const Complex* in, Complex* out, int sign) {
  fftw_plan p = plan_cache().get(n, sign);
  fftw_execute_dft(p,
                   const_cast<fftw_complex*>(
                       reinterpret_cast<const fftw_complex*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

GridPtr PeriodicGrid::make(int n, double side) {
  if (!power_of_two(n) || n < 16)
    throw Error("PeriodicGrid: n must be a power of two >= 16");
  if (!(side > 0.0) || !std::isfinite(side))
    throw Error("PeriodicGrid: window side must be positive and finite");
  return GridPtr(new PeriodicGrid(n, side));
}

void check_compatible(const GridPtr& a, const GridPtr& b) {
  if (!a || !b || *a != *b)
    throw GridMismatch("fields live on different grids");
}

ComplexField::ComplexField(GridPtr grid, std::vector<Complex> values)
    : grid_(std::move(grid)), n_(grid_ ? grid_->n() : 0), v_(std::move(values)) {
  if (!grid_ || v_.size() != grid_->cells())
    throw Error("ComplexField: value count does not match grid");
}

ComplexField ComplexField::zeros(const GridPtr& grid) {
  return ComplexField(grid, std::vector<Complex>(grid->cells(), Complex(0.0)));
}

ComplexField ComplexField::constant(const GridPtr& grid, Complex c) {
  return ComplexField(grid, std::vector<Complex>(grid->cells(), c));
}

ComplexField ComplexField::sample(const GridPtr& grid,
                                  const std::function<Complex(Complex)>& f) {
  std::vector<Complex> v(grid->cells());
  int n = grid->n();
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) v[std::size_t(j) * n + k] = f(grid->point(j, k));
  return ComplexField(grid, std::move(v));
}

ComplexField& ComplexField::operator+=(const ComplexField& o) {
  check_compatible(grid_, o.grid_);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

ComplexField& ComplexField::operator-=(const ComplexField& o) {
  check_compatible(grid_, o.grid_);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

ComplexField& ComplexField::operator*=(Complex c) {
  for (auto& x : v_) x *= c;
  return *this;
}

ComplexField& ComplexField::hadamard(const ComplexField& o) {
  check_compatible(grid_, o.grid_);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] *= o.v_[i];
  return *this;
}

double ComplexField::l2_norm() const {
  double s = 0.0;
  for (const auto& x : v_) s += std::norm(x);
  return grid_->spacing() * std::sqrt(s);
}

double ComplexField::max_abs() const {
  double m = 0.0;
  for (const auto& x : v_) m = std::max(m, std::abs(x));
  return m;
}

Complex ComplexField::sum() const {
  Complex s = 0.0;
  for (const auto& x : v_) s += x;
  return s;
}

Complex ComplexField::mean() const { return sum() / double(v_.size()); }

bool ComplexField::all_finite() const {
  for (const auto& x : v_)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  return true;
}

ComplexField operator+(ComplexField a, const ComplexField& b) { return a += b; }
ComplexField operator-(ComplexField a, const ComplexField& b) { return a -= b; }
ComplexField operator*(Complex c, ComplexField f) { return f *= c; }
ComplexField hadamard(ComplexField a, const ComplexField& b) {
  return a.hadamard(b);
}

ComplexField conj_field(ComplexField f) {
  for (auto& x : f.values()) x = std::conj(x);
  return f;
}

RealField::RealField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), n_(grid_ ? grid_->n() : 0), v_(std::move(values)) {
  if (!grid_ || v_.size() != grid_->cells())
    throw Error("RealField: value count does not match grid");
}

RealField RealField::zeros(const GridPtr& grid) {
  return RealField(grid, std::vector<double>(grid->cells(), 0.0));
}

RealField RealField::constant(const GridPtr& grid, double c) {
  return RealField(grid, std::vector<double>(grid->cells(), c));
}

RealField RealField::sample(const GridPtr& grid,
                            const std::function<double(Complex)>& f) {
  std::vector<double> v(grid->cells());
  int n = grid->n();
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) v[std::size_t(j) * n + k] = f(grid->point(j, k));
  return RealField(grid, std::move(v));
}

std::vector<Complex> fourier_forward(const ComplexField& f) {
  std::vector<Complex> out(f.size());
  dft2d(f.grid()->n(), f.values().data(), out.data(), FFTW_FORWARD);
  return out;
}

ComplexField fourier_inverse(const GridPtr& grid,
                             std::span<const Complex> spectrum) {
  if (spectrum.size() != grid->cells())
    throw GridMismatch("spectrum size does not match grid");
  std::vector<Complex> out(spectrum.size());
  dft2d(grid->n(), spectrum.data(), out.data(), FFTW_BACKWARD);
  double scale = 1.0 / double(spectrum.size());
  for (auto& x : out) x *= scale;
  return ComplexField(grid, std::move(out));
}

ComplexField apply_multiplier(
    const ComplexField& f,
    const std::function<Complex(int, int, const PeriodicGrid&)>& m) {
  const PeriodicGrid& g = *f.grid();
  std::vector<Complex> spec = fourier_forward(f);
  int n = g.n();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) spec[std::size_t(a) * n + b] *= m(a, b, g);
  return fourier_inverse(f.grid(), spec);
}

namespace {

// Derivative multiplier with the Nyquist row/column zeroed; parity selects
// d_z ((i/2) conj(xi)) versus d_zbar ((i/2) xi).
Complex wirtinger_multiplier(const PeriodicGrid& g, int a, int b, int dz_order,
                             int dzbar_order) {
  if (g.nyquist(a) || g.nyquist(b)) return 0.0;
  Complex xi = g.frequency(a, b);
  Complex half_i(0.0, 0.5);
  Complex m = 1.0;
  for (int i = 0; i < dz_order; ++i) m *= half_i * std::conj(xi);
  for (int i = 0; i < dzbar_order; ++i) m *= half_i * xi;
  return m;
}

}  // namespace

ComplexField wirtinger(const ComplexField& f, int dz_order, int dzbar_order) {
  if (dz_order < 0 || dzbar_order < 0)
    throw Error("wirtinger: derivative orders must be nonnegative");
  return apply_multiplier(f, [=](int a, int b, const PeriodicGrid& g) {
    return wirtinger_multiplier(g, a, b, dz_order, dzbar_order);
  });
}

ComplexField d_z(const ComplexField& f) { return wirtinger(f, 1, 0); }
ComplexField d_zbar(const ComplexField& f) { return wirtinger(f, 0, 1); }

double support_fraction(const ComplexField& f) {
  const PeriodicGrid& g = *f.grid();
  double quarter = 0.25 * g.side();
  double inside = 0.0, outside = 0.0;
  int n = g.n();
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      double m = std::abs(f.at(j, k));
      Complex z = g.point(j, k);
      bool central = std::abs(z.real()) <= quarter && std::abs(z.imag()) <= quarter;
      (central ? inside : outside) = std::max(central ? inside : outside, m);
    }
  }
  double peak = std::max(inside, outside);
  return peak == 0.0 ? 0.0 : outside / peak;
}

void require_central_support(const ComplexField& f, double tol) {
  if (support_fraction(f) > tol)
    throw SupportViolation(
        "field is not confined to the central half of the window");
}

ComplexField band_limited_random(const GridPtr& grid, int max_mode, Rng& rng,
                                 bool zero_mean) {
  int n = grid->n();
  if (max_mode < 1 || max_mode >= n / 2)
    throw Error("band_limited_random: max_mode out of range");
  std::vector<Complex> spec(grid->cells(), Complex(0.0));
  for (int a = 0; a < n; ++a) {
    int ah = grid->signed_mode(a);
    if (std::abs(ah) > max_mode) continue;
    for (int b = 0; b < n; ++b) {
      int bh = grid->signed_mode(b);
      if (std::abs(bh) > max_mode) continue;
      if (zero_mean && ah == 0 && bh == 0) continue;
      spec[std::size_t(a) * n + b] = rng.complex_in_disk();
    }
  }
  ComplexField f = fourier_inverse(grid, spec);
  double peak = f.max_abs();
  if (peak > 0.0) f *= Complex(1.0 / peak);
  return f;
}

}  // namespace beltrami
