#include "beltrami/operators.hpp"

#include <cmath>

namespace beltrami {

ComplexField beurling(const ComplexField& f) {
  return apply_multiplier(f, [](int a, int b, const PeriodicGrid& g) -> Complex {
    if (a == 0 && b == 0) return 0.0;
    Complex xi = g.frequency(a, b);
    return std::conj(xi) / xi;
  });
}

ComplexField cauchy(const ComplexField& f) {
  double mean = std::abs(f.mean());
  double peak = f.max_abs();
  if (mean > 1e-12 * peak)
    throw NonZeroMean("cauchy: input mean exceeds 1e-12 of max |f|");
  return apply_multiplier(f, [](int a, int b, const PeriodicGrid& g) -> Complex {
    if ((a == 0 && b == 0) || g.nyquist(a) || g.nyquist(b)) return 0.0;
    Complex xi = g.frequency(a, b);
    return 1.0 / (Complex(0.0, 0.5) * xi);
  });
}

ComplexField apply_mask(const ComplexField& f, const DomainMask& mask) {
  check_compatible(f.grid(), mask.grid);
  ComplexField out = f;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= mask.coverage[i];
  return out;
}

ComplexField compress_beurling(const ComplexField& f, const DomainMask& mask) {
  check_compatible(f.grid(), mask.grid);
  return apply_mask(beurling(apply_mask(f, mask)), mask);
}

}  // namespace beltrami
