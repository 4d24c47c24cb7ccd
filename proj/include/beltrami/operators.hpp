#pragma once

// Singular integral operators on the periodic window, realized as Fourier
// multipliers: the Beurling transform (multiplier conj(xi)/xi, zero mode
// killed), its inverse-derivative companion the Cauchy transform, and the
// coverage-weighted compression of the Beurling transform to a domain.

#include "beltrami/domains.hpp"
#include "beltrami/grid.hpp"

namespace beltrami {

// Principal-value convolution with -1/(pi z^2): each nonzero Fourier mode is
// multiplied by conj(xi)/xi, the zero mode by 0. Unit modulus on every
// nonzero mode, so an L2 isometry on mean-free fields.
ComplexField beurling(const ComplexField& f);

// Solves d_zbar(g) = f for the mean-free periodic g (division by the d_zbar
// multiplier away from the zero mode). Requires |mean(f)| <= 1e-12 max|f|;
// the Nyquist row/column is dropped, matching the derivative convention.
ComplexField cauchy(const ComplexField& f);

// mask (*) beurling(mask (*) f) with (*) the pointwise coverage product.
ComplexField compress_beurling(const ComplexField& f, const DomainMask& mask);

// Pointwise coverage product as a standalone step.
ComplexField apply_mask(const ComplexField& f, const DomainMask& mask);

}  // namespace beltrami
