#pragma once

// Reference computations for the test suites, built along routes the library
// itself never takes: symbolic Wirtinger derivatives of Gaussian-monomial
// fields, direct principal-value quadrature of the -1/(pi z^2) kernel with
// periodic images, a naive refined-lattice Muckenhoupt characteristic, and a
// trigonometrically parameterized chord norm for ellipses. Agreement between
// these and the spectral / prefix-sum implementations is the core evidence
// that the fast paths compute the right thing.

#include <complex>

#include "beltrami/grid.hpp"
#include "beltrami/weights.hpp"

namespace beltrami::testing {

// g(z) = coef * z^m * conj(z)^n * exp(-a |z|^2). Every Wirtinger derivative
// is again a combination of such terms, so the derivatives below are exact.
struct GaussianMonomial {
  int m = 0;
  int n = 0;
  double a = 1.0;
  Complex coef = 1.0;

  Complex value(Complex z) const;
  Complex dz(Complex z) const;     // d/dz
  Complex dzbar(Complex z) const;  // d/dzbar
};

ComplexField sample_value(const GridPtr& grid, const GaussianMonomial& g);
ComplexField sample_dz(const GridPtr& grid, const GaussianMonomial& g);
ComplexField sample_dzbar(const GridPtr& grid, const GaussianMonomial& g);

// Direct midpoint principal-value sum of -1/pi (f(w) - f(z0)) / (w - z0)^2
// over the grid cells and their periodic images out to the given number of
// image rings. The singular cell drops out (its symmetric principal value
// vanishes), and the constant subtraction is free because the symmetric
// image sum of the kernel itself is zero ring by ring. Accuracy is limited
// by the midpoint rule near the evaluation point, a few parts in a thousand
// at 128^2; it pins the kernel's normalization and sign.
Complex pv_beurling_point(const ComplexField& f, int j0, int k0, int rings);

// Naive Muckenhoupt characteristic of w(z) = |z - z0|^alpha over the exact
// cube geometry of the family: every cube average is a direct sum over a
// refine-times-finer lattice (half-offset, so the singularity is never
// sampled), with an extra 8x8 subdivision of fine cells close to z0. No
// prefix tables, no shared code with the estimator under test.
double ap_brute_force(double alpha, double p, const CubeFamily& cubes,
                      int refine, Complex z0 = 0.0);

// Chord norm of the outward normal field of an axis-aligned ellipse from the
// trigonometric parameterization (a cos t, b sin t): analytic normals and
// arclength, curvature closed form on the diagonal. The library reaches the
// same curve through a radial Fourier profile, so node placement, normals,
// and weights are all computed differently.
double ellipse_chord_norm(double a, double b, double q, int m);

}  // namespace beltrami::testing
