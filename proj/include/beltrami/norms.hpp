#pragma once

// Norm estimators: weighted Sobolev norms from spectral derivatives and
// midpoint quadrature, the Dini modulus integral for sampled functions on
// [0, 1], and the chord-quotient boundary norm of order q for closed curves.

#include <optional>
#include <span>

#include "beltrami/domains.hpp"
#include "beltrami/grid.hpp"

namespace beltrami {

struct NormSpec {
  int order = 1;                       // highest derivative order n
  double p = 2.0;                      // integrability exponent, > 1
  const DomainMask* region = nullptr;  // nullptr: the full window
  const RealField* weight = nullptr;   // nullptr: unweighted
};

// sum over derivative blocks |alpha| = j of || (d_z^{a1} d_zbar^{a2} f) w^{1/p} ||_{L^p(E)},
// j = n alone when homogeneous, j = 0..n otherwise. Midpoint quadrature with
// coverage weights on the region.
double sobolev_norm(const ComplexField& f, const NormSpec& spec,
                    bool homogeneous = false);

struct DiniResult {
  double value;              // integral of modulus(t) dt/t over [cutoff, 1]
  double cutoff;             // 1/m
  double modulus_at_cutoff;  // modulus(1/m)
  double tail_bound;         // bound for the unseen [1/m^2, 1/m] continuation
};

// samples are f(i / (m - 1)), i = 0..m-1, m >= 64. Modulus of continuity by
// sliding-window extrema at dyadic t-levels, log-spaced trapezoid integral,
// lower cutoff t >= 1/m.
DiniResult dini_norm_detailed(std::span<const double> samples);
double dini_norm(std::span<const double> samples);

// ( sum_(x,y) (|f(x)-f(y)| / |x-y|)^q ds(x) ds(y) )^(1/q) over sampled closed
// curves; the coincident-point cells take the symmetric difference-quotient
// limit so the quadrature covers the full product measure. q > 2.
double besov_boundary_norm(std::span<const Complex> nodes,
                           std::span<const Complex> values,
                           std::span<const double> ds, double q);

// Same functional with nodes, weights, and boundary samples produced from a
// star-shaped domain; values[i] pairs with theta_i = 2 pi i / m.
double besov_boundary_norm(const DomainSpec& domain,
                           std::span<const Complex> values, double q);

}  // namespace beltrami
