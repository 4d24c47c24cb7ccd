#pragma once

// Solvers for the first-order elliptic system d_zbar(f) = mu d_z(f) on the
// periodic window: the contraction-iteration resolvent of (I - mu S), its
// compression to a domain mask, the normalized global solution with its
// log-derivative and Jacobian, map inversion, and Jacobian-power weights
// pulled back to an image-side sampling grid.

#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "beltrami/domains.hpp"
#include "beltrami/grid.hpp"

namespace beltrami {

// A certified dilatation coefficient: max |mu| = k < 1, support confined to
// the central half of the window.
struct Dilatation {
  ComplexField mu;
  double k = 0.0;               // ellipticity bound max |mu|
  double distortion = 1.0;      // (1 + k) / (1 - k)
  double support_radius = 0.0;  // max |z| over the support

  // Validates and measures; throws EllipticityViolation / SupportViolation.
  static Dilatation certify(ComplexField mu);
};

struct ResolventResult {
  ComplexField x;
  int iterations = 0;
  double residual = 0.0;  // || x - mu S x - h ||_2 bound actually achieved
};

// Solves (I - mu S) x = h by the contraction iteration x <- h + mu S x.
// Stops when the successive difference drops below tol * ||h||_2, which
// bounds the true residual by k * tol * ||h||_2. Iteration budget
// ceil(log tol / log k) + 8; NoConvergence beyond it or on non-finite data.
ResolventResult resolvent(const Dilatation& mu, const ComplexField& h,
                          double tol = 1e-10);

// Same iteration with the compressed operator mask (*) S(mask (*) .) and the
// data restricted to the mask. Requires supp mu inside the mask coverage.
ResolventResult resolvent_domain(const Dilatation& mu, const ComplexField& h,
                                 const DomainMask& mask, double tol = 1e-10);

// Normalized global solution f with d_zbar f = rho, d_z f = 1 + S rho.
// On the periodic window the non-periodic part of f is z + shear * conj(z),
// where shear = mean(rho) is the affine remainder the window cannot fold
// into a periodic potential; the stored potential is cauchy(rho - shear).
struct BeltramiSolution {
  Dilatation mu;
  ComplexField rho;        // d_zbar f
  ComplexField dzf;        // d_z f = 1 + S rho
  ComplexField sigma;      // branch-consistent log of dzf
  ComplexField potential;  // cauchy(rho - mean(rho)); f = z + shear conj(z) + potential
  RealField jac;           // |dzf|^2 - |rho|^2
  Complex shear = 0.0;
  double residual = 0.0;   // ||rho - mu dzf||_2 / ||mu||_2
  int iterations = 0;
  double tol = 0.0;
};

BeltramiSolution principal_solution(const Dilatation& mu, double tol = 1e-10);

// Log-derivative field solved directly from (I - mu S)(d_zbar sigma) = d_z mu,
// normalized so mean(exp(sigma)) = 1 (the same normalization d_z f carries).
ComplexField sigma_field(const Dilatation& mu, double tol = 1e-10);

// Branch-consistent logarithm of a nonvanishing field: per-edge principal
// log increments integrated along a spanning tree from the window corner.
// LogBranchFailure when an increment reaches magnitude pi.
ComplexField branch_consistent_log(const ComplexField& f);

// Throws an Error naming the failed property unless the solution satisfies
// the derivative identity, the pointwise ellipticity bound, positivity of
// the Jacobian, and the distortion inequality, with small fixed slack.
void check_solution_invariants(const BeltramiSolution& sol);

// Bicubic samplers over the periodic fields of a solution, plus the affine
// part, so the map and its derivatives can be evaluated off-lattice.
class MapEvaluator {
 public:
  explicit MapEvaluator(const BeltramiSolution& sol);
  Complex map(Complex z) const;     // f(z)
  Complex dz(Complex z) const;      // d_z f
  Complex dzbar(Complex z) const;   // d_zbar f
  double jacobian(Complex z) const;

 private:
  struct Sampler {
    GridPtr grid;
    std::vector<Complex> v;
    Complex eval(Complex z) const;
  };
  Sampler potential_, rho_, srho_;
  Complex shear_;
};

// Damped Newton preimages f^{-1}(target) for each target; |f(z) - w| must
// drop below 1e-9 * window side within 100 iterations, else NewtonStall.
std::vector<Complex> invert_map(const BeltramiSolution& sol,
                                std::span<const Complex> targets);

// Samples |J_f(f^{-1}(w))|^{-a} on the image-side grid.
RealField inverse_jacobian_weight(const BeltramiSolution& sol, double a,
                                  const GridPtr& region_grid);

// Directory round-trip: field dumps for the solution components plus a JSON
// manifest carrying {k, K, tol, residual, iterations}.
void save_solution(const BeltramiSolution& sol, const std::filesystem::path& dir);
BeltramiSolution load_solution(const std::filesystem::path& dir);

}  // namespace beltrami
