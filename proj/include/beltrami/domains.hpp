#pragma once

// Star-shaped test domains described by a radial Fourier profile
// r(theta) = c0 + sum_k (a_k cos k theta + b_k sin k theta) about a center,
// their boundary curves (nodes, tangents, outward normals, arclength
// weights), and rasterized coverage masks with subcell resolution.

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "beltrami/grid.hpp"

#include "json.hpp"

namespace beltrami {

struct BoundaryCurve {
  std::vector<Complex> points;
  std::vector<Complex> normals;       // outward unit normals
  std::vector<double> ds;             // arclength weights |z'(theta)| dtheta
  std::vector<double> tangent_angle;  // unwrapped arg z'(theta)
};

class DomainSpec {
 public:
  static constexpr int kMaxModes = 64;

  // r(theta) == radius.
  static DomainSpec disk(double radius, Complex center = 0.0, int nodes = 512);
  // Semi-axes a (real direction) and b (imaginary direction).
  static DomainSpec ellipse(double a, double b, Complex center = 0.0,
                            int nodes = 512);
  // r(theta) = radius (1 + eps cos(mode theta)).
  static DomainSpec perturbed_disk(double radius, int mode, double eps,
                                   Complex center = 0.0, int nodes = 512);
  // Projects dense radial samples (uniform in theta) onto <= kMaxModes modes.
  static DomainSpec from_radial_samples(std::span<const double> r,
                                        Complex center = 0.0, int nodes = 512);

  DomainSpec(Complex center, std::vector<double> cos_coef,
             std::vector<double> sin_coef, int nodes);

  Complex center() const { return center_; }
  int node_count() const { return nodes_; }
  const std::vector<double>& cos_coefficients() const { return cos_coef_; }
  const std::vector<double>& sin_coefficients() const { return sin_coef_; }

  double radius(double theta) const;
  double radius_derivative(double theta) const;
  double min_radius() const { return min_radius_; }
  double max_radius() const { return max_radius_; }

  Complex boundary_point(double theta) const;
  Complex boundary_tangent(double theta) const;  // dz/dtheta

  DomainSpec rotated(double phi) const;          // about its center
  DomainSpec translated(Complex shift) const;
  DomainSpec scaled(double lambda) const;        // dilation about the center

  nlohmann::ordered_json to_json() const;
  static DomainSpec from_json(const nlohmann::json& j);

 private:
  Complex center_;
  std::vector<double> cos_coef_;  // cos_coef_[0] is the constant term
  std::vector<double> sin_coef_;  // sin_coef_[k] pairs with sin((k+1) theta)
  int nodes_;
  double min_radius_ = 0.0, max_radius_ = 0.0;
};

// Boundary nodes at theta_i = 2 pi i / m with analytic tangents; normals are
// the tangents rotated by -pi/2 (outward for the counterclockwise sweep).
BoundaryCurve boundary_normal(const DomainSpec& domain);

// Per-cell area coverage in [0, 1] from a 4x4 subcell sample; keeps the
// DomainSpec that generated it. Throws DomainTooLarge when the domain is not
// contained in the central half of the window (no extra margin required).
struct DomainMask {
  GridPtr grid;
  std::vector<double> coverage;
  DomainSpec spec;

  double at(int j, int k) const {
    return coverage[std::size_t(j) * grid->n() + k];
  }
  double area() const;  // sum coverage * h^2
};

DomainMask domain_mask(const DomainSpec& domain, const GridPtr& grid);

// Boundary regularity gauge: the q-chord norm of the outward normal field.
// Declared here, implemented against the norm estimators.
double bp_norm(const DomainSpec& domain, double q);

// Dini-type regularity proxy: the Dini norm of the unwrapped tangent angle
// over one boundary sweep (parameter scaled to [0, 1]).
double dini_character(const DomainSpec& domain, int resolution = 1024);

}  // namespace beltrami
