#pragma once

// Muckenhoupt-type weight diagnostics over dyadic cube families: the A_p and
// reverse-Holder characteristics with their extremal cubes, the exponential
// certificate for log-derivative fields, and Jacobian area-distortion and
// change-of-variables checks for solved maps.

#include <string>
#include <vector>

#include "beltrami/beltrami.hpp"
#include "beltrami/grid.hpp"

#include "json.hpp"

namespace beltrami {

// Lattice-aligned square of cells x cells grid cells whose lower-left cell
// is (j0, l0); cell (j, l) is the h x h square centered on the sample point.
struct Cube {
  int j0 = 0;
  int l0 = 0;
  int cells = 0;

  Complex corner(const PeriodicGrid& g) const {
    const double h = g.spacing();
    return {g.coord(j0) - 0.5 * h, g.coord(l0) - 0.5 * h};
  }
  double side(const PeriodicGrid& g) const { return cells * g.spacing(); }
};

// Dyadic tilings of a base sub-square at every level whose cubes still hold
// at least 4x4 cells, together with two diagonally shifted copies of each
// tiling (offsets ~1/3 and ~2/3 of the cube side, rounded to whole cells;
// shifted cubes that leave the base window are dropped). The shifted grids
// are the usual surrogate for the sup over all cubes.
class CubeFamily {
 public:
  // Base window: cells x cells starting at cell (j0, l0); cells must be a
  // power of two >= 4 and the window must fit in the grid.
  static CubeFamily make(const GridPtr& grid, int j0, int l0, int cells);

  // Base window = the centered half-window (side n/2 cells).
  static CubeFamily central(const GridPtr& grid);

  const GridPtr& grid() const { return grid_; }
  int base_j0() const { return j0_; }
  int base_l0() const { return l0_; }
  int base_cells() const { return cells_; }
  int levels() const { return levels_; }
  const std::vector<Cube>& cubes() const { return cubes_; }

 private:
  CubeFamily() = default;
  GridPtr grid_;
  int j0_ = 0, l0_ = 0, cells_ = 0, levels_ = 0;
  std::vector<Cube> cubes_;
};

struct LevelStat {
  double side = 0.0;            // physical cube side at this level
  double characteristic = 1.0;  // sup over this level's cubes only
};

struct ApReport {
  double characteristic = 1.0;
  Complex extremal_corner = 0.0;
  double extremal_side = 0.0;
  double exponent = 0.0;  // p for A_p, s for RH_s
  int cube_count = 0;
  std::vector<LevelStat> levels;

  nlohmann::ordered_json to_json() const;
};

// sup over the family of <w>_Q <w^{-1/(p-1)}>_Q^{p-1}, p > 1, computed from
// prefix-sum tables over the base window. The weight must be strictly
// positive and finite there.
ApReport ap_characteristic(const RealField& w, double p, const CubeFamily& cubes);

// Same functional with the dual-power field w^{-1/(p-1)} supplied explicitly
// instead of derived pointwise from the samples. For weights with integrable
// singularities stored as cell averages, the pointwise power is biased on
// exactly the cells where the weight varies fastest (the average of a power
// is not the power of the average); supplying exact cell averages of both
// powers removes that bias.
ApReport ap_characteristic(const RealField& w, const RealField& dual_power,
                           double p, const CubeFamily& cubes);

// sup over the family of <w^s>_Q^{1/s} / <w>_Q, s > 1.
ApReport rh_characteristic(const RealField& w, double s, const CubeFamily& cubes);

struct MoserCertificate {
  double lhs = 1.0;        // sup_Q <e^{a Re sigma}>_Q <e^{-a Re sigma/(p-1)}>_Q^{p-1}
  double dsigma_l2 = 0.0;  // ||d_z sigma||_2 + ||d_zbar sigma||_2
};

// Exponential-weight certificate: the A_p functional of |e^{a sigma}| over
// the family, switching to per-cube log-sum-exp when a * range(Re sigma)
// exceeds 30. Throws OverflowError when even the log of the sup leaves
// double range.
MoserCertificate moser_certificate(const ComplexField& sigma, double a, double p,
                                   const CubeFamily& cubes);

// Axis-aligned square in physical (image-plane) coordinates.
struct ImageCube {
  Complex corner;  // lower-left
  double side = 0.0;
};

struct AreaDistortionResult {
  double lhs = 0.0;    // |P|^{-t} (int_P |Jf|)^{t-1} int_P |Jf|^{1-t}
  double rhs = 0.0;    // reference shape with unit constant
  double ratio = 0.0;  // lhs / rhs
  std::string case_label;
  Complex preimage_corner;
  double preimage_width = 0.0;
  double preimage_height = 0.0;
};

// Evaluates the normalized Jacobian concentration functional on P, the
// bounding rectangle of f^{-1}(boundary of Q), with cells clipped to P. The
// reference shape depends on the range of 1 - t: exp((1-t)^2 G^2) for
// 1-t > 1, the constant 1 for 0 <= 1-t <= 1 (a pure Holder bound), and
// exp(t(t-1) G^2) for t > 1, where G is the L2 size of D sigma.
AreaDistortionResult area_distortion_check(const BeltramiSolution& sol, double t,
                                           const ImageCube& Q);

struct ChangeOfVariablesResult {
  double lhs = 0.0;  // int_Q |Jf^{-1}|^t
  double rhs = 0.0;  // int_{f^{-1}(Q)} |Jf|^{1-t}
  double ratio = 0.0;
};

// Both sides of the substitution identity int_Q |Jf^{-1}|^t =
// int_{f^{-1}(Q)} |Jf|^{1-t} by midpoint quadrature: the left in the image
// plane through Newton preimages, the right on a fine lattice over the
// preimage with a membership indicator.
ChangeOfVariablesResult change_of_variables_check(const BeltramiSolution& sol,
                                                  double t, const ImageCube& Q);

}  // namespace beltrami
