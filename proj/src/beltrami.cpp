// Contraction-iteration solvers for d_zbar(f) = mu d_z(f), the normalized
// global solution and its derived fields, branch-consistent logarithms,
// off-lattice map evaluation, and Newton inversion.

#include "beltrami/beltrami.hpp"

#include <cmath>
#include <numbers>
#include <queue>
#include <utility>

#include "beltrami/errors.hpp"
#include "beltrami/operators.hpp"

namespace beltrami {

namespace {

constexpr double kPi = std::numbers::pi;

void require_tol(double tol) {
  if (!(tol > 0.0) || !(tol < 1.0))
    throw ConfigError("solver tolerance must lie in (0, 1)");
}

// Iteration budget for a contraction of ratio k: enough steps to shrink the
// successive difference below tol, plus slack for rounding plateaus.
int iteration_budget(double k, double tol) {
  if (!(k > 1e-12)) return 9;
  return static_cast<int>(std::ceil(std::log(tol) / std::log(k))) + 8;
}

}  // namespace

Dilatation Dilatation::certify(ComplexField mu) {
  if (!mu.all_finite())
    throw EllipticityViolation("dilatation has non-finite entries");
  const PeriodicGrid& g = *mu.grid();
  double k = 0.0;
  double support_radius = 0.0;
  for (int j = 0; j < g.n(); ++j)
    for (int l = 0; l < g.n(); ++l) {
      double m = std::abs(mu.at(j, l));
      if (m > k) k = m;
      if (m > 0.0)
        support_radius = std::max(support_radius, std::abs(g.point(j, l)));
    }
  if (!(k < 1.0))
    throw EllipticityViolation("max |mu| = " + std::to_string(k) + " >= 1");
  require_central_support(mu);

  Dilatation out;
  out.mu = std::move(mu);
  out.k = k;
  out.distortion = (1.0 + k) / (1.0 - k);
  out.support_radius = support_radius;
  return out;
}

ResolventResult resolvent(const Dilatation& mu, const ComplexField& h, double tol) {
  require_tol(tol);
  check_compatible(mu.mu.grid(), h.grid());
  const double hn = h.l2_norm();
  if (hn == 0.0) return {ComplexField::zeros(h.grid()), 1, 0.0};

  const int budget = iteration_budget(mu.k, tol);
  ComplexField x = h;
  for (int it = 1; it <= budget; ++it) {
    ComplexField next = h + hadamard(mu.mu, beurling(x));
    if (!next.all_finite())
      throw NoConvergence("resolvent iteration produced non-finite values");
    const double step = (next - x).l2_norm();
    x = std::move(next);
    // step bounds the residual of the previous iterate; the returned one is
    // better by another factor of k.
    if (step <= tol * hn) return {std::move(x), it, step};
  }
  throw NoConvergence("resolvent failed to reach tol " + std::to_string(tol) +
                      " within " + std::to_string(budget) +
                      " iterations (k = " + std::to_string(mu.k) + ")");
}

ResolventResult resolvent_domain(const Dilatation& mu, const ComplexField& h,
                                 const DomainMask& mask, double tol) {
  require_tol(tol);
  check_compatible(mu.mu.grid(), h.grid());
  check_compatible(mu.mu.grid(), mask.grid);
  const int n = mask.grid->n();
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l)
      if (std::abs(mu.mu.at(j, l)) > 0.0 && mask.at(j, l) == 0.0)
        throw SupportViolation("dilatation is supported outside the mask");

  ComplexField hm = apply_mask(h, mask);
  const double hn = hm.l2_norm();
  if (hn == 0.0) return {ComplexField::zeros(h.grid()), 1, 0.0};

  const int budget = iteration_budget(mu.k, tol);
  ComplexField x = hm;
  for (int it = 1; it <= budget; ++it) {
    ComplexField next = hm + hadamard(mu.mu, compress_beurling(x, mask));
    if (!next.all_finite())
      throw NoConvergence("compressed resolvent produced non-finite values");
    const double step = (next - x).l2_norm();
    x = std::move(next);
    if (step <= tol * hn) return {std::move(x), it, step};
  }
  throw NoConvergence("compressed resolvent failed to converge (k = " +
                      std::to_string(mu.k) + ")");
}

ComplexField branch_consistent_log(const ComplexField& f) {
  const PeriodicGrid& g = *f.grid();
  const int n = g.n();
  std::vector<Complex> out(f.size());
  std::vector<char> seen(f.size(), 0);

  const Complex root = f[0];
  if (!(std::abs(root) > 0.0) || !std::isfinite(std::abs(root)))
    throw LogBranchFailure("field vanishes at the window corner");
  out[0] = std::log(root);
  seen[0] = 1;

  // Spanning-tree integration of principal-log increments; an increment of
  // magnitude pi or more means the branch can no longer be tracked between
  // neighbouring cells.
  std::queue<int> frontier;
  frontier.push(0);
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    const int ju = u / n, lu = u % n;
    const int nbr[4] = {((ju + 1) % n) * n + lu, ((ju + n - 1) % n) * n + lu,
                        ju * n + (lu + 1) % n, ju * n + (lu + n - 1) % n};
    for (int w : nbr) {
      if (seen[w]) continue;
      const Complex fw = f[std::size_t(w)];
      if (!(std::abs(fw) > 0.0) || !std::isfinite(std::abs(fw)))
        throw LogBranchFailure("field vanishes or blows up; no continuous log");
      const Complex inc = std::log(fw / f[std::size_t(u)]);
      if (!(std::abs(inc) < kPi))
        throw LogBranchFailure("log increment between adjacent cells reached pi");
      out[w] = out[u] + inc;
      seen[w] = 1;
      frontier.push(w);
    }
  }
  return {f.grid(), std::move(out)};
}

BeltramiSolution principal_solution(const Dilatation& mu, double tol) {
  ResolventResult r = resolvent(mu, mu.mu, tol);

  BeltramiSolution sol;
  sol.mu = mu;
  sol.rho = std::move(r.x);
  sol.iterations = r.iterations;
  sol.tol = tol;
  sol.shear = sol.rho.mean();

  sol.dzf = beurling(sol.rho);
  for (Complex& v : sol.dzf.values()) v += 1.0;

  // cauchy needs mean-free data; the mean of rho is exactly the affine shear
  // the window cannot absorb into a periodic potential, so it is split off
  // and carried separately as f(z) = z + shear conj(z) + potential(z).
  ComplexField centered = sol.rho;
  for (Complex& v : centered.values()) v -= sol.shear;
  sol.potential = cauchy(centered);

  sol.sigma = branch_consistent_log(sol.dzf);

  sol.jac = RealField::zeros(mu.mu.grid());
  for (std::size_t i = 0; i < sol.jac.size(); ++i)
    sol.jac[i] = std::norm(sol.dzf[i]) - std::norm(sol.rho[i]);

  ComplexField defect = sol.rho - hadamard(mu.mu, sol.dzf);
  const double mun = mu.mu.l2_norm();
  sol.residual = mun > 0.0 ? defect.l2_norm() / mun : defect.l2_norm();
  return sol;
}

ComplexField sigma_field(const Dilatation& mu, double tol) {
  ComplexField rhs = d_z(mu.mu);
  ResolventResult r = resolvent(mu, rhs, tol);

  // The solver leaves an O(tol) mean behind; remove it so the antiderivative
  // is well defined, then fix the additive constant so mean(exp) = 1 -- the
  // same gauge the normalized solution's d_z carries.
  ComplexField y = std::move(r.x);
  const Complex bias = y.mean();
  for (Complex& v : y.values()) v -= bias;
  ComplexField sigma = cauchy(y);

  Complex avg = 0.0;
  for (const Complex& s : sigma.values()) avg += std::exp(s);
  avg /= static_cast<double>(sigma.size());
  const Complex shift = std::log(avg);
  for (Complex& s : sigma.values()) s -= shift;
  return sigma;
}

void check_solution_invariants(const BeltramiSolution& sol) {
  const double k = sol.mu.k;
  const double K = sol.mu.distortion;
  const double peak_dzf = sol.dzf.max_abs();

  ComplexField defect = sol.rho - hadamard(sol.mu.mu, sol.dzf);
  const double mun = sol.mu.mu.l2_norm();
  if (mun > 0.0 && defect.l2_norm() > sol.tol * mun * (1.0 + 1e-6))
    throw NoConvergence(
        "derivative identity d_zbar f = mu d_z f fails beyond tolerance");

  for (std::size_t i = 0; i < sol.rho.size(); ++i) {
    const double a = std::abs(sol.dzf[i]);
    const double b = std::abs(sol.rho[i]);
    if (b > k * a + 1e-8)
      throw EllipticityViolation("pointwise bound |d_zbar f| <= k |d_z f| fails");
    if (!(sol.jac[i] > 0.0))
      throw NonPositiveWeight("Jacobian is not positive everywhere");
    if (a + b > std::sqrt(K * sol.jac[i]) * (1.0 + 1e-6))
      throw EllipticityViolation("distortion bound |Df|^2 <= K |Jf| fails");
  }

  for (std::size_t i = 0; i < sol.sigma.size(); ++i)
    if (std::abs(std::exp(sol.sigma[i]) - sol.dzf[i]) >
        1e-9 * std::max(1.0, peak_dzf))
      throw LogBranchFailure("exp(sigma) drifted away from d_z f");
}

// ---------------------------------------------------------------------------
// Off-lattice evaluation

MapEvaluator::MapEvaluator(const BeltramiSolution& sol) : shear_(sol.shear) {
  potential_.grid = sol.potential.grid();
  potential_.v = sol.potential.values();
  rho_.grid = sol.rho.grid();
  rho_.v = sol.rho.values();
  srho_.grid = sol.dzf.grid();
  srho_.v = sol.dzf.values();
  for (Complex& v : srho_.v) v -= 1.0;  // store S rho; the 1 is added back exactly
}

namespace {

inline void catmull_rom(double t, double w[4]) {
  const double t2 = t * t, t3 = t2 * t;
  w[0] = 0.5 * (-t3 + 2.0 * t2 - t);
  w[1] = 0.5 * (3.0 * t3 - 5.0 * t2 + 2.0);
  w[2] = 0.5 * (-3.0 * t3 + 4.0 * t2 + t);
  w[3] = 0.5 * (t3 - t2);
}

}  // namespace

Complex MapEvaluator::Sampler::eval(Complex z) const {
  const int n = grid->n();
  const double h = grid->spacing();
  double x = (z.real() + grid->side() / 2.0) / h;
  double y = (z.imag() + grid->side() / 2.0) / h;
  x -= std::floor(x / n) * n;
  y -= std::floor(y / n) * n;
  int j0 = static_cast<int>(std::floor(x));
  int l0 = static_cast<int>(std::floor(y));
  double wx[4], wy[4];
  catmull_rom(x - j0, wx);
  catmull_rom(y - l0, wy);
  Complex acc = 0.0;
  for (int r = 0; r < 4; ++r) {
    const int j = (j0 - 1 + r + n) % n;
    Complex row = 0.0;
    for (int c = 0; c < 4; ++c) {
      const int l = (l0 - 1 + c + n) % n;
      row += wy[c] * v[std::size_t(j) * n + l];
    }
    acc += wx[r] * row;
  }
  return acc;
}

Complex MapEvaluator::map(Complex z) const {
  return z + shear_ * std::conj(z) + potential_.eval(z);
}

Complex MapEvaluator::dz(Complex z) const { return 1.0 + srho_.eval(z); }

Complex MapEvaluator::dzbar(Complex z) const { return rho_.eval(z); }

double MapEvaluator::jacobian(Complex z) const {
  return std::norm(dz(z)) - std::norm(dzbar(z));
}

namespace {

// Damped Newton step for f(z) = w: solve a d + b conj(d) = r with
// a = d_z f, b = d_zbar f, r the current defect.
Complex newton_invert(const MapEvaluator& ev, Complex w, Complex z0, double side) {
  const double goal = 1e-9 * side;
  Complex z = z0;
  Complex r = w - ev.map(z);
  for (int it = 0; it < 100; ++it) {
    if (std::abs(r) <= goal) return z;
    const Complex a = ev.dz(z);
    const Complex b = ev.dzbar(z);
    const double jac = std::norm(a) - std::norm(b);
    if (!(jac > 0.0)) throw NewtonStall("map inversion hit a degenerate Jacobian");
    Complex step = (std::conj(a) * r - b * std::conj(r)) / jac;
    // Halve until the defect actually shrinks.
    for (int half = 0;; ++half) {
      const Complex r_try = w - ev.map(z + step);
      if (std::abs(r_try) < std::abs(r)) {
        z += step;
        r = r_try;
        break;
      }
      if (half >= 60) throw NewtonStall("map inversion stopped making progress");
      step *= 0.5;
    }
  }
  throw NewtonStall("map inversion exceeded its iteration budget");
}

Complex affine_guess(Complex w, Complex shear) {
  const double m2 = std::norm(shear);
  if (m2 >= 1.0) return w;
  return (w - shear * std::conj(w)) / (1.0 - m2);
}

}  // namespace

std::vector<Complex> invert_map(const BeltramiSolution& sol,
                                std::span<const Complex> targets) {
  MapEvaluator ev(sol);
  const double side = sol.rho.grid()->side();
  std::vector<Complex> out;
  out.reserve(targets.size());
  for (Complex w : targets)
    out.push_back(newton_invert(ev, w, affine_guess(w, sol.shear), side));
  return out;
}

RealField inverse_jacobian_weight(const BeltramiSolution& sol, double a,
                                  const GridPtr& region_grid) {
  MapEvaluator ev(sol);
  const double side = sol.rho.grid()->side();
  RealField out = RealField::zeros(region_grid);
  const int n = region_grid->n();
  Complex row_start = 0.0;
  Complex prev = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      const Complex w = region_grid->point(j, l);
      Complex guess;
      if (j == 0 && l == 0)
        guess = affine_guess(w, sol.shear);
      else
        guess = (l == 0) ? row_start : prev;  // warm start from a neighbour
      const Complex z = newton_invert(ev, w, guess, side);
      if (l == 0) row_start = z;
      prev = z;
      const double jac = ev.jacobian(z);
      if (!(jac > 0.0))
        throw NonPositiveWeight("pulled-back Jacobian is not positive");
      out.at(j, l) = std::pow(jac, -a);
    }
  }
  return out;
}

}  // namespace beltrami
