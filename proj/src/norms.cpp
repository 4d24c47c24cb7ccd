#include "beltrami/norms.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace beltrami {

namespace {

// L^p integral of |g| against coverage and weight^(1) over the region; the
// weight enters as w * |g|^p, i.e. |g w^{1/p}|^p.
double weighted_lp(const ComplexField& g, double p, const DomainMask* region,
                   const RealField* weight) {
  const GridPtr& grid = g.grid();
  double hh = grid->spacing() * grid->spacing();
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double cov = region ? region->coverage[i] : 1.0;
    if (cov == 0.0) continue;
    double w = weight ? (*weight)[i] : 1.0;
    acc += cov * w * std::pow(std::abs(g[i]), p) * hh;
  }
  return std::pow(acc, 1.0 / p);
}

}  // namespace

double sobolev_norm(const ComplexField& f, const NormSpec& spec,
                    bool homogeneous) {
  if (spec.order < 0) throw Error("sobolev_norm: negative derivative order");
  if (!(spec.p > 1.0)) throw Error("sobolev_norm: exponent must exceed 1");
  if (spec.region) check_compatible(f.grid(), spec.region->grid);
  if (spec.weight) {
    check_compatible(f.grid(), spec.weight->grid());
    for (std::size_t i = 0; i < spec.weight->size(); ++i) {
      double cov = spec.region ? spec.region->coverage[i] : 1.0;
      if (cov == 0.0) continue;
      double w = (*spec.weight)[i];
      if (!(w > 0.0) || !std::isfinite(w))
        throw NonPositiveWeight("sobolev_norm: weight must be positive and finite");
    }
  }
  double total = 0.0;
  int lowest = homogeneous ? spec.order : 0;
  for (int j = lowest; j <= spec.order; ++j) {
    for (int a1 = j; a1 >= 0; --a1) {
      int a2 = j - a1;
      ComplexField g = (j == 0) ? f : wirtinger(f, a1, a2);
      total += weighted_lp(g, spec.p, spec.region, spec.weight);
    }
  }
  return total;
}

DiniResult dini_norm_detailed(std::span<const double> samples) {
  int m = int(samples.size());
  if (m < 64) throw Error("dini_norm: need at least 64 samples");

  // modulus(t) with t measured in units of the parameter interval [0, 1]:
  // sliding max-min over windows of floor(t (m-1)) + 1 consecutive samples.
  auto modulus = [&](double t) -> double {
    int w = int(std::floor(t * (m - 1) + 1e-12));
    w = std::clamp(w, 0, m - 1);
    if (w == 0) return 0.0;
    std::deque<int> maxq, minq;
    double worst = 0.0;
    for (int i = 0; i < m; ++i) {
      while (!maxq.empty() && samples[maxq.back()] <= samples[i]) maxq.pop_back();
      maxq.push_back(i);
      while (!minq.empty() && samples[minq.back()] >= samples[i]) minq.pop_back();
      minq.push_back(i);
      int lo = i - w;
      while (maxq.front() < lo) maxq.pop_front();
      while (minq.front() < lo) minq.pop_front();
      if (i >= w) worst = std::max(worst, samples[maxq.front()] - samples[minq.front()]);
    }
    return worst;
  };

  // Bottom node at one sample spacing (the smallest t that pairs any two
  // distinct samples); still above the 1/m cutoff floor.
  double cutoff = 1.0 / (m - 1);
  std::vector<double> ts;
  for (double t = 1.0; t > cutoff * (1.0 + 1e-12); t *= 0.5) ts.push_back(t);
  ts.push_back(cutoff);

  std::vector<double> om(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) om[i] = modulus(ts[i]);

  // trapezoid in u = log t: integral of modulus(e^u) du.
  double value = 0.0;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    double du = std::log(ts[i]) - std::log(ts[i + 1]);
    value += 0.5 * du * (om[i] + om[i + 1]);
  }

  DiniResult r;
  r.value = value;
  r.cutoff = cutoff;
  r.modulus_at_cutoff = om.back();
  // Continuing one further decade-squared below the sampling scale with a
  // nondecreasing modulus contributes at most modulus(1/m) * log(m).
  r.tail_bound = om.back() * std::log(double(m));
  return r;
}

double dini_norm(std::span<const double> samples) {
  return dini_norm_detailed(samples).value;
}

double besov_boundary_norm(std::span<const Complex> nodes,
                           std::span<const Complex> values,
                           std::span<const double> ds, double q) {
  std::size_t m = nodes.size();
  if (m < 8 || values.size() != m || ds.size() != m)
    throw Error("besov_boundary_norm: inconsistent boundary arrays");
  if (!(q > 2.0)) throw Error("besov_boundary_norm: q must exceed 2");

  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t l = i + 1; l < m; ++l) {
      double chord = std::abs(nodes[i] - nodes[l]);
      if (chord == 0.0)
        throw DegenerateBoundary("besov_boundary_norm: coincident nodes");
      double quot = std::abs(values[i] - values[l]) / chord;
      acc += 2.0 * std::pow(quot, q) * ds[i] * ds[l];
    }
    // Diagonal cell: the integrand extends continuously to x = y for
    // Lipschitz data; use the symmetric difference quotient at node i.
    std::size_t prev = (i + m - 1) % m, next = (i + 1) % m;
    double chord = std::abs(nodes[next] - nodes[prev]);
    if (chord == 0.0)
      throw DegenerateBoundary("besov_boundary_norm: coincident nodes");
    double quot = std::abs(values[next] - values[prev]) / chord;
    acc += std::pow(quot, q) * ds[i] * ds[i];
  }
  return std::pow(acc, 1.0 / q);
}

double besov_boundary_norm(const DomainSpec& domain,
                           std::span<const Complex> values, double q) {
  BoundaryCurve c = boundary_normal(domain);
  if (values.size() != c.points.size())
    throw Error("besov_boundary_norm: value count does not match node count");
  return besov_boundary_norm(c.points, values, c.ds, q);
}

}  // namespace beltrami
