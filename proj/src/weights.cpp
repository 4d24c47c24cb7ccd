// Cube-family scans for Muckenhoupt / reverse-Holder characteristics and the
// exponential (Moser-type) certificate, plus quadrature checks of the
// Jacobian area-distortion and change-of-variables identities.

#include "beltrami/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "beltrami/errors.hpp"
#include "beltrami/norms.hpp"

namespace beltrami {

namespace {

bool power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

// Prefix table over the base window: row-major (bc + 1)^2 with a zero fringe,
// so any aligned rectangle sum is four lookups.
struct PrefixTable {
  int bc;
  std::vector<double> s;

  explicit PrefixTable(int base_cells) : bc(base_cells), s(std::size_t(bc + 1) * (bc + 1), 0.0) {}

  double& at(int x, int y) { return s[std::size_t(x) * (bc + 1) + y]; }
  double at(int x, int y) const { return s[std::size_t(x) * (bc + 1) + y]; }

  void build() {
    for (int x = 1; x <= bc; ++x)
      for (int y = 1; y <= bc; ++y)
        at(x, y) += at(x - 1, y) + at(x, y - 1) - at(x - 1, y - 1);
  }

  // Sum over local cells [x0, x0+c) x [y0, y0+c).
  double box(int x0, int y0, int c) const {
    return at(x0 + c, y0 + c) - at(x0, y0 + c) - at(x0 + c, y0) + at(x0, y0);
  }
};

// Shared scan: track the sup of a per-cube functional and per-level stats.
template <typename PerCube>
ApReport scan_family(const CubeFamily& fam, double exponent, PerCube per_cube) {
  const PeriodicGrid& g = *fam.grid();
  ApReport rep;
  rep.exponent = exponent;
  rep.cube_count = static_cast<int>(fam.cubes().size());
  rep.characteristic = 0.0;

  const Cube* best = nullptr;
  for (const Cube& q : fam.cubes()) {
    const double val = per_cube(q);
    if (val > rep.characteristic) {
      rep.characteristic = val;
      best = &q;
    }
    const double side = q.side(g);
    auto lvl = std::find_if(rep.levels.begin(), rep.levels.end(),
                            [&](const LevelStat& l) { return l.side == side; });
    if (lvl == rep.levels.end())
      rep.levels.push_back({side, val});
    else
      lvl->characteristic = std::max(lvl->characteristic, val);
  }
  if (best) {
    rep.extremal_corner = best->corner(g);
    rep.extremal_side = best->side(g);
  }
  return rep;
}

void require_positive_on_base(const RealField& w, const CubeFamily& fam) {
  for (int j = 0; j < fam.base_cells(); ++j)
    for (int l = 0; l < fam.base_cells(); ++l) {
      const double v = w.at(fam.base_j0() + j, fam.base_l0() + l);
      if (!(v > 0.0) || !std::isfinite(v))
        throw NonPositiveWeight("weight must be strictly positive and finite on the base window");
    }
}

}  // namespace

CubeFamily CubeFamily::make(const GridPtr& grid, int j0, int l0, int cells) {
  if (!grid) throw GridMismatch("cube family needs a grid");
  if (!power_of_two(cells) || cells < 4)
    throw ConfigError("cube family base side must be a power of two >= 4 cells");
  if (j0 < 0 || l0 < 0 || j0 + cells > grid->n() || l0 + cells > grid->n())
    throw ConfigError("cube family base window escapes the grid");

  CubeFamily fam;
  fam.grid_ = grid;
  fam.j0_ = j0;
  fam.l0_ = l0;
  fam.cells_ = cells;

  for (int side = cells; side >= 4; side /= 2) {
    ++fam.levels_;
    const int shifts[3] = {0, static_cast<int>(std::lround(side / 3.0)),
                           static_cast<int>(std::lround(2.0 * side / 3.0))};
    for (int si = 0; si < 3; ++si) {
      const int d = shifts[si];
      if (si > 0 && d == shifts[si - 1]) continue;
      for (int x = j0 + d; x + side <= j0 + cells; x += side)
        for (int y = l0 + d; y + side <= l0 + cells; y += side)
          fam.cubes_.push_back({x, y, side});
    }
  }
  if (fam.cubes_.empty())
    throw ConfigError("cube family is empty; base window too small");
  return fam;
}

CubeFamily CubeFamily::central(const GridPtr& grid) {
  const int n = grid->n();
  return make(grid, n / 4, n / 4, n / 2);
}

nlohmann::ordered_json ApReport::to_json() const {
  nlohmann::ordered_json j;
  j["characteristic"] = characteristic;
  j["exponent"] = exponent;
  j["extremal_cube"] = {{"corner_re", extremal_corner.real()},
                        {"corner_im", extremal_corner.imag()},
                        {"side", extremal_side}};
  j["cube_count"] = cube_count;
  auto& arr = j["levels"] = nlohmann::ordered_json::array();
  for (const LevelStat& l : levels)
    arr.push_back({{"side", l.side}, {"characteristic", l.characteristic}});
  return j;
}

ApReport ap_characteristic(const RealField& w, double p, const CubeFamily& fam) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw ConfigError("A_p characteristic needs finite p > 1");
  check_compatible(w.grid(), fam.grid());
  require_positive_on_base(w, fam);

  const int bc = fam.base_cells();
  PrefixTable tw(bc), tdual(bc);
  for (int x = 0; x < bc; ++x)
    for (int y = 0; y < bc; ++y) {
      const double v = w.at(fam.base_j0() + x, fam.base_l0() + y);
      tw.at(x + 1, y + 1) = v;
      tdual.at(x + 1, y + 1) = std::pow(v, -1.0 / (p - 1.0));
    }
  tw.build();
  tdual.build();

  return scan_family(fam, p, [&](const Cube& q) {
    const int x0 = q.j0 - fam.base_j0(), y0 = q.l0 - fam.base_l0();
    const double area = double(q.cells) * q.cells;
    const double avg = tw.box(x0, y0, q.cells) / area;
    const double avg_dual = tdual.box(x0, y0, q.cells) / area;
    return avg * std::pow(avg_dual, p - 1.0);
  });
}

ApReport ap_characteristic(const RealField& w, const RealField& dual_power,
                           double p, const CubeFamily& fam) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw ConfigError("A_p characteristic needs finite p > 1");
  check_compatible(w.grid(), fam.grid());
  check_compatible(dual_power.grid(), fam.grid());
  require_positive_on_base(w, fam);
  require_positive_on_base(dual_power, fam);

  const int bc = fam.base_cells();
  PrefixTable tw(bc), tdual(bc);
  for (int x = 0; x < bc; ++x)
    for (int y = 0; y < bc; ++y) {
      tw.at(x + 1, y + 1) = w.at(fam.base_j0() + x, fam.base_l0() + y);
      tdual.at(x + 1, y + 1) =
          dual_power.at(fam.base_j0() + x, fam.base_l0() + y);
    }
  tw.build();
  tdual.build();

  return scan_family(fam, p, [&](const Cube& q) {
    const int x0 = q.j0 - fam.base_j0(), y0 = q.l0 - fam.base_l0();
    const double area = double(q.cells) * q.cells;
    const double avg = tw.box(x0, y0, q.cells) / area;
    const double avg_dual = tdual.box(x0, y0, q.cells) / area;
    return avg * std::pow(avg_dual, p - 1.0);
  });
}

ApReport rh_characteristic(const RealField& w, double s, const CubeFamily& fam) {
  if (!(s > 1.0) || !std::isfinite(s))
    throw ConfigError("reverse-Holder characteristic needs finite s > 1");
  check_compatible(w.grid(), fam.grid());
  require_positive_on_base(w, fam);

  const int bc = fam.base_cells();
  PrefixTable tw(bc), tpow(bc);
  for (int x = 0; x < bc; ++x)
    for (int y = 0; y < bc; ++y) {
      const double v = w.at(fam.base_j0() + x, fam.base_l0() + y);
      tw.at(x + 1, y + 1) = v;
      tpow.at(x + 1, y + 1) = std::pow(v, s);
    }
  tw.build();
  tpow.build();

  return scan_family(fam, s, [&](const Cube& q) {
    const int x0 = q.j0 - fam.base_j0(), y0 = q.l0 - fam.base_l0();
    const double area = double(q.cells) * q.cells;
    const double avg = tw.box(x0, y0, q.cells) / area;
    const double avg_pow = tpow.box(x0, y0, q.cells) / area;
    return std::pow(avg_pow, 1.0 / s) / avg;
  });
}

MoserCertificate moser_certificate(const ComplexField& sigma, double a, double p,
                                   const CubeFamily& fam) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw ConfigError("certificate needs finite p > 1");
  check_compatible(sigma.grid(), fam.grid());

  MoserCertificate cert;
  {
    NormSpec first_order;
    first_order.order = 1;
    first_order.p = 2.0;
    cert.dsigma_l2 = sobolev_norm(sigma, first_order, /*homogeneous=*/true);
  }

  const int bc = fam.base_cells();
  // Mean-centering Re sigma on the base window changes nothing (the
  // functional is scale invariant) but keeps the exponentials conditioned.
  std::vector<double> rc(std::size_t(bc) * bc);
  double mean = 0.0;
  for (int x = 0; x < bc; ++x)
    for (int y = 0; y < bc; ++y) {
      const double v = sigma.at(fam.base_j0() + x, fam.base_l0() + y).real();
      if (!std::isfinite(v)) throw NonPositiveWeight("sigma has non-finite real part");
      rc[std::size_t(x) * bc + y] = v;
      mean += v;
    }
  mean /= double(bc) * bc;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double& v : rc) {
    v -= mean;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  const double dual = -a / (p - 1.0);
  const double stretch = std::max(std::abs(a), std::abs(dual));

  if (stretch * (hi - lo) <= 30.0) {
    PrefixTable t1(bc), t2(bc);
    for (int x = 0; x < bc; ++x)
      for (int y = 0; y < bc; ++y) {
        const double v = rc[std::size_t(x) * bc + y];
        t1.at(x + 1, y + 1) = std::exp(a * v);
        t2.at(x + 1, y + 1) = std::exp(dual * v);
      }
    t1.build();
    t2.build();
    ApReport rep = scan_family(fam, p, [&](const Cube& q) {
      const int x0 = q.j0 - fam.base_j0(), y0 = q.l0 - fam.base_l0();
      const double area = double(q.cells) * q.cells;
      return (t1.box(x0, y0, q.cells) / area) *
             std::pow(t2.box(x0, y0, q.cells) / area, p - 1.0);
    });
    cert.lhs = rep.characteristic;
    return cert;
  }

  // Log-sum-exp path: per cube, log<e^{a rc}> = M + log mean e^{a rc - M}.
  double best_log = -std::numeric_limits<double>::infinity();
  for (const Cube& q : fam.cubes()) {
    const int x0 = q.j0 - fam.base_j0(), y0 = q.l0 - fam.base_l0();
    double qlo = std::numeric_limits<double>::infinity(), qhi = -qlo;
    for (int x = x0; x < x0 + q.cells; ++x)
      for (int y = y0; y < y0 + q.cells; ++y) {
        const double v = rc[std::size_t(x) * bc + y];
        qlo = std::min(qlo, v);
        qhi = std::max(qhi, v);
      }
    const double m1 = std::max(a * qlo, a * qhi);
    const double m2 = std::max(dual * qlo, dual * qhi);
    double s1 = 0.0, s2 = 0.0;
    for (int x = x0; x < x0 + q.cells; ++x)
      for (int y = y0; y < y0 + q.cells; ++y) {
        const double v = rc[std::size_t(x) * bc + y];
        s1 += std::exp(a * v - m1);
        s2 += std::exp(dual * v - m2);
      }
    const double area = double(q.cells) * q.cells;
    const double log_val = (m1 + std::log(s1 / area)) +
                           (p - 1.0) * (m2 + std::log(s2 / area));
    best_log = std::max(best_log, log_val);
  }
  if (best_log > 700.0)
    throw OverflowError("exponential certificate exceeds double range: log value " +
                        std::to_string(best_log));
  cert.lhs = std::exp(best_log);
  return cert;
}

// ---------------------------------------------------------------------------
// Jacobian integral checks

namespace {

double overlap_1d(double lo, double hi, double a, double b) {
  return std::max(0.0, std::min(hi, b) - std::max(lo, a));
}

std::vector<Complex> cube_boundary_targets(const ImageCube& Q, int per_edge) {
  std::vector<Complex> t;
  t.reserve(std::size_t(per_edge) * 4);
  const double s = Q.side;
  for (int i = 0; i < per_edge; ++i) {
    const double u = s * i / per_edge;
    t.push_back(Q.corner + Complex(u, 0.0));
    t.push_back(Q.corner + Complex(s, u));
    t.push_back(Q.corner + Complex(s - u, s));
    t.push_back(Q.corner + Complex(0.0, s - u));
  }
  return t;
}

}  // namespace

AreaDistortionResult area_distortion_check(const BeltramiSolution& sol, double t,
                                           const ImageCube& Q) {
  const std::vector<Complex> pre = invert_map(sol, cube_boundary_targets(Q, 64));
  double xmin = pre[0].real(), xmax = xmin, ymin = pre[0].imag(), ymax = ymin;
  for (const Complex& z : pre) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  }

  const PeriodicGrid& g = *sol.jac.grid();
  const double h = g.spacing();
  double i_jac = 0.0, i_pow = 0.0;
  for (int j = 0; j < g.n(); ++j) {
    const double cx = g.coord(j);
    const double ox = overlap_1d(cx - 0.5 * h, cx + 0.5 * h, xmin, xmax);
    if (ox == 0.0) continue;
    for (int l = 0; l < g.n(); ++l) {
      const double cy = g.coord(l);
      const double oy = overlap_1d(cy - 0.5 * h, cy + 0.5 * h, ymin, ymax);
      if (oy == 0.0) continue;
      const double wgt = ox * oy;
      const double jac = sol.jac.at(j, l);
      i_jac += wgt * jac;
      i_pow += wgt * std::pow(jac, 1.0 - t);
    }
  }

  AreaDistortionResult res;
  res.preimage_corner = {xmin, ymin};
  res.preimage_width = xmax - xmin;
  res.preimage_height = ymax - ymin;
  const double area_p = res.preimage_width * res.preimage_height;
  res.lhs = std::pow(area_p, -t) * std::pow(i_jac, t - 1.0) * i_pow;

  NormSpec first_order;
  first_order.order = 1;
  first_order.p = 2.0;
  const double gnorm = sobolev_norm(sol.sigma, first_order, /*homogeneous=*/true);
  const double g2 = gnorm * gnorm;
  const double omt = 1.0 - t;
  if (omt > 1.0) {
    res.rhs = std::exp(omt * omt * g2);
    res.case_label = "exp((1-t)^2 G^2), 1-t > 1";
  } else if (omt >= 0.0) {
    res.rhs = 1.0;
    res.case_label = "1, 0 <= 1-t <= 1";
  } else {
    res.rhs = std::exp(t * (t - 1.0) * g2);
    res.case_label = "exp(t(t-1) G^2), 1-t < 0";
  }
  res.ratio = res.lhs / res.rhs;
  return res;
}

ChangeOfVariablesResult change_of_variables_check(const BeltramiSolution& sol,
                                                  double t, const ImageCube& Q) {
  MapEvaluator ev(sol);

  // Left side: midpoint lattice on Q itself, preimages by Newton.
  const int m = 64;
  const double step = Q.side / m;
  std::vector<Complex> targets;
  targets.reserve(std::size_t(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      targets.push_back(Q.corner + Complex((i + 0.5) * step, (j + 0.5) * step));
  const std::vector<Complex> pre = invert_map(sol, targets);
  double lhs = 0.0;
  for (const Complex& z : pre) lhs += std::pow(ev.jacobian(z), -t) * step * step;

  // Right side: fine midpoint lattice over the preimage bounding box with a
  // membership test through the forward map.
  const std::vector<Complex> ring = invert_map(sol, cube_boundary_targets(Q, 64));
  double xmin = ring[0].real(), xmax = xmin, ymin = ring[0].imag(), ymax = ymin;
  for (const Complex& z : ring) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  }
  const double h = sol.jac.grid()->spacing();
  const double margin = 2.0 * h;
  xmin -= margin; xmax += margin; ymin -= margin; ymax += margin;

  const double want = h / 3.0;
  const int mx = std::min(2048, std::max(16, int(std::ceil((xmax - xmin) / want))));
  const int my = std::min(2048, std::max(16, int(std::ceil((ymax - ymin) / want))));
  const double sx = (xmax - xmin) / mx, sy = (ymax - ymin) / my;
  double rhs = 0.0;
  for (int i = 0; i < mx; ++i)
    for (int j = 0; j < my; ++j) {
      const Complex z{xmin + (i + 0.5) * sx, ymin + (j + 0.5) * sy};
      const Complex w = ev.map(z);
      if (w.real() < Q.corner.real() || w.real() >= Q.corner.real() + Q.side ||
          w.imag() < Q.corner.imag() || w.imag() >= Q.corner.imag() + Q.side)
        continue;
      rhs += std::pow(ev.jacobian(z), 1.0 - t) * sx * sy;
    }

  return {lhs, rhs, lhs / rhs};
}

}  // namespace beltrami
