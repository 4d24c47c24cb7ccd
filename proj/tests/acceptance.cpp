// Release gate: nine numbered checks covering the operator identities, the
// closed-form radial stretch, the borderline logarithmic field, resolvent
// contraction, weight characteristics against a brute-force oracle, the
// weight scaling law, cutoff-inequality stability under refinement, boundary
// chord geometry, and compressed domain solves. Every tolerance is pinned
// here, in code. One verdict line per check; the exit status is the number
// of failing checks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "beltrami/beltrami.hpp"
#include "beltrami/domains.hpp"
#include "beltrami/errors.hpp"
#include "beltrami/field_io.hpp"
#include "beltrami/grid.hpp"
#include "beltrami/harness.hpp"
#include "beltrami/norms.hpp"
#include "beltrami/operators.hpp"
#include "beltrami/rng.hpp"
#include "beltrami/weights.hpp"
#include "oracles.hpp"

using namespace beltrami;

namespace {

int failures = 0;

void verdict(int id, const std::string& name, bool pass,
             const std::string& detail) {
  std::printf("[%s] %d %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

double rel_l2(const ComplexField& got, const ComplexField& want) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    num += std::norm(got[i] - want[i]);
    den += std::norm(want[i]);
  }
  return std::sqrt(num / den);
}

const CheckRow* find_row(const Report& rep, const std::string& name) {
  for (const CheckRow& row : rep.checks)
    if (row.name == name) return &row;
  return nullptr;
}

// Cell averages of |z - z0|^alpha from a 16x16 subcell sample: the standard
// finite lattice representation of an integrable power singularity.
RealField averaged_power(const GridPtr& g, double alpha, Complex z0) {
  const double h = g->spacing();
  return RealField::sample(g, [&](Complex z) {
    double s = 0.0;
    for (int u = 0; u < 16; ++u)
      for (int v = 0; v < 16; ++v) {
        const Complex q = z + Complex((u + 0.5) / 16.0 * h - 0.5 * h,
                                      (v + 0.5) / 16.0 * h - 0.5 * h);
        s += std::pow(std::abs(q - z0), alpha);
      }
    return s / 256.0;
  });
}

// ---------------------------------------------------------------------------
// 1. Operator identities on smooth rapidly decaying fields.

void check_1() {
  const auto t0 = std::chrono::steady_clock::now();
  auto g = PeriodicGrid::make(256, 16.0);

  const testing::GaussianMonomial fields[] = {
      {0, 0, 1.0, Complex(1.0, 0.0)},
      {2, 1, 0.8, Complex(0.9, 0.3)},
      {1, 3, 1.1, Complex(0.4, -1.2)},
  };

  double twine = 0.0, dks = 0.0, iso = 0.0, inv = 0.0;
  for (const auto& gm : fields) {
    const ComplexField fz = testing::sample_dz(g, gm);
    const ComplexField fzb = testing::sample_dzbar(g, gm);
    twine = std::max(twine, rel_l2(beurling(fzb), fz));

    // Derivatives of a decaying field are mean-free up to the spectral tail;
    // remove the remainder exactly so the potential is well posed.
    ComplexField mf = fzb;
    const Complex m = mf.mean();
    for (std::size_t i = 0; i < mf.size(); ++i) mf[i] -= m;

    dks = std::max(dks, rel_l2(d_z(cauchy(mf)), beurling(mf)));
    iso = std::max(iso,
                   std::abs(beurling(mf).l2_norm() - mf.l2_norm()) /
                       mf.l2_norm());
    inv = std::max(inv, rel_l2(d_zbar(cauchy(mf)), mf));
  }

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  const bool pass =
      twine <= 1e-10 && dks <= 1e-10 && iso <= 1e-10 && inv <= 1e-10 &&
      secs < 5.0;
  verdict(1, "operator identities", pass,
          "transform-of-derivative " + fmt(twine) + ", derivative-of-potential " +
              fmt(dks) + ", isometry " + fmt(iso) + ", inversion " + fmt(inv) +
              " (each <= 1e-10); elapsed " + fmt(secs) + " s (< 5)");
}

// ---------------------------------------------------------------------------
// 2. Radial stretch closed form at distortion 2 on a 512^2 lattice.
// 9(a,b). Compressed solve against the global solve on a covering disk.

struct StretchResults {
  double rho_gap = 0.0;   // relative l2 against the closed-form d_zbar
  double jac_gap = 0.0;   // relative l2 against the closed-form Jacobian
  double comp_gap = 0.0;  // compressed vs global on the unit disk
};

StretchResults stretch_block() {
  StretchResults out;
  auto g = PeriodicGrid::make(512, 4.5);
  Dilatation mu = radial_stretch_dilatation(g, 2.0);

  ResolventResult global = resolvent(mu, mu.mu, 1e-10);
  DomainMask cover = domain_mask(DomainSpec::disk(1.03), g);
  ResolventResult comp = resolvent_domain(mu, mu.mu, cover, 1e-10);
  BeltramiSolution sol = principal_solution(mu, 1e-10);

  const int n = g->n();
  double rn = 0.0, rd = 0.0, jn = 0.0, jd = 0.0, cn = 0.0, cd = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const Complex z = g->point(j, k);
      const double r = std::abs(z);
      if (r > 1e-9 && r <= 0.9) {
        const Complex want = -0.25 * (z / std::conj(z)) / std::sqrt(r);
        rn += std::norm(global.x.at(j, k) - want);
        rd += std::norm(want);
      }
      if (r >= 0.1 && r <= 0.9) {
        const double want = 0.5 / r;
        const double d = sol.jac.at(j, k) - want;
        jn += d * d;
        jd += want * want;
      }
      if (r > 0.0 && r <= 1.0) {
        cn += std::norm(global.x.at(j, k) - comp.x.at(j, k));
        cd += std::norm(global.x.at(j, k));
      }
    }
  out.rho_gap = std::sqrt(rn / rd);
  out.jac_gap = std::sqrt(jn / jd);
  out.comp_gap = std::sqrt(cn / cd);
  return out;
}

void check_2(const StretchResults& s) {
  const bool pass = s.rho_gap <= 1e-3 && s.jac_gap <= 1e-3;
  verdict(2, "radial stretch closed form", pass,
          "antiholomorphic-derivative gap " + fmt(s.rho_gap) +
              " on |z| <= 0.9, Jacobian gap " + fmt(s.jac_gap) +
              " on 0.1 <= |z| <= 0.9 (each <= 1e-3); the derivative field has "
              "a |z|^{-1/2} cusp at the origin that uniform sampling resolves "
              "at O(h^{1/2}), so the first gap sits above the pinned bound at "
              "this lattice");
}

// ---------------------------------------------------------------------------
// 3. Borderline logarithmic field: exact on the annulus, second derivatives
// diverge at the critical exponent and stabilize below it.

void check_3(const Report& rep) {
  const CheckRow* exact =
      find_row(rep, "closed-form derivatives satisfy the equation to round-off");
  const CheckRow* spectral = find_row(
      rep,
      "windowed field satisfies the equation spectrally on the annulus "
      "(relative l2)");
  const CheckRow* diverge = find_row(
      rep,
      "second-derivative mass diverges as the inner radius shrinks at the "
      "critical exponent");
  const CheckRow* stable = find_row(
      rep, "second-derivative mass stabilizes below the critical exponent");

  if (!exact || !spectral || !diverge || !stable) {
    verdict(3, "borderline logarithmic field", false,
            "expected rows missing from the counterexample report");
    return;
  }
  const bool pass = exact->value <= 1e-12 && spectral->value <= 1e-4 &&
                    diverge->pass && stable->pass;
  verdict(3, "borderline logarithmic field", pass,
          "closed-form residual " + fmt(exact->value) +
              " (<= 1e-12), spectral residual " + fmt(spectral->value) +
              " (<= 1e-4), mass growth ratio " + fmt(diverge->value) +
              " diverging at the critical exponent, tail share " +
              fmt(stable->value) + " stabilizing below it");
}

// ---------------------------------------------------------------------------
// 4. Resolvent contraction on ten random coefficient/data pairs at k = 0.5.

void check_4() {
  auto g = PeriodicGrid::make(256, 8.0);
  const ComplexField envelope = bump_field(g, 0.0, 1.5);
  Rng rng(42);

  int worst_iters = 0;
  double worst_excess = -std::numeric_limits<double>::infinity();
  bool invariants_ok = true;
  std::string first_violation;

  for (int trial = 0; trial < 10; ++trial) {
    Rng fork = rng.fork(std::uint64_t(trial));
    ComplexField raw = band_limited_random(g, 8, fork);
    raw.hadamard(envelope);
    double mx = raw.max_abs();
    ComplexField scaled = (Complex(0.5 / mx, 0.0)) * std::move(raw);
    Dilatation mu = Dilatation::certify(std::move(scaled));

    ComplexField h = band_limited_random(g, 12, fork);
    ResolventResult res = resolvent(mu, h, 1e-10);
    worst_iters = std::max(worst_iters, res.iterations);
    const double bound = h.l2_norm() / (1.0 - mu.k) + 1e-10;
    worst_excess = std::max(worst_excess, res.x.l2_norm() - bound);

    try {
      BeltramiSolution sol = principal_solution(mu, 1e-10);
      check_solution_invariants(sol);
    } catch (const Error& e) {
      invariants_ok = false;
      if (first_violation.empty()) first_violation = e.what();
    }
  }

  const bool pass = worst_iters <= 36 && worst_excess <= 0.0 && invariants_ok;
  std::string detail = "max iterations " + std::to_string(worst_iters) +
                       " (<= 36), worst geometric-bound excess " +
                       fmt(worst_excess) +
                       " (<= 0), solution invariants on all ten solves " +
                       (invariants_ok ? "hold" : "violated: " + first_violation);
  verdict(4, "resolvent contraction", pass, detail);
}

// ---------------------------------------------------------------------------
// 5. Muckenhoupt characteristic of power weights against the brute-force
// refined-lattice oracle on [-1, 1]^2; exactness and duality.

void check_5() {
  auto g = PeriodicGrid::make(256, 4.0);
  CubeFamily fam = CubeFamily::central(g);

  double worst_oracle_gap = 0.0;
  for (double alpha : {-1.0, 1.0}) {
    // Cell averages of both powers of the singular weight; at p = 2 the
    // dual power is the reciprocal. Handing the estimator exact averages of
    // both sides keeps the comparison free of the pointwise-powering bias
    // at the singular cell.
    RealField w = averaged_power(g, alpha, 0.0);
    RealField dual = averaged_power(g, -alpha, 0.0);
    const double lib = ap_characteristic(w, dual, 2.0, fam).characteristic;
    const double oracle = testing::ap_brute_force(alpha, 2.0, fam, 4);
    worst_oracle_gap =
        std::max(worst_oracle_gap, std::abs(lib - oracle) / oracle);
  }

  RealField c = RealField::constant(g, 0.7);
  const double const_gap =
      std::abs(ap_characteristic(c, 3.0, fam).characteristic - 1.0);

  RealField w = averaged_power(g, 1.0, Complex(0.3, -0.2));
  const double p = 3.0;
  std::vector<double> dual_vals(w.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    dual_vals[i] = std::pow(w[i], -1.0 / (p - 1.0));
  RealField v(g, std::move(dual_vals));
  const double lhs =
      std::pow(ap_characteristic(w, p, fam).characteristic, 1.0 / (p - 1.0));
  const double rhs =
      ap_characteristic(v, p / (p - 1.0), fam).characteristic;
  const double dual_gap = std::abs(lhs - rhs) / rhs;

  const bool pass =
      worst_oracle_gap <= 0.05 && const_gap <= 1e-9 && dual_gap <= 1e-9;
  verdict(5, "weight characteristic vs oracle", pass,
          "power-weight oracle gap " + fmt(worst_oracle_gap) +
              " (<= 0.05), constant-weight gap " + fmt(const_gap) +
              " (<= 1e-9), duality gap " + fmt(dual_gap) + " (<= 1e-9)");
}

// ---------------------------------------------------------------------------
// 6. Weight scaling across the calibrated family with first-order sizes
// {0.25, 1, 4}: at most linear log-characteristic growth in squared size,
// substitution identity within two percent.

void check_6(const Report& rep) {
  const CheckRow* slope = find_row(
      rep,
      "log characteristic of the half-power weight grows with coefficient "
      "size (p = 3)");
  const CheckRow* linear = find_row(
      rep, "log characteristic growth is at most linear in squared size "
           "(p = 3)");

  int cov_rows = 0;
  double worst_cov = 0.0;
  bool cov_pass = true;
  const std::string prefix =
      "change-of-variables identity holds within two percent";
  for (const CheckRow& row : rep.checks)
    if (row.name.rfind(prefix, 0) == 0) {
      ++cov_rows;
      worst_cov = std::max(worst_cov, row.value);
      cov_pass = cov_pass && row.pass;
    }

  if (!slope || !linear || cov_rows < 3) {
    verdict(6, "weight scaling law", false,
            "expected rows missing from the weights report");
    return;
  }
  const bool pass = slope->pass && linear->pass && cov_pass;
  verdict(6, "weight scaling law", pass,
          "fitted log-characteristic slope " + fmt(slope->value) +
              " (> 0; " + slope->detail + "), secant growth ratio " +
              fmt(linear->value) + " (<= " + fmt(linear->bound) +
              "), substitution identity worst deviation " + fmt(worst_cov) +
              " (<= 0.02) over " + std::to_string(cov_rows) + " cube/exponent "
              "pairs");
}

// ---------------------------------------------------------------------------
// 7. Cutoff-inequality ratios finite for every family member, drifting at
// most ten percent between the 256^2 and 512^2 lattices.

void check_7(const Report& rep) {
  const CheckRow* fin1 = find_row(
      rep, "first-order cutoff ratios stay finite across the family "
           "(exponent 4)");
  const CheckRow* drift1 = find_row(
      rep, "first-order cutoff ratio drifts at most ten percent under "
           "refinement (exponent 4)");
  const CheckRow* fin2 = find_row(
      rep, "second-order cutoff ratios stay finite across the family "
           "(exponent 1.5)");
  const CheckRow* drift2 = find_row(
      rep, "second-order cutoff ratio drifts at most ten percent under "
           "refinement (exponent 1.5)");

  if (!fin1 || !drift1 || !fin2 || !drift2) {
    verdict(7, "cutoff inequality stability", false,
            "expected rows missing from the caccioppoli report");
    return;
  }
  const bool pass =
      fin1->pass && fin2->pass && drift1->value <= 0.10 &&
      drift2->value <= 0.10 && drift1->pass && drift2->pass;
  verdict(7, "cutoff inequality stability", pass,
          "first-order drift " + fmt(drift1->value) + ", second-order drift " +
              fmt(drift2->value) + " (each <= 0.10); largest ratios " +
              fmt(fin1->value) + " and " + fmt(fin2->value) + " stay finite");
}

// ---------------------------------------------------------------------------
// 8. Boundary chord geometry: exact disk value, dilation exponent, ellipse
// against refined quadrature.

void check_8() {
  double disk_gap = 0.0;
  for (double q : {2.5, 3.0, 4.0}) {
    const double want = std::pow(4.0 * M_PI * M_PI, 1.0 / q);
    const double got = bp_norm(DomainSpec::disk(1.0), q);
    disk_gap = std::max(disk_gap, std::abs(got - want) / want);
  }

  const double q = 3.0;
  const double b1 = bp_norm(DomainSpec::disk(1.0), q);
  const double b2 = bp_norm(DomainSpec::disk(2.0), q);
  const double measured_exp = std::log(b2 / b1) / std::log(2.0);
  const double exp_gap = std::abs(measured_exp - 2.0 / q);

  const double ell = bp_norm(DomainSpec::ellipse(2.0, 1.0, 0.0, 1024), q);
  const double oracle = testing::ellipse_chord_norm(2.0, 1.0, q, 4096);
  const double ell_gap = std::abs(ell - oracle) / oracle;

  const bool pass = disk_gap <= 1e-6 && exp_gap <= 1e-8 && ell_gap <= 0.01;
  verdict(8, "boundary chord geometry", pass,
          "disk value gap " + fmt(disk_gap) +
              " (<= 1e-6), dilation exponent measured " + fmt(measured_exp) +
              " vs pinned 2/q = " + fmt(2.0 / q) + " (gap " + fmt(exp_gap) +
              ", <= 1e-8; the chord integral is homogeneous of degree 2/q - 1 "
              "in dilation, so the pinned exponent is missed by exactly one), "
              "ellipse quadrature gap " +
              fmt(ell_gap) + " (<= 0.01)");
}

// ---------------------------------------------------------------------------
// 9. Domain compression: compressed equals global on a covering disk, the
// zero coefficient gives ratio exactly one, and the growth-law constant is
// stable across the family.

void check_9(const StretchResults& s, const Report& rep) {
  auto g = PeriodicGrid::make(256, 8.0);
  Dilatation mu0 = Dilatation::certify(ComplexField::zeros(g));
  DomainMask mask = domain_mask(DomainSpec::disk(1.4), g);
  Rng rng(7);
  ComplexField h = band_limited_random(g, 6, rng);
  ResolventResult res = resolvent_domain(mu0, h, mask, 1e-10);
  const double ratio =
      res.x.l2_norm() / apply_mask(h, mask).l2_norm();

  const CheckRow* fitted = find_row(
      rep, "fitted constant of the domain growth law varies at most twofold "
           "across the family");
  if (!fitted) {
    verdict(9, "domain compression", false,
            "expected rows missing from the domains report");
    return;
  }

  const bool pass =
      s.comp_gap <= 1e-3 && ratio == 1.0 && fitted->pass &&
      fitted->value <= 2.0;
  verdict(9, "domain compression", pass,
          "compressed-vs-global gap " + fmt(s.comp_gap) +
              " (<= 1e-3), zero-coefficient amplification " + fmt(ratio) +
              " (exactly 1), fitted-constant variation " + fmt(fitted->value) +
              "x (<= 2x)");
}

}  // namespace

int main() {
  std::printf("acceptance checks (beltrami laboratory)\n");

  check_1();

  const StretchResults stretch = stretch_block();
  check_2(stretch);

  {
    ExperimentConfig c;
    c.validate();
    check_3(run_counterexample(c));
  }

  check_4();
  check_5();

  {
    ExperimentConfig c;
    c.family_targets = {0.25, 1.0, 4.0};
    c.validate();
    check_6(run_weight_scaling(c));
  }

  {
    ExperimentConfig c;
    c.validate();
    check_7(run_caccioppoli(c));
  }

  check_8();

  {
    ExperimentConfig c;
    c.validate();
    check_9(stretch, run_domain_suite(c));
  }

  std::printf("%d/9 checks pass\n", 9 - failures);
  return failures;
}
