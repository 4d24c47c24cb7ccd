// Norm estimators: weighted Sobolev sums against symbolic derivatives and
// closed-form quadrature, the Dini modulus integral, and the chord norm with
// its circle closed form and the independently parameterized ellipse oracle.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "beltrami/domains.hpp"
#include "beltrami/errors.hpp"
#include "beltrami/norms.hpp"
#include "oracles.hpp"

using namespace beltrami;
using beltrami::testing::GaussianMonomial;

TEST_CASE("sobolev norm of a constant") {
  auto g = PeriodicGrid::make(64, 8.0);
  ComplexField c = ComplexField::constant(g, Complex(3.0, -4.0));
  // Order zero: |c| times area^{1/p}.
  for (double p : {2.0, 3.0, 4.5}) {
    NormSpec spec{0, p, nullptr, nullptr};
    CHECK(sobolev_norm(c, spec) ==
          doctest::Approx(5.0 * std::pow(64.0, 1.0 / p)).epsilon(1e-12));
  }
  // First derivatives of a constant vanish, so order one adds nothing.
  NormSpec spec1{1, 2.0, nullptr, nullptr};
  CHECK(sobolev_norm(c, spec1) == doctest::Approx(5.0 * 8.0).epsilon(1e-10));
  CHECK(sobolev_norm(c, spec1, true) < 1e-10);
}

TEST_CASE("sobolev norm against direct quadrature of symbolic derivatives") {
  auto g = PeriodicGrid::make(128, 12.0);
  GaussianMonomial gm{1, 1, 1.0, Complex(0.9, 0.4)};
  ComplexField f = testing::sample_value(g, gm);

  const double p = 3.0;
  const double hh = g->spacing() * g->spacing();
  auto lp = [&](const ComplexField& v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
      acc += std::pow(std::abs(v[i]), p) * hh;
    return std::pow(acc, 1.0 / p);
  };
  const double want =
      lp(f) + lp(testing::sample_dz(g, gm)) + lp(testing::sample_dzbar(g, gm));

  NormSpec spec{1, p, nullptr, nullptr};
  CHECK(sobolev_norm(f, spec) == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("weight and region slots") {
  auto g = PeriodicGrid::make(64, 8.0);
  ComplexField f = testing::sample_value(g, {1, 0, 1.0, Complex(1.0, 0.0)});

  RealField w4 = RealField::constant(g, 4.0);
  NormSpec plain{1, 2.0, nullptr, nullptr};
  NormSpec weighted{1, 2.0, nullptr, &w4};
  // The weight multiplies |g|^p inside the integral: a constant 4 doubles
  // every L2 block.
  CHECK(sobolev_norm(f, weighted) ==
        doctest::Approx(2.0 * sobolev_norm(f, plain)).epsilon(1e-12));

  DomainMask disk = domain_mask(DomainSpec::disk(1.0), g);
  NormSpec region{0, 2.0, &disk, nullptr};
  ComplexField one = ComplexField::constant(g, Complex(1.0, 0.0));
  CHECK(sobolev_norm(one, region) ==
        doctest::Approx(std::sqrt(disk.area())).epsilon(1e-12));
  CHECK(sobolev_norm(f, region) <= sobolev_norm(f, plain));

  RealField bad = RealField::zeros(g);
  NormSpec broken{0, 2.0, nullptr, &bad};
  CHECK_THROWS_AS(sobolev_norm(f, broken), NonPositiveWeight);
}

TEST_CASE("dini modulus integral") {
  const int m = 4096;
  std::vector<double> lin(m), con(m), sqr(m);
  for (int i = 0; i < m; ++i) {
    const double t = double(i) / (m - 1);
    lin[std::size_t(i)] = t;
    con[std::size_t(i)] = 0.7;
    sqr[std::size_t(i)] = std::sqrt(t);
  }

  CHECK(dini_norm(con) == doctest::Approx(0.0));

  // For f(t) = t^beta the integral is (1 - cutoff^beta)/beta; dyadic
  // trapezoid quadrature in log t overshoots a convex integrand by a few
  // percent, which is the advertised accuracy of the estimator.
  DiniResult lr = dini_norm_detailed(lin);
  CHECK(lr.value == doctest::Approx(1.0).epsilon(0.06));
  CHECK(lr.cutoff == doctest::Approx(1.0 / (m - 1)));
  CHECK(lr.modulus_at_cutoff == doctest::Approx(lr.cutoff).epsilon(1e-9));
  CHECK(lr.tail_bound < 0.01);

  CHECK(dini_norm(sqr) == doctest::Approx(2.0).epsilon(0.08));

  std::vector<double> tiny(32, 0.0);
  CHECK_THROWS_AS(dini_norm(tiny), Error);
}

TEST_CASE("chord norm closed form on the circle") {
  // Every chord quotient of the outward normal of a circle of radius R
  // equals 1/R, including the diagonal limit, so the norm is exactly
  // ((1/R)^q (2 pi R)^2)^{1/q} at any node count.
  for (double q : {2.5, 3.0, 5.0}) {
    for (double R : {1.0, 2.0}) {
      const double want =
          std::pow(4.0 * 3.14159265358979323846 * 3.14159265358979323846, 1.0 / q) *
          std::pow(R, 2.0 / q - 1.0);
      CHECK(bp_norm(DomainSpec::disk(R), q) ==
            doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("chord norm against the trigonometric ellipse oracle") {
  const double q = 3.0;
  const double lib = bp_norm(DomainSpec::ellipse(2.0, 1.0), q);
  const double oracle = testing::ellipse_chord_norm(2.0, 1.0, q, 4096);
  CHECK(std::abs(lib - oracle) / oracle < 0.01);
}

TEST_CASE("chord norm input validation") {
  BoundaryCurve c = boundary_normal(DomainSpec::disk(1.0));
  CHECK_THROWS_AS(besov_boundary_norm(c.points, c.normals, c.ds, 2.0), Error);

  std::vector<Complex> twice = c.points;
  twice[3] = twice[2];  // coincident nodes
  CHECK_THROWS_AS(besov_boundary_norm(twice, c.normals, c.ds, 3.0),
                  DegenerateBoundary);

  std::vector<Complex> short_vals(c.points.size() - 1);
  CHECK_THROWS_AS(
      besov_boundary_norm(c.points,
                          std::span<const Complex>(short_vals), c.ds, 3.0),
      Error);

  // The DomainSpec overload must agree with the explicit-arrays form.
  const double direct = besov_boundary_norm(c.points, c.normals, c.ds, 3.0);
  const double wrapped =
      besov_boundary_norm(DomainSpec::disk(1.0), c.normals, 3.0);
  CHECK(direct == doctest::Approx(wrapped).epsilon(1e-14));
}
