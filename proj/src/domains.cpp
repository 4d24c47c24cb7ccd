#include "beltrami/domains.hpp"

#include <algorithm>
#include <cmath>

#include "beltrami/norms.hpp"

namespace beltrami {

namespace {
constexpr double kPi = 3.14159265358979323846;

void validate_nodes(int nodes) {
  if (nodes < 16) throw Error("DomainSpec: need at least 16 boundary nodes");
}
}  // namespace

DomainSpec::DomainSpec(Complex center, std::vector<double> cos_coef,
                       std::vector<double> sin_coef, int nodes)
    : center_(center),
      cos_coef_(std::move(cos_coef)),
      sin_coef_(std::move(sin_coef)),
      nodes_(nodes) {
  validate_nodes(nodes_);
  if (cos_coef_.empty()) cos_coef_.push_back(0.0);
  if (int(cos_coef_.size()) > kMaxModes + 1 || int(sin_coef_.size()) > kMaxModes)
    throw Error("DomainSpec: radial profile exceeds the mode budget");
  min_radius_ = 1e300;
  max_radius_ = 0.0;
  // Dense scan; star-shapedness requires r > 0 everywhere.
  for (int i = 0; i < 4096; ++i) {
    double r = radius(2.0 * kPi * i / 4096.0);
    min_radius_ = std::min(min_radius_, r);
    max_radius_ = std::max(max_radius_, r);
  }
  if (!(min_radius_ > 0.0))
    throw Error("DomainSpec: radial profile is not strictly positive");
}

DomainSpec DomainSpec::disk(double radius, Complex center, int nodes) {
  return DomainSpec(center, {radius}, {}, nodes);
}

DomainSpec DomainSpec::ellipse(double a, double b, Complex center, int nodes) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error("DomainSpec: ellipse semi-axes must be positive");
  const int dense = 4096;
  std::vector<double> r(dense);
  for (int i = 0; i < dense; ++i) {
    double th = 2.0 * kPi * i / dense;
    double c = std::cos(th), s = std::sin(th);
    r[i] = a * b / std::sqrt(b * b * c * c + a * a * s * s);
  }
  return from_radial_samples(r, center, nodes);
}

DomainSpec DomainSpec::perturbed_disk(double radius, int mode, double eps,
                                      Complex center, int nodes) {
  if (mode < 1 || mode > kMaxModes) throw Error("DomainSpec: perturbation mode out of range");
  std::vector<double> cos_coef(mode + 1, 0.0);
  cos_coef[0] = radius;
  cos_coef[mode] = radius * eps;
  return DomainSpec(center, std::move(cos_coef), {}, nodes);
}

DomainSpec DomainSpec::from_radial_samples(std::span<const double> r,
                                           Complex center, int nodes) {
  int m = int(r.size());
  if (m < 4 * kMaxModes) throw Error("DomainSpec: too few radial samples");
  std::vector<double> cos_coef(kMaxModes + 1, 0.0), sin_coef(kMaxModes, 0.0);
  for (int i = 0; i < m; ++i) cos_coef[0] += r[i];
  cos_coef[0] /= m;
  for (int k = 1; k <= kMaxModes; ++k) {
    double ac = 0.0, as = 0.0;
    for (int i = 0; i < m; ++i) {
      double th = 2.0 * kPi * i / m;
      ac += r[i] * std::cos(k * th);
      as += r[i] * std::sin(k * th);
    }
    cos_coef[k] = 2.0 * ac / m;
    sin_coef[k - 1] = 2.0 * as / m;
  }
  // Drop the numerically empty tail so serialized specs stay compact.
  int last = kMaxModes;
  while (last > 0 && std::abs(cos_coef[last]) < 1e-14 &&
         std::abs(sin_coef[last - 1]) < 1e-14)
    --last;
  cos_coef.resize(last + 1);
  sin_coef.resize(last);
  return DomainSpec(center, std::move(cos_coef), std::move(sin_coef), nodes);
}

double DomainSpec::radius(double theta) const {
  double r = cos_coef_[0];
  for (std::size_t k = 1; k < cos_coef_.size(); ++k)
    r += cos_coef_[k] * std::cos(double(k) * theta);
  for (std::size_t k = 0; k < sin_coef_.size(); ++k)
    r += sin_coef_[k] * std::sin(double(k + 1) * theta);
  return r;
}

double DomainSpec::radius_derivative(double theta) const {
  double r = 0.0;
  for (std::size_t k = 1; k < cos_coef_.size(); ++k)
    r -= double(k) * cos_coef_[k] * std::sin(double(k) * theta);
  for (std::size_t k = 0; k < sin_coef_.size(); ++k)
    r += double(k + 1) * sin_coef_[k] * std::cos(double(k + 1) * theta);
  return r;
}

Complex DomainSpec::boundary_point(double theta) const {
  return center_ + radius(theta) * std::polar(1.0, theta);
}

Complex DomainSpec::boundary_tangent(double theta) const {
  Complex e = std::polar(1.0, theta);
  return (radius_derivative(theta) + Complex(0.0, 1.0) * radius(theta)) * e;
}

DomainSpec DomainSpec::rotated(double phi) const {
  // r'(theta) = r(theta - phi): standard angle-addition recombination. A
  // rotated mode generally carries both a cosine and a sine part even when
  // the source had only one of them, so both output arrays span the full
  // mode range.
  const std::size_t modes = std::max(cos_coef_.size() - 1, sin_coef_.size());
  std::vector<double> cc(modes + 1, 0.0), ss(modes, 0.0);
  cc[0] = cos_coef_[0];
  for (std::size_t k = 1; k <= modes; ++k) {
    const double a = k < cos_coef_.size() ? cos_coef_[k] : 0.0;
    const double b = k - 1 < sin_coef_.size() ? sin_coef_[k - 1] : 0.0;
    const double c = std::cos(double(k) * phi), s = std::sin(double(k) * phi);
    cc[k] = a * c - b * s;
    ss[k - 1] = a * s + b * c;
  }
  return DomainSpec(center_, std::move(cc), std::move(ss), nodes_);
}

DomainSpec DomainSpec::translated(Complex shift) const {
  return DomainSpec(center_ + shift, cos_coef_, sin_coef_, nodes_);
}

DomainSpec DomainSpec::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw Error("DomainSpec: dilation factor must be positive");
  std::vector<double> cc = cos_coef_, ss = sin_coef_;
  for (auto& c : cc) c *= lambda;
  for (auto& s : ss) s *= lambda;
  return DomainSpec(center_, std::move(cc), std::move(ss), nodes_);
}

nlohmann::ordered_json DomainSpec::to_json() const {
  nlohmann::ordered_json j;
  j["center"] = {center_.real(), center_.imag()};
  j["fourier_coeffs"] = {{"cos", cos_coef_}, {"sin", sin_coef_}};
  j["m"] = nodes_;
  return j;
}

DomainSpec DomainSpec::from_json(const nlohmann::json& j) {
  Complex center(j.at("center").at(0).get<double>(),
                 j.at("center").at(1).get<double>());
  auto cc = j.at("fourier_coeffs").at("cos").get<std::vector<double>>();
  auto ss = j.at("fourier_coeffs").at("sin").get<std::vector<double>>();
  return DomainSpec(center, std::move(cc), std::move(ss), j.at("m").get<int>());
}

BoundaryCurve boundary_normal(const DomainSpec& domain) {
  int m = domain.node_count();
  BoundaryCurve c;
  c.points.resize(m);
  c.normals.resize(m);
  c.ds.resize(m);
  c.tangent_angle.resize(m);
  double dtheta = 2.0 * kPi / m;
  double prev_principal = 0.0;
  for (int i = 0; i < m; ++i) {
    double theta = dtheta * i;
    Complex t = domain.boundary_tangent(theta);
    double speed = std::abs(t);
    if (!(speed > 0.0)) throw DegenerateBoundary("boundary tangent vanishes");
    c.points[i] = domain.boundary_point(theta);
    // Counterclockwise sweep: outward normal is the tangent rotated by -pi/2.
    c.normals[i] = Complex(0.0, -1.0) * (t / speed);
    c.ds[i] = speed * dtheta;
    double angle = std::arg(t);
    if (i == 0) {
      c.tangent_angle[i] = angle;
    } else {
      double delta = angle - prev_principal;
      while (delta > kPi) delta -= 2.0 * kPi;
      while (delta < -kPi) delta += 2.0 * kPi;
      c.tangent_angle[i] = c.tangent_angle[i - 1] + delta;
    }
    prev_principal = angle;
  }
  return c;
}

double DomainMask::area() const {
  double s = 0.0;
  for (double c : coverage) s += c;
  double h = grid->spacing();
  return s * h * h;
}

DomainMask domain_mask(const DomainSpec& domain, const GridPtr& grid) {
  double quarter = 0.25 * grid->side();
  Complex ctr = domain.center();
  double rmax = domain.max_radius();
  if (std::abs(ctr.real()) + rmax > quarter || std::abs(ctr.imag()) + rmax > quarter)
    throw DomainTooLarge("domain escapes the central half of the window");

  // Radius lookup table: the profile is a short Fourier sum, but evaluating
  // it per subcell sample would dominate; linear interpolation on a dense
  // table keeps the rasterization cheap and well below subcell resolution.
  const int table_n = 16384;
  std::vector<double> table(table_n + 1);
  for (int i = 0; i <= table_n; ++i)
    table[i] = domain.radius(2.0 * kPi * i / table_n);
  auto radius_at = [&](double theta) {
    double u = theta / (2.0 * kPi);
    u -= std::floor(u);
    double x = u * table_n;
    int i = int(x);
    double frac = x - i;
    return table[i] * (1.0 - frac) + table[i + 1] * frac;
  };

  double rmin = domain.min_radius();
  int n = grid->n();
  double h = grid->spacing();
  std::vector<double> coverage(grid->cells(), 0.0);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      Complex z = grid->point(j, k);
      double d = std::abs(z - ctr);
      double margin = 0.7072 * h;  // covers the farthest subcell sample
      double cov;
      if (d + margin < rmin) {
        cov = 1.0;
      } else if (d - margin > rmax) {
        cov = 0.0;
      } else {
        int inside = 0;
        for (int u = 0; u < 4; ++u) {
          for (int v = 0; v < 4; ++v) {
            Complex w = z + Complex((u + 0.5) / 4.0 - 0.5, (v + 0.5) / 4.0 - 0.5) * h;
            Complex rel = w - ctr;
            double rr = std::abs(rel);
            if (rr <= radius_at(std::arg(rel))) ++inside;
          }
        }
        cov = inside / 16.0;
      }
      coverage[std::size_t(j) * n + k] = cov;
    }
  }
  return DomainMask{grid, std::move(coverage), domain};
}

double bp_norm(const DomainSpec& domain, double q) {
  BoundaryCurve c = boundary_normal(domain);
  return besov_boundary_norm(c.points, c.normals, c.ds, q);
}

double dini_character(const DomainSpec& domain, int resolution) {
  DomainSpec dense(domain.center(), domain.cos_coefficients(),
                   domain.sin_coefficients(), resolution);
  BoundaryCurve c = boundary_normal(dense);
  return dini_norm(c.tangent_angle);
}

}  // namespace beltrami
