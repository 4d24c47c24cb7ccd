#include "beltrami/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <utility>

#include "beltrami/errors.hpp"
#include "beltrami/norms.hpp"

namespace beltrami {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("config: " + what);
}

void require_range(std::span<const double> xs, double lo, double hi,
                   bool open_ends, const std::string& what) {
  require(!xs.empty(), what + " list must not be empty");
  for (double x : xs) {
    bool ok = open_ends ? (x > lo && x < hi) : (x >= lo && x <= hi);
    require(ok && std::isfinite(x), what);
  }
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void ExperimentConfig::validate() const {
  require(power_of_two(grid_n) && grid_n >= 16,
          "grid_n must be a power of two >= 16");
  require(std::isfinite(window) && window > 0.0, "window must be positive");
  require(family_k >= 0.0 && family_k <= 0.949,
          "family_k must lie in [0, 0.949]: the swept coefficients keep a "
          "uniform ellipticity margin below 0.95");
  require_range(family_targets, 0.0, 64.0, true,
                "family_targets entries must be positive first-order sizes");
  require_range(domain_targets, 0.0, 64.0, true,
                "domain_targets entries must be positive first-order sizes");
  require(bump_radius > 0.0 && bump_radius <= window / 4.0,
          "bump_radius must be positive and at most window/4 so the "
          "coefficient support stays in the central half of the window");
  require_range(critical_r, 1.0, 2.0, true,
                "critical_r exponents must lie in the open interval (1, 2): "
                "the first-order growth law is stated for that range");
  require_range(supercritical_p, 2.0, 1e6, true,
                "supercritical_p exponents must exceed 2: the polynomial "
                "growth law needs a coefficient with better-than-critical "
                "integrability");
  require_range(cacc_q, 2.0, 1e6, true,
                "cacc_q exponents must exceed 2: the first-order cutoff bound "
                "holds for quasiregular maps above the natural exponent");
  require_range(cacc_r, 1.0, 2.0, true,
                "cacc_r exponents must lie in (1, 2): the second-order cutoff "
                "bound fails at 2 and below 1");
  require_range(weight_p, 1.0, 1e6, true,
                "weight_p exponents must exceed 1: Muckenhoupt classes start "
                "above the trivial exponent");
  require_range(besov_q, 2.0, 1e6, true,
                "besov_q exponents must exceed 2: the boundary chord norm "
                "needs a supercritical exponent to control the normal field");
  require(solver_tol > 0.0 && solver_tol < 1.0,
          "solver_tol must lie in (0, 1)");
  require(probes >= 1, "probes must be at least 1");
  require(power_iters >= 0, "power_iters must be nonnegative");
  require(!out_dir.empty(), "out_dir must not be empty");
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  static const std::set<std::string> known = {
      "grid_n",         "window",        "family_k",  "family_targets",
      "domain_targets", "bump_radius",   "critical_r",
      "supercritical_p", "cacc_q",
      "cacc_r",         "weight_p",      "besov_q",   "solver_tol",
      "probes",         "power_iters",   "seed",      "out_dir",
      "parallel"};
  for (const auto& item : j.items())
    if (!known.count(item.key()))
      throw ConfigError("config: unknown key '" + item.key() + "'");

  ExperimentConfig c;
  auto get = [&](const char* key, auto& slot) {
    if (j.contains(key)) slot = j.at(key).get<std::decay_t<decltype(slot)>>();
  };
  get("grid_n", c.grid_n);
  get("window", c.window);
  get("family_k", c.family_k);
  get("family_targets", c.family_targets);
  get("domain_targets", c.domain_targets);
  get("bump_radius", c.bump_radius);
  get("critical_r", c.critical_r);
  get("supercritical_p", c.supercritical_p);
  get("cacc_q", c.cacc_q);
  get("cacc_r", c.cacc_r);
  get("weight_p", c.weight_p);
  get("besov_q", c.besov_q);
  get("solver_tol", c.solver_tol);
  get("probes", c.probes);
  get("power_iters", c.power_iters);
  get("seed", c.seed);
  get("out_dir", c.out_dir);
  get("parallel", c.parallel);
  c.validate();
  return c;
}

nlohmann::ordered_json ExperimentConfig::to_json() const {
  nlohmann::ordered_json j;
  j["grid_n"] = grid_n;
  j["window"] = window;
  j["family_k"] = family_k;
  j["family_targets"] = family_targets;
  j["domain_targets"] = domain_targets;
  j["bump_radius"] = bump_radius;
  j["critical_r"] = critical_r;
  j["supercritical_p"] = supercritical_p;
  j["cacc_q"] = cacc_q;
  j["cacc_r"] = cacc_r;
  j["weight_p"] = weight_p;
  j["besov_q"] = besov_q;
  j["solver_tol"] = solver_tol;
  j["probes"] = probes;
  j["power_iters"] = power_iters;
  j["seed"] = seed;
  j["out_dir"] = out_dir;
  j["parallel"] = parallel;
  return j;
}

bool Report::all_pass() const {
  for (const auto& row : checks)
    if (!row.pass) return false;
  return true;
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["experiment"] = experiment;
  j["pass"] = all_pass();
  j["config"] = config;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : checks) {
    nlohmann::ordered_json r;
    r["name"] = row.name;
    r["value"] = row.value;
    r["bound"] = row.bound;
    r["pass"] = row.pass;
    if (!row.detail.empty()) r["detail"] = row.detail;
    rows.push_back(std::move(r));
  }
  j["checks"] = std::move(rows);
  auto names = nlohmann::ordered_json::array();
  for (const auto& s : series) names.push_back(s.name);
  j["series"] = std::move(names);
  return j;
}

void emit_report(const Report& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);

  const auto json_path = dir / (report.experiment + ".json");
  std::ofstream out(json_path);
  if (!out) throw IoError("cannot open " + json_path.string());
  out << report.to_json().dump(2) << "\n";
  if (!out) throw IoError("short write to " + json_path.string());

  for (const auto& s : report.series) {
    const auto csv_path = dir / (report.experiment + "_" + s.name + ".csv");
    std::ofstream csv(csv_path);
    if (!csv) throw IoError("cannot open " + csv_path.string());
    for (std::size_t i = 0; i < s.columns.size(); ++i)
      csv << (i ? "," : "") << s.columns[i];
    csv << "\n";
    for (const auto& row : s.rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        csv << (i ? "," : "") << format_double(row[i]);
      csv << "\n";
    }
    if (!csv) throw IoError("short write to " + csv_path.string());
  }
}

// --------------------------------------------------------------------------
// Dilatation families

double mollifier_bump(double u) {
  if (u >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u));
}

ComplexField bump_field(const GridPtr& grid, Complex center, double radius) {
  const double r2 = radius * radius;
  return ComplexField::sample(grid, [&](Complex z) {
    return Complex(mollifier_bump(std::norm(z - center) / r2), 0.0);
  });
}

Dilatation bump_dilatation(const GridPtr& grid, double amp, double radius,
                           double omega) {
  if (!(radius > 0.0)) throw ConfigError("bump_dilatation: radius must be positive");
  const double r2 = radius * radius;
  ComplexField mu = ComplexField::sample(grid, [&](Complex z) {
    const double rr = std::norm(z);
    const double envelope = amp * mollifier_bump(rr / r2);
    if (envelope == 0.0) return Complex(0.0);
    return std::polar(envelope, omega * rr);
  });
  return Dilatation::certify(std::move(mu));
}

BumpParams calibrate_bump(const GridPtr& grid, double k, double radius,
                          double target, double* achieved) {
  if (!(target > 0.0))
    throw ConfigError("calibrate_bump: target size must be positive");
  const NormSpec first_order{1, 2.0, nullptr, nullptr};
  auto size_at = [&](double amp, double omega) {
    return sobolev_norm(bump_dilatation(grid, amp, radius, omega).mu,
                        first_order, false);
  };

  const double base = size_at(k, 0.0);
  if (target <= base || k == 0.0) {
    // The norm is exactly linear in the amplitude, so scale down directly.
    BumpParams p{k * target / base, radius, 0.0};
    if (achieved) *achieved = size_at(p.amp, p.omega);
    return p;
  }

  // With env = k * bump(|z/R|^2), the oscillating member has
  //   |d_z mu|^2 = |d_zbar mu|^2 = |d_z env|^2 + omega^2 |z|^2 env^2
  // pointwise, so size(omega) = ||env||_2 + 2 sqrt(B + omega^2 C) with
  // B = ||d_z env||_2^2 and C = || |z| env ||_2^2. Invert that in closed
  // form, then polish against the spectral estimator itself.
  const ComplexField env = bump_dilatation(grid, k, radius, 0.0).mu;
  const double a_term = env.l2_norm();
  const double b_term = std::pow(d_z(env).l2_norm(), 2);
  double c_term = 0.0;
  {
    const auto g = env.grid();
    const int n = g->n();
    const double h2 = g->spacing() * g->spacing();
    for (int j = 0; j < n; ++j)
      for (int kk = 0; kk < n; ++kk)
        c_term += std::norm(g->point(j, kk)) * std::norm(env.at(j, kk)) * h2;
  }
  const double s = 0.5 * (target - a_term);
  double omega = std::sqrt(std::max(0.0, s * s - b_term) / c_term);
  double got = size_at(k, omega);
  for (int it = 0; it < 4 && std::abs(got - target) > 1e-12 * target; ++it) {
    const double slope =
        2.0 * omega * c_term / std::sqrt(b_term + omega * omega * c_term);
    if (!(slope > 0.0)) break;
    omega -= (got - target) / slope;
    if (!(omega > 0.0)) omega = 1e-12;
    got = size_at(k, omega);
  }
  if (std::abs(got - target) > 1e-6 * target) {
    // Underresolved oscillation: the spectral norm departs from the radial
    // identity, so fall back to a plain bisection on the estimator.
    double hi = 1.0;
    while (size_at(k, hi) < target) {
      hi *= 2.0;
      if (hi > 8192.0)
        throw ConfigError(
            "calibrate_bump: target size " + format_double(target) +
            " is unreachable by oscillation at this resolution");
    }
    double lo = hi > 1.0 ? hi / 2.0 : 0.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (size_at(k, mid) < target ? lo : hi) = mid;
    }
    omega = 0.5 * (lo + hi);
    got = size_at(k, omega);
  }
  BumpParams p{k, radius, omega};
  if (achieved) *achieved = got;
  return p;
}

Dilatation calibrated_dilatation(const GridPtr& grid, double k, double radius,
                                 double target, double* achieved) {
  BumpParams p = calibrate_bump(grid, k, radius, target, achieved);
  return bump_dilatation(grid, p.amp, p.radius, p.omega);
}

Dilatation radial_stretch_dilatation(const GridPtr& grid, double distortion) {
  if (!(distortion >= 1.0))
    throw ConfigError("radial_stretch_dilatation: distortion must be >= 1");
  const double c = (distortion - 1.0) / (distortion + 1.0);
  ComplexField mu = ComplexField::sample(grid, [&](Complex z) {
    const double rr = std::norm(z);
    if (rr > 1.0 || rr == 0.0) return Complex(0.0);
    return -c * z / std::conj(z);
  });
  return Dilatation::certify(std::move(mu));
}

}  // namespace beltrami
