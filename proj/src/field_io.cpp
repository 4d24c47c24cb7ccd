// Dump reader/writer for complex fields and directory serialization of
// solved Beltrami systems (field dumps plus a JSON manifest).

#include "beltrami/field_io.hpp"

#include <cstring>
#include <fstream>

#include "beltrami/beltrami.hpp"
#include "beltrami/errors.hpp"

#include "json.hpp"

namespace beltrami {

namespace {

// The format commits to little-endian payloads; refuse to write garbage on
// exotic hosts instead of producing unreadable files.
void require_little_endian() {
  const std::uint16_t probe = 1;
  unsigned char b;
  std::memcpy(&b, &probe, 1);
  if (b != 1) throw IoError("field dumps require a little-endian host");
}

}  // namespace

void dump_field(const ComplexField& f, const std::string& name,
                const std::filesystem::path& path) {
  require_little_endian();
  if (!f.grid()) throw IoError("cannot dump an empty field");

  nlohmann::ordered_json header;
  header["n"] = f.grid()->n();
  header["L"] = f.grid()->side();
  header["name"] = name;

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << header.dump() << '\n';
  static_assert(sizeof(Complex) == 2 * sizeof(double));
  out.write(reinterpret_cast<const char*>(f.values().data()),
            std::streamsize(f.size() * sizeof(Complex)));
  if (!out) throw IoError("short write: " + path.string());
}

FieldDump load_field(const std::filesystem::path& path) {
  require_little_endian();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw IoError("missing header line: " + path.string());
  nlohmann::json header = nlohmann::json::parse(line, nullptr, false);
  if (header.is_discarded() || !header.contains("n") || !header.contains("L"))
    throw IoError("malformed header: " + path.string());

  const int n = header["n"].get<int>();
  const double side = header["L"].get<double>();
  GridPtr grid = PeriodicGrid::make(n, side);

  std::vector<Complex> values(grid->cells());
  in.read(reinterpret_cast<char*>(values.data()),
          std::streamsize(values.size() * sizeof(Complex)));
  if (std::size_t(in.gcount()) != values.size() * sizeof(Complex))
    throw IoError("truncated payload: " + path.string());

  FieldDump dump;
  dump.field = ComplexField(std::move(grid), std::move(values));
  dump.name = header.value("name", "");
  return dump;
}

void save_solution(const BeltramiSolution& sol, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory: " + dir.string());

  dump_field(sol.mu.mu, "mu", dir / "mu.field");
  dump_field(sol.rho, "rho", dir / "rho.field");
  dump_field(sol.dzf, "dzf", dir / "dzf.field");
  dump_field(sol.sigma, "sigma", dir / "sigma.field");
  dump_field(sol.potential, "potential", dir / "potential.field");

  nlohmann::ordered_json manifest;
  manifest["k"] = sol.mu.k;
  manifest["K"] = sol.mu.distortion;
  manifest["tol"] = sol.tol;
  manifest["residual"] = sol.residual;
  manifest["iterations"] = sol.iterations;

  std::ofstream out(dir / "manifest.json", std::ios::trunc);
  if (!out) throw IoError("cannot write manifest in " + dir.string());
  out << manifest.dump(2) << '\n';
}

BeltramiSolution load_solution(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw IoError("missing manifest in " + dir.string());
  nlohmann::json manifest = nlohmann::json::parse(in, nullptr, false);
  if (manifest.is_discarded()) throw IoError("malformed manifest in " + dir.string());

  BeltramiSolution sol;
  sol.mu = Dilatation::certify(load_field(dir / "mu.field").field);
  sol.rho = load_field(dir / "rho.field").field;
  sol.dzf = load_field(dir / "dzf.field").field;
  sol.sigma = load_field(dir / "sigma.field").field;
  sol.potential = load_field(dir / "potential.field").field;
  check_compatible(sol.mu.mu.grid(), sol.rho.grid());
  check_compatible(sol.mu.mu.grid(), sol.dzf.grid());
  check_compatible(sol.mu.mu.grid(), sol.sigma.grid());
  check_compatible(sol.mu.mu.grid(), sol.potential.grid());

  sol.shear = sol.rho.mean();
  sol.jac = RealField::zeros(sol.rho.grid());
  for (std::size_t i = 0; i < sol.jac.size(); ++i)
    sol.jac[i] = std::norm(sol.dzf[i]) - std::norm(sol.rho[i]);

  sol.tol = manifest.value("tol", 1e-10);
  sol.residual = manifest.value("residual", 0.0);
  sol.iterations = manifest.value("iterations", 0);
  return sol;
}

}  // namespace beltrami
