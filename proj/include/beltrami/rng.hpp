#pragma once

#include <complex>
#include <cstdint>

namespace beltrami {

// Small deterministic generator (splitmix64 core). The standard <random>
// distributions are implementation-defined, which would break byte-identical
// reports across toolchains, so experiments draw through this instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  std::complex<double> complex_in_disk() {
    for (;;) {
      double x = uniform(-1.0, 1.0);
      double y = uniform(-1.0, 1.0);
      if (x * x + y * y <= 1.0) return {x, y};
    }
  }

  // Independent stream for a family member / probe index; keeps parallel and
  // serial execution byte-identical.
  Rng fork(std::uint64_t stream) const {
    Rng child(state_ ^ (0x587c5f6df4a7c15bULL * (stream + 1)));
    child.next();
    return child;
  }

 private:
  std::uint64_t state_;
};

}  // namespace beltrami
