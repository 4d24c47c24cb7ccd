#pragma once

// Field dump format: a one-line JSON header {n, L, name} followed by the raw
// samples as little-endian interleaved float64 (re, im) pairs in row-major
// order. Writer and reader round-trip bit-exactly on the same platform.

#include <filesystem>
#include <string>

#include "beltrami/grid.hpp"

namespace beltrami {

void dump_field(const ComplexField& f, const std::string& name,
                const std::filesystem::path& path);

struct FieldDump {
  ComplexField field;
  std::string name;
};

FieldDump load_field(const std::filesystem::path& path);

}  // namespace beltrami
