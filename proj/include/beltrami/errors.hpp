#pragma once

#include <stdexcept>
#include <string>

namespace beltrami {

// Base class for every error the library throws on purpose. Anything else
// escaping (std::bad_alloc, logic errors from misuse of the C API wrappers)
// is a genuine bug, not a diagnosable input problem.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two fields or a field and a mask live on different sampling lattices.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

// Input to the anti-derivative path carries a mean the periodic problem
// cannot absorb; usually data escaping the compact-support convention.
class NonZeroMean : public Error {
 public:
  using Error::Error;
};

// Fixed-point iteration exhausted its certified iteration budget.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

// A coefficient or datum is nonzero where the enclosing mask or window
// margin requires it to vanish.
class SupportViolation : public Error {
 public:
  using Error::Error;
};

// Dilatation magnitude reaches or exceeds 1 somewhere on the grid.
class EllipticityViolation : public Error {
 public:
  using Error::Error;
};

// The derivative field winds around zero along a grid edge, so no
// branch-consistent logarithm exists at this resolution.
class LogBranchFailure : public Error {
 public:
  using Error::Error;
};

// Damped Newton inversion failed to locate a preimage.
class NewtonStall : public Error {
 public:
  using Error::Error;
};

// A weight must be strictly positive and finite on the scanned region.
class NonPositiveWeight : public Error {
 public:
  using Error::Error;
};

// An exponential functional exceeds double range even in log space.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Boundary nodes coincide, so chord quotients are undefined.
class DegenerateBoundary : public Error {
 public:
  using Error::Error;
};

// A domain does not fit in the central half of the periodic window.
class DomainTooLarge : public Error {
 public:
  using Error::Error;
};

// Experiment configuration violates a validity range.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// File format or filesystem failure in the dump reader/writer.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace beltrami
