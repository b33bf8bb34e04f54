#pragma once

#include <stdexcept>
#include <string>

namespace geophase {

// Common base so callers can catch everything the library throws with one handler.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input matrix fails the hermiticity check.
class NotHermitian : public Error {
 public:
  using Error::Error;
};

// An iterative kernel (eigensolver, exponential) failed to converge.
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

// Scalar function evaluated outside its domain (negative eigenvalue beyond the
// clamp window, invsqrt of a singular matrix, artanh at or beyond 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// principal_arg of a complex number with modulus too small to carry a phase.
class ZeroArgument : public Error {
 public:
  using Error::Error;
};

// Matrix dimensions inconsistent with the manifold layout or with each other.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

// Input fails construction-time validation (non-finite entries, bad manifold
// parameters, weight constraints, unitarity residual too large, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Compact-case radial parameter too close to the chart boundary: the tangent
// norm reaches pi/2 where the chart map blows up.
class ChartOverflow : public Error {
 public:
  using Error::Error;
};

// A linear-fractional action left the chart: the denominator block is singular
// or too ill-conditioned to trust.
class ChartEscape : public Error {
 public:
  using Error::Error;
};

// The two points do not admit the two-point constructions (kernel, geodesic,
// product decomposition): a pair determinant is numerically singular. For the
// compact case this is the cut locus.
class PairInvalid : public Error {
 public:
  using Error::Error;
};

// The lower-right block of a section product is singular, so the Gauss
// decomposition does not exist.
class SingularQ : public Error {
 public:
  using Error::Error;
};

// An upper-left group-element block is singular, so the group cocycle's
// determinant character is undefined there.
class SingularBlock : public Error {
 public:
  using Error::Error;
};

// Malformed JSON payload; the message carries the location of the offense.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace geophase
