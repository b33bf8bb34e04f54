#pragma once

#include <complex>

#include <Eigen/Dense>

#include "geophase/errors.hpp"

namespace geophase {

using complexd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

namespace matfun {

// Spectral decomposition of a hermitian matrix: H = V diag(lambda) V^+ with
// eigenvalues ascending and V unitary.
struct HermitianSpectrum {
  RVector eigenvalues;
  CMatrix eigenvectors;
};

// Scalar spectral functions applied through the eigenvalues. Every tag is a
// function of y = sqrt(lambda), so the argument matrix must be positive
// semidefinite (a small negative clamp window absorbs roundoff):
//   Sqrt         y
//   InvSqrt      1/y            (fails on singular input)
//   ArctanOverX  arctan(y)/y
//   ArtanhOverX  artanh(y)/y    (fails for y >= 1)
//   Cos          cos(y)
//   Cosh         cosh(y)
//   Sinc         sin(y)/y
//   Sinch        sinh(y)/y
// The removable singularities at y = 0 are evaluated by truncated series.
enum class ScalarFn {
  Sqrt,
  InvSqrt,
  ArctanOverX,
  ArtanhOverX,
  Cos,
  Cosh,
  Sinc,
  Sinch,
};

// Hermiticity is enforced up to a relative Frobenius tolerance, then the exact
// hermitian average (H + H^+)/2 is decomposed. Throws NotHermitian or
// ConvergenceFailure.
HermitianSpectrum herm_eig(const CMatrix& h);

// V f(lambda) V^+ for the scalar functions above. Eigenvalues in
// [-1e-12, 0) are clamped to 0; anything lower throws DomainError, as do
// arguments outside a tag's domain.
CMatrix herm_fn(const CMatrix& h, ScalarFn fn);

// Determinant of a square complex matrix by partial-pivot LU; exact for 1x1.
complexd det_c(const CMatrix& a);

// Argument of z in (-pi, pi]: the boundary angle maps to +pi, never -pi.
// Throws ZeroArgument when |z| < 1e-300.
double principal_arg(complexd z);

// Largest singular value.
double spectral_norm(const CMatrix& a);

// Smallest singular value; 0 for an empty matrix.
double smallest_singular_value(const CMatrix& a);

// True when every entry is finite (no NaN, no infinity).
bool is_finite(const CMatrix& a);

// z^e for integer e, by repeated squaring; e < 0 inverts.
complexd ipow(complexd z, int e);

// Wrap an angle into (-pi, pi].
double principal_reduce(double angle);

}  // namespace matfun
}  // namespace geophase
