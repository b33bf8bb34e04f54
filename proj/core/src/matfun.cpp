#include "geophase/matfun.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace geophase::matfun {

namespace {

constexpr double kHermTol = 1e-10;        // relative Frobenius hermiticity tolerance
constexpr double kEigenClamp = 1e-12;     // negative eigenvalues above this are roundoff
constexpr double kSeriesWindow = 1e-8;    // lambda below this uses the series in y = sqrt(lambda)

// The scalar spectral functions as functions of lambda = y^2 >= 0. Near the
// removable singularity at 0 the odd-over-x functions switch to a four-term
// Taylor series in lambda; at lambda = 1e-8 the first neglected term is of
// order 1e-32, far below double roundoff, and the two branches agree to
// machine precision at the switch.
double scalar_apply(ScalarFn fn, double lambda) {
  const double y = std::sqrt(lambda);
  switch (fn) {
    case ScalarFn::Sqrt:
      return y;
    case ScalarFn::InvSqrt:
      if (lambda == 0.0) throw DomainError("herm_fn: invsqrt of a singular matrix");
      return 1.0 / y;
    case ScalarFn::ArctanOverX:
      if (lambda < kSeriesWindow)
        return 1.0 + lambda * (-1.0 / 3.0 + lambda * (1.0 / 5.0 + lambda * (-1.0 / 7.0)));
      return std::atan(y) / y;
    case ScalarFn::ArtanhOverX:
      if (lambda >= 1.0) throw DomainError("herm_fn: artanh_over_x needs eigenvalues < 1");
      if (lambda < kSeriesWindow)
        return 1.0 + lambda * (1.0 / 3.0 + lambda * (1.0 / 5.0 + lambda * (1.0 / 7.0)));
      return std::atanh(y) / y;
    case ScalarFn::Cos:
      return std::cos(y);
    case ScalarFn::Cosh:
      return std::cosh(y);
    case ScalarFn::Sinc:
      if (lambda < kSeriesWindow)
        return 1.0 + lambda * (-1.0 / 6.0 + lambda * (1.0 / 120.0 + lambda * (-1.0 / 5040.0)));
      return std::sin(y) / y;
    case ScalarFn::Sinch:
      if (lambda < kSeriesWindow)
        return 1.0 + lambda * (1.0 / 6.0 + lambda * (1.0 / 120.0 + lambda * (1.0 / 5040.0)));
      return std::sinh(y) / y;
  }
  throw DomainError("herm_fn: unknown scalar function tag");
}

}  // namespace

bool is_finite(const CMatrix& a) { return a.allFinite(); }

HermitianSpectrum herm_eig(const CMatrix& h) {
  if (h.rows() != h.cols()) throw ShapeMismatch("herm_eig: matrix is not square");
  if (!is_finite(h)) throw NotHermitian("herm_eig: matrix has non-finite entries");
  const double scale = std::max(1.0, h.norm());
  if ((h - h.adjoint()).norm() > kHermTol * scale)
    throw NotHermitian("herm_eig: hermiticity residual exceeds tolerance");
  const CMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw ConvergenceFailure("herm_eig: eigensolver did not converge");
  return HermitianSpectrum{solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix herm_fn(const CMatrix& h, ScalarFn fn) {
  HermitianSpectrum s = herm_eig(h);
  RVector mapped(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    double lambda = s.eigenvalues[i];
    if (lambda < 0.0) {
      if (lambda < -kEigenClamp)
        throw DomainError("herm_fn: eigenvalue below the positive-semidefinite clamp window");
      lambda = 0.0;
    }
    mapped[i] = scalar_apply(fn, lambda);
  }
  return s.eigenvectors * mapped.asDiagonal() * s.eigenvectors.adjoint();
}

complexd det_c(const CMatrix& a) {
  if (a.rows() != a.cols()) throw ShapeMismatch("det_c: matrix is not square");
  if (a.rows() == 0) return complexd(1.0, 0.0);
  if (a.rows() == 1) return a(0, 0);
  return Eigen::PartialPivLU<CMatrix>(a).determinant();
}

double principal_arg(complexd z) {
  if (std::abs(z) < 1e-300)
    throw ZeroArgument("principal_arg: modulus too small to carry a phase");
  const double a = std::arg(z);
  return a == -M_PI ? M_PI : a;
}

double spectral_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  return Eigen::JacobiSVD<CMatrix>(a).singularValues()(0);
}

double smallest_singular_value(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  const auto sv = Eigen::JacobiSVD<CMatrix>(a).singularValues();
  return sv(sv.size() - 1);
}

complexd ipow(complexd z, int e) {
  if (e < 0) return 1.0 / ipow(z, -e);
  complexd acc(1.0, 0.0);
  complexd base = z;
  unsigned n = static_cast<unsigned>(e);
  while (n != 0) {
    if (n & 1u) acc *= base;
    base *= base;
    n >>= 1u;
  }
  return acc;
}

double principal_reduce(double angle) {
  double r = std::remainder(angle, 2.0 * M_PI);
  if (r <= -M_PI) r += 2.0 * M_PI;
  return r;
}

}  // namespace geophase::matfun
