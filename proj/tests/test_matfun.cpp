#include <cmath>
#include <random>

#include "doctest.h"

#include "geophase/errors.hpp"
#include "geophase/matfun.hpp"

using namespace geophase;
using matfun::ScalarFn;

namespace {

constexpr double kPi = 3.14159265358979323846;

CMatrix random_complex(int rows, int cols, std::mt19937_64& eng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  CMatrix a(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) a(r, c) = complexd(n01(eng), n01(eng));
  return a;
}

CMatrix random_hermitian(int n, std::mt19937_64& eng) {
  const CMatrix a = random_complex(n, n, eng);
  return 0.5 * (a + a.adjoint()).eval();
}

// Positive semidefinite with a comfortable spectral spread.
CMatrix random_psd(int n, std::mt19937_64& eng) {
  const CMatrix a = random_complex(n, n, eng);
  return (a.adjoint() * a).eval();
}

}  // namespace

TEST_CASE("herm_eig recovers a known spectrum and reconstructs the input") {
  CMatrix h(2, 2);
  h << complexd(2, 0), complexd(0, 1), complexd(0, -1), complexd(2, 0);
  const matfun::HermitianSpectrum s = matfun::herm_eig(h);
  CHECK(s.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(s.eigenvalues(1) == doctest::Approx(3.0).epsilon(1e-13));
  const CMatrix rebuilt = s.eigenvectors *
                          s.eigenvalues.cast<complexd>().asDiagonal() *
                          s.eigenvectors.adjoint();
  CHECK((rebuilt - h).norm() <= 1e-12);
}

TEST_CASE("herm_eig rejects bad inputs") {
  CHECK_THROWS_AS(matfun::herm_eig(CMatrix::Zero(2, 3)), ShapeMismatch);
  CMatrix upper(2, 2);
  upper << complexd(0, 0), complexd(1, 0), complexd(0, 0), complexd(0, 0);
  CHECK_THROWS_AS(matfun::herm_eig(upper), NotHermitian);
}

TEST_CASE("herm_fn square root and inverse square root invert each other") {
  std::mt19937_64 eng(11);
  for (int n : {1, 2, 3, 5}) {
    const CMatrix h = random_psd(n, eng) + 0.1 * CMatrix::Identity(n, n);
    const CMatrix s = matfun::herm_fn(h, ScalarFn::Sqrt);
    const CMatrix si = matfun::herm_fn(h, ScalarFn::InvSqrt);
    CHECK((s * s - h).norm() <= 1e-10 * h.norm());
    CHECK((si * h * si - CMatrix::Identity(n, n)).norm() <= 1e-10);
  }
}

TEST_CASE("herm_fn inverse square root rejects a singular argument") {
  CMatrix h = CMatrix::Zero(2, 2);
  h(1, 1) = complexd(1.0, 0.0);
  CHECK_THROWS_AS(matfun::herm_fn(h, ScalarFn::InvSqrt), DomainError);
}

TEST_CASE("herm_fn scalar tags match their defining functions of y = sqrt(lambda)") {
  const double y = 0.5;
  CMatrix h(1, 1);
  h(0, 0) = complexd(y * y, 0.0);
  auto value = [&](ScalarFn fn) { return matfun::herm_fn(h, fn)(0, 0).real(); };
  CHECK(value(ScalarFn::Sqrt) == doctest::Approx(y).epsilon(1e-14));
  CHECK(value(ScalarFn::InvSqrt) == doctest::Approx(1.0 / y).epsilon(1e-14));
  CHECK(value(ScalarFn::ArctanOverX) == doctest::Approx(std::atan(y) / y).epsilon(1e-14));
  CHECK(value(ScalarFn::ArtanhOverX) == doctest::Approx(std::atanh(y) / y).epsilon(1e-14));
  CHECK(value(ScalarFn::Cos) == doctest::Approx(std::cos(y)).epsilon(1e-14));
  CHECK(value(ScalarFn::Cosh) == doctest::Approx(std::cosh(y)).epsilon(1e-14));
  CHECK(value(ScalarFn::Sinc) == doctest::Approx(std::sin(y) / y).epsilon(1e-14));
  CHECK(value(ScalarFn::Sinch) == doctest::Approx(std::sinh(y) / y).epsilon(1e-14));
}

TEST_CASE("herm_fn series window is continuous with the direct formulas") {
  // Just inside the series window the guarded Taylor expansion must agree with
  // the direct scalar evaluation to near machine precision.
  const double lambda = 9e-9;
  const double y = std::sqrt(lambda);
  CMatrix h(1, 1);
  h(0, 0) = complexd(lambda, 0.0);
  auto value = [&](ScalarFn fn) { return matfun::herm_fn(h, fn)(0, 0).real(); };
  CHECK(value(ScalarFn::ArctanOverX) == doctest::Approx(std::atan(y) / y).epsilon(1e-13));
  CHECK(value(ScalarFn::ArtanhOverX) == doctest::Approx(std::atanh(y) / y).epsilon(1e-13));
  CHECK(value(ScalarFn::Sinc) == doctest::Approx(std::sin(y) / y).epsilon(1e-13));
  CHECK(value(ScalarFn::Sinch) == doctest::Approx(std::sinh(y) / y).epsilon(1e-13));

  // At the removable singularity itself every ratio tag evaluates to 1.
  CMatrix zero = CMatrix::Zero(1, 1);
  for (ScalarFn fn : {ScalarFn::ArctanOverX, ScalarFn::ArtanhOverX, ScalarFn::Sinc,
                      ScalarFn::Sinch}) {
    CHECK(matfun::herm_fn(zero, fn)(0, 0).real() == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("herm_fn trig and hyperbolic matrix identities hold") {
  std::mt19937_64 eng(12);
  for (int n : {1, 2, 4}) {
    // Keep lambda below 1 so ArtanhOverX would also be defined; irrelevant for
    // the tags used here but keeps the spectra mild.
    const CMatrix h = (0.2 * random_psd(n, eng)).eval();
    const CMatrix c = matfun::herm_fn(h, ScalarFn::Cos);
    const CMatrix s = matfun::herm_fn(h, ScalarFn::Sinc);
    const CMatrix id = CMatrix::Identity(n, n);
    // cos(y)^2 + y^2 sinc(y)^2 = 1 with y^2 = lambda.
    CHECK((c * c + h * s * s - id).norm() <= 1e-12);
    const CMatrix ch = matfun::herm_fn(h, ScalarFn::Cosh);
    const CMatrix sh = matfun::herm_fn(h, ScalarFn::Sinch);
    CHECK((ch * ch - h * sh * sh - id).norm() <= 1e-12);
  }
}

TEST_CASE("herm_fn ArtanhOverX rejects eigenvalues at or beyond one") {
  CMatrix h(1, 1);
  h(0, 0) = complexd(1.0, 0.0);
  CHECK_THROWS_AS(matfun::herm_fn(h, ScalarFn::ArtanhOverX), DomainError);
  h(0, 0) = complexd(1.5, 0.0);
  CHECK_THROWS_AS(matfun::herm_fn(h, ScalarFn::ArtanhOverX), DomainError);
}

TEST_CASE("det_c handles the empty matrix and agrees with cofactor expansion") {
  CHECK(matfun::det_c(CMatrix(0, 0)) == complexd(1.0, 0.0));

  CMatrix a(2, 2);
  a << complexd(1, 2), complexd(3, -1), complexd(0, 1), complexd(2, 0);
  const complexd direct = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  CHECK(std::abs(matfun::det_c(a) - direct) <= 1e-14 * std::abs(direct));

  std::mt19937_64 eng(13);
  const CMatrix x = random_complex(3, 3, eng);
  const CMatrix y = random_complex(3, 3, eng);
  const complexd lhs = matfun::det_c(x * y);
  const complexd rhs = matfun::det_c(x) * matfun::det_c(y);
  CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
}

TEST_CASE("principal_arg lands in (-pi, pi] and rejects zero") {
  CHECK(matfun::principal_arg(complexd(-1.0, 0.0)) == doctest::Approx(kPi));
  CHECK(matfun::principal_arg(complexd(-1.0, -0.0)) == doctest::Approx(kPi));
  CHECK(matfun::principal_arg(complexd(1.0, 1.0)) == doctest::Approx(kPi / 4));
  CHECK_THROWS_AS(matfun::principal_arg(complexd(0.0, 0.0)), ZeroArgument);
}

TEST_CASE("principal_reduce wraps into (-pi, pi] and preserves the exponential") {
  CHECK(matfun::principal_reduce(3.0 * kPi) == doctest::Approx(kPi));
  CHECK(matfun::principal_reduce(-kPi) == doctest::Approx(kPi));
  CHECK(matfun::principal_reduce(2.0 * kPi) == doctest::Approx(0.0));
  std::mt19937_64 eng(14);
  std::uniform_real_distribution<double> wide(-50.0, 50.0);
  for (int i = 0; i < 200; ++i) {
    const double x = wide(eng);
    const double r = matfun::principal_reduce(x);
    CHECK(r > -kPi - 1e-15);
    CHECK(r <= kPi + 1e-15);
    CHECK(std::abs(std::exp(complexd(0, r)) - std::exp(complexd(0, x))) <= 1e-12);
  }
}

TEST_CASE("ipow matches repeated multiplication and inverts cleanly") {
  const complexd z(0.8, -0.6);
  CHECK(std::abs(matfun::ipow(z, 5) - z * z * z * z * z) <= 1e-14);
  CHECK(std::abs(matfun::ipow(z, -3) * z * z * z - complexd(1, 0)) <= 1e-13);
  CHECK(matfun::ipow(z, 0) == complexd(1, 0));
}

TEST_CASE("spectral_norm and smallest_singular_value read the singular values") {
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 0) = complexd(3.0, 0.0);
  a(1, 1) = complexd(0.0, -4.0);
  CHECK(matfun::spectral_norm(a) == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(matfun::smallest_singular_value(a) == doctest::Approx(3.0).epsilon(1e-13));
}
