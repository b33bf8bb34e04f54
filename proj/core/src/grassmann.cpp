#include "geophase/grassmann.hpp"

#include <cmath>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace geophase::grassmann {

namespace {

constexpr double kPairSingularTol = 1e-8;   // smallest singular value a pair matrix may have
constexpr double kChartCondLimit = 1e12;    // condition number limit for the action denominator
constexpr double kUnitarityTol = 1e-10;     // pseudo-unitarity residual allowed at construction
constexpr double kDetTol = 1e-10;           // |det - 1| allowed at construction
constexpr double kChartMargin = 1e-9;       // distance to pi/2 the compact radial map must keep
constexpr double kSeriesWindow = 1e-8;      // squared-argument window for the tan/tanh series

using matfun::det_c;
using matfun::herm_eig;
using matfun::herm_fn;
using matfun::ipow;
using matfun::is_finite;
using matfun::smallest_singular_value;
using matfun::spectral_norm;

CMatrix left_gram(int eps, const CMatrix& z) {
  return CMatrix::Identity(z.rows(), z.rows()) + static_cast<double>(eps) * z * z.adjoint();
}

CMatrix right_gram(int eps, const CMatrix& z) {
  return CMatrix::Identity(z.cols(), z.cols()) + static_cast<double>(eps) * z.adjoint() * z;
}

// tan(y)/y (eps = +1) or tanh(y)/y (eps = -1) as a function of x = y^2, with
// the same series window policy as the scalar spectral functions.
double radial_factor(int eps, double x) {
  if (x < kSeriesWindow) {
    const double s = eps > 0 ? 1.0 : -1.0;
    return 1.0 + s * x * (1.0 / 3.0 + s * x * (2.0 / 15.0 + s * x * (17.0 / 315.0)));
  }
  const double y = std::sqrt(x);
  return eps > 0 ? std::tan(y) / y : std::tanh(y) / y;
}

CMatrix randn_cmatrix(std::mt19937_64& engine, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = gauss(engine);
      const double im = gauss(engine);
      g(i, j) = complexd(re, im);
    }
  return g;
}

// Matrix exponential by scaling and squaring with a long Taylor polynomial.
// The scaled norm is at most 1/4, so 24 terms leave a tail below 1e-40.
CMatrix expm_taylor(const CMatrix& x) {
  int squarings = 0;
  double norm = spectral_norm(x);
  double scale = 1.0;
  while (norm > 0.25) {
    norm *= 0.5;
    scale *= 0.5;
    ++squarings;
  }
  const CMatrix xs = scale * x;
  CMatrix term = CMatrix::Identity(x.rows(), x.cols());
  CMatrix acc = term;
  for (int k = 1; k <= 24; ++k) {
    term = (term * xs) / static_cast<double>(k);
    acc += term;
  }
  for (int k = 0; k < squarings; ++k) acc = acc * acc;
  return acc;
}

// Divide by the principal (n+m)-th root of the determinant; the quotient has
// determinant 1 and, since the root is unimodular for a pseudo-unitary input,
// the same pseudo-unitarity residual.
CMatrix polish_determinant(const CMatrix& u) {
  const complexd det = det_c(u);
  const complexd root = std::pow(det, 1.0 / static_cast<double>(u.rows()));
  return u / root;
}

}  // namespace

void validate(const ManifoldSpec& spec) {
  if (spec.n < 1 || spec.m < 1)
    throw ValidationError("manifold: n and m must be positive");
  if (spec.epsilon != 1 && spec.epsilon != -1)
    throw ValidationError("manifold: epsilon must be +1 or -1");
  if (spec.weight_k < 1)
    throw ValidationError("manifold: weight_k must be a positive integer");
}

bool same_space(const ManifoldSpec& a, const ManifoldSpec& b) {
  return a.n == b.n && a.m == b.m && a.epsilon == b.epsilon && a.weight_k == b.weight_k;
}

GrassmannPoint make_point(const ManifoldSpec& spec, CMatrix z) {
  validate(spec);
  if (z.rows() != spec.n || z.cols() != spec.m)
    throw ShapeMismatch("point: chart matrix must be n x m");
  if (!is_finite(z)) throw ValidationError("point: chart matrix has non-finite entries");
  if (spec.epsilon < 0 && spectral_norm(z) >= 1.0)
    throw DomainError("point: outside the open unit spectral ball");
  return GrassmannPoint{spec, std::move(z)};
}

TangentParam make_tangent(const ManifoldSpec& spec, CMatrix b) {
  validate(spec);
  if (b.rows() != spec.n || b.cols() != spec.m)
    throw ShapeMismatch("tangent: parameter matrix must be n x m");
  if (!is_finite(b)) throw ValidationError("tangent: parameter matrix has non-finite entries");
  return TangentParam{spec, std::move(b)};
}

GroupElement make_group_element(const ManifoldSpec& spec, CMatrix u) {
  validate(spec);
  const Eigen::Index size = spec.n + spec.m;
  if (u.rows() != size || u.cols() != size)
    throw ShapeMismatch("group element: matrix must be (n+m) x (n+m)");
  if (!is_finite(u)) throw ValidationError("group element: matrix has non-finite entries");
  if (pseudo_unitarity_residual(spec, u) > kUnitarityTol)
    throw ValidationError("group element: pseudo-unitarity residual exceeds tolerance");
  if (std::abs(det_c(u) - complexd(1.0, 0.0)) > kDetTol)
    throw ValidationError("group element: determinant is not 1");
  return GroupElement{spec, std::move(u)};
}

GrassmannPoint origin(const ManifoldSpec& spec) {
  validate(spec);
  return GrassmannPoint{spec, CMatrix::Zero(spec.n, spec.m)};
}

CMatrix gram_signature(const ManifoldSpec& spec) {
  CMatrix j = CMatrix::Identity(spec.n + spec.m, spec.n + spec.m);
  j.topLeftCorner(spec.n, spec.n) *= static_cast<double>(spec.epsilon);
  return j;
}

double pseudo_unitarity_residual(const ManifoldSpec& spec, const CMatrix& u) {
  const CMatrix j = gram_signature(spec);
  return (u.adjoint() * j * u - j).norm();
}

double pseudo_unitarity_residual(const GroupElement& g) {
  return pseudo_unitarity_residual(g.spec, g.u);
}

CMatrix block_a(const GroupElement& g) { return g.u.topLeftCorner(g.spec.n, g.spec.n); }
CMatrix block_b(const GroupElement& g) { return g.u.topRightCorner(g.spec.n, g.spec.m); }
CMatrix block_c(const GroupElement& g) { return g.u.bottomLeftCorner(g.spec.m, g.spec.n); }
CMatrix block_d(const GroupElement& g) { return g.u.bottomRightCorner(g.spec.m, g.spec.m); }

GroupElement multiply(const GroupElement& g1, const GroupElement& g2) {
  if (!same_space(g1.spec, g2.spec))
    throw ShapeMismatch("multiply: group elements live on different spaces");
  return make_group_element(g1.spec, g1.u * g2.u);
}

GroupElement inverse(const GroupElement& g) {
  const CMatrix j = gram_signature(g.spec);
  return make_group_element(g.spec, j * g.u.adjoint() * j);
}

RadialGeodesic::RadialGeodesic(const TangentParam& b) : spec_(b.spec), b_(b.b) {
  matfun::HermitianSpectrum s = herm_eig(b_.adjoint() * b_);
  lambda_ = s.eigenvalues.cwiseMax(0.0);
  basis_ = s.eigenvectors;
  norm_b_ = std::sqrt(lambda_.maxCoeff());
}

CMatrix RadialGeodesic::at(double t) const {
  if (spec_.epsilon > 0 && std::abs(t) * norm_b_ >= M_PI / 2.0 - kChartMargin)
    throw ChartOverflow("radial geodesic: tangent norm reaches the pi/2 chart boundary");
  const double t2 = t * t;
  RVector factors(lambda_.size());
  for (Eigen::Index i = 0; i < lambda_.size(); ++i)
    factors[i] = radial_factor(spec_.epsilon, t2 * lambda_[i]);
  return (t * b_) * (basis_ * factors.asDiagonal() * basis_.adjoint());
}

GrassmannPoint RadialGeodesic::point_at(double t) const {
  return make_point(spec_, at(t));
}

GrassmannPoint b_to_z(const TangentParam& b) { return RadialGeodesic(b).point_at(1.0); }

TangentParam z_to_b(const GrassmannPoint& z) {
  const matfun::ScalarFn fn =
      z.spec.epsilon > 0 ? matfun::ScalarFn::ArctanOverX : matfun::ScalarFn::ArtanhOverX;
  return make_tangent(z.spec, z.z * herm_fn(z.z.adjoint() * z.z, fn));
}

GroupElement section(const GrassmannPoint& z) {
  const int n = z.spec.n;
  const int m = z.spec.m;
  const double eps = static_cast<double>(z.spec.epsilon);
  const CMatrix p_invsqrt = herm_fn(left_gram(z.spec.epsilon, z.z), matfun::ScalarFn::InvSqrt);
  const CMatrix q_invsqrt = herm_fn(right_gram(z.spec.epsilon, z.z), matfun::ScalarFn::InvSqrt);
  CMatrix u(n + m, n + m);
  u.topLeftCorner(n, n) = p_invsqrt;
  u.topRightCorner(n, m) = z.z * q_invsqrt;
  u.bottomLeftCorner(m, n) = -eps * q_invsqrt * z.z.adjoint();
  u.bottomRightCorner(m, m) = q_invsqrt;
  return make_group_element(z.spec, std::move(u));
}

GrassmannPoint act(const GroupElement& g, const GrassmannPoint& z) {
  if (!same_space(g.spec, z.spec))
    throw ShapeMismatch("act: group element and point live on different spaces");
  const CMatrix num = block_a(g) * z.z + block_b(g);
  const CMatrix den = block_c(g) * z.z + block_d(g);
  const auto sv = Eigen::JacobiSVD<CMatrix>(den).singularValues();
  const double smin = sv(sv.size() - 1);
  if (smin <= 0.0 || sv(0) / smin > kChartCondLimit)
    throw ChartEscape("act: denominator block is singular or too ill-conditioned");
  const CMatrix image =
      den.transpose().partialPivLu().solve(num.transpose()).transpose();
  return make_point(z.spec, image);
}

bool pair_valid(const GrassmannPoint& z1, const GrassmannPoint& z2) {
  if (!same_space(z1.spec, z2.spec))
    throw ShapeMismatch("pair_valid: points live on different spaces");
  const double eps = static_cast<double>(z1.spec.epsilon);
  const CMatrix first =
      CMatrix::Identity(z1.spec.m, z1.spec.m) - eps * z1.z.adjoint() * z2.z;
  const CMatrix second =
      CMatrix::Identity(z1.spec.n, z1.spec.n) + eps * z1.z * z2.z.adjoint();
  return smallest_singular_value(first) > kPairSingularTol &&
         smallest_singular_value(second) > kPairSingularTol;
}

GrassmannPoint compose_points(const GrassmannPoint& z1, const GrassmannPoint& z2) {
  if (!pair_valid(z1, z2))
    throw PairInvalid("compose_points: pair determinant numerically singular");
  const double eps = static_cast<double>(z1.spec.epsilon);
  const CMatrix p1_invsqrt = herm_fn(left_gram(z1.spec.epsilon, z1.z), matfun::ScalarFn::InvSqrt);
  const CMatrix q1_sqrt = herm_fn(right_gram(z1.spec.epsilon, z1.z), matfun::ScalarFn::Sqrt);
  const CMatrix w = CMatrix::Identity(z1.spec.m, z1.spec.m) - eps * z1.z.adjoint() * z2.z;
  const CMatrix sum_times_winv =
      w.transpose().partialPivLu().solve((z1.z + z2.z).transpose()).transpose();
  return make_point(z1.spec, p1_invsqrt * sum_times_winv * q1_sqrt);
}

GeodesicArc::GeodesicArc(const GrassmannPoint& z1, const GrassmannPoint& z2)
    : translate_(section(z1)),
      radial_tangent_([&] {
        if (!pair_valid(z1, z2))
          throw PairInvalid("geodesic: pair determinant numerically singular");
        GrassmannPoint negated = make_point(z1.spec, -z1.z);
        return z_to_b(act(section(negated), z2));
      }()),
      radial_(radial_tangent_) {}

GrassmannPoint GeodesicArc::at(double t) const {
  return act(translate_, radial_.point_at(t));
}

GrassmannPoint geodesic_from_origin(const TangentParam& b, double t) {
  return RadialGeodesic(b).point_at(t);
}

GrassmannPoint geodesic(const GrassmannPoint& z1, const GrassmannPoint& z2, double t) {
  return GeodesicArc(z1, z2).at(t);
}

GroupElement random_group_element(const ManifoldSpec& spec, std::mt19937_64& engine) {
  validate(spec);
  const int n = spec.n;
  const int m = spec.m;
  const Eigen::Index size = n + m;
  if (spec.epsilon > 0) {
    // Haar-like special unitary: Gaussian, QR, R-diagonal phase fix.
    const CMatrix g = randn_cmatrix(engine, size, size);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < size; ++i) {
      const complexd rii = r(i, i);
      if (std::abs(rii) > 0.0) q.col(i) *= rii / std::abs(rii);
    }
    return make_group_element(spec, polish_determinant(q));
  }
  // Noncompact: exponential of a bounded pseudo-anti-hermitian traceless
  // generator, X21 = -eps X12^+ with anti-hermitian diagonal blocks.
  const CMatrix g1 = randn_cmatrix(engine, n, n);
  const CMatrix g2 = randn_cmatrix(engine, m, m);
  const CMatrix g12 = randn_cmatrix(engine, n, m);
  CMatrix x = CMatrix::Zero(size, size);
  x.topLeftCorner(n, n) = 0.5 * (g1 - g1.adjoint());
  x.bottomRightCorner(m, m) = 0.5 * (g2 - g2.adjoint());
  x.topRightCorner(n, m) = g12;
  x.bottomLeftCorner(m, n) = -static_cast<double>(spec.epsilon) * g12.adjoint();
  const complexd trace_shift = x.trace() / static_cast<double>(size);
  x -= trace_shift * CMatrix::Identity(size, size);
  const double norm = spectral_norm(x);
  if (norm > 1.0) x /= norm;
  return make_group_element(spec, polish_determinant(expm_taylor(x)));
}

GroupElement random_group_element(const ManifoldSpec& spec, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  return random_group_element(spec, engine);
}

GrassmannPoint random_point(const ManifoldSpec& spec, std::mt19937_64& engine, double max_norm) {
  validate(spec);
  if (!(max_norm > 0.0)) throw ValidationError("random_point: max_norm must be positive");
  std::uniform_real_distribution<double> fraction(0.15, 1.0);
  for (;;) {
    const CMatrix g = randn_cmatrix(engine, spec.n, spec.m);
    const double norm = spectral_norm(g);
    if (norm < 1e-12) continue;
    return make_point(spec, g * (max_norm * fraction(engine) / norm));
  }
}

GrassmannPoint random_point(const ManifoldSpec& spec, std::uint64_t seed, double max_norm) {
  std::mt19937_64 engine(seed);
  return random_point(spec, engine, max_norm);
}

}  // namespace geophase::grassmann
