#pragma once

#include <cstdint>
#include <random>

#include "geophase/matfun.hpp"

namespace geophase::grassmann {

// Parameters of one domain in the family: n x m chart matrices, epsilon = +1
// for the compact space (chart covers everything but the cut locus) and -1 for
// the noncompact dual (chart is the spectral-norm unit ball). weight_k is the
// positive integer weight of the kernel line bundle.
struct ManifoldSpec {
  int n = 1;
  int m = 1;
  int epsilon = -1;
  int weight_k = 1;
};

// Throws ValidationError unless n, m >= 1, epsilon in {-1, +1}, weight_k >= 1.
void validate(const ManifoldSpec& spec);

bool same_space(const ManifoldSpec& a, const ManifoldSpec& b);

// A point in the chart: an n x m complex matrix, inside the open unit spectral
// ball when epsilon = -1.
struct GrassmannPoint {
  ManifoldSpec spec;
  CMatrix z;
};

// A tangent parameter at the origin: an n x m complex matrix. For epsilon = +1
// the radial chart map is defined for spectral norm < pi/2.
struct TangentParam {
  ManifoldSpec spec;
  CMatrix b;
};

// A group element acting on the chart by linear fractional transformations,
// stored as its full (n+m) x (n+m) matrix. Pseudo-unitary with respect to
// diag(epsilon I_n, I_m) and determinant 1, both enforced at construction.
struct GroupElement {
  ManifoldSpec spec;
  CMatrix u;
};

GrassmannPoint make_point(const ManifoldSpec& spec, CMatrix z);
TangentParam make_tangent(const ManifoldSpec& spec, CMatrix b);
GroupElement make_group_element(const ManifoldSpec& spec, CMatrix u);
GrassmannPoint origin(const ManifoldSpec& spec);

// diag(epsilon I_n, I_m), the Gram matrix the group preserves.
CMatrix gram_signature(const ManifoldSpec& spec);

// || U^+ J U - J ||_F for J = gram_signature.
double pseudo_unitarity_residual(const GroupElement& g);

// Frobenius norm of U^+ J U - J for a raw matrix, used before wrapping.
double pseudo_unitarity_residual(const ManifoldSpec& spec, const CMatrix& u);

CMatrix block_a(const GroupElement& g);  // top-left n x n
CMatrix block_b(const GroupElement& g);  // top-right n x m
CMatrix block_c(const GroupElement& g);  // bottom-left m x n
CMatrix block_d(const GroupElement& g);  // bottom-right m x m

GroupElement multiply(const GroupElement& g1, const GroupElement& g2);

// Exact inverse J U^+ J of a pseudo-unitary matrix; no linear solve involved.
GroupElement inverse(const GroupElement& g);

// Radial geodesic through the origin with tangent parameter b, reusing one
// spectral decomposition of b^+ b across evaluations:
//   at(t) = (t b) f((t b)^+ (t b)),  f(y^2) = tan(y)/y or tanh(y)/y.
// For epsilon = +1, at(t) throws ChartOverflow when t * ||b|| reaches pi/2.
class RadialGeodesic {
 public:
  explicit RadialGeodesic(const TangentParam& b);
  CMatrix at(double t) const;
  GrassmannPoint point_at(double t) const;
  const ManifoldSpec& spec() const { return spec_; }

 private:
  ManifoldSpec spec_;
  CMatrix b_;
  CMatrix basis_;      // eigenvectors of b^+ b
  RVector lambda_;     // eigenvalues of b^+ b, clamped to >= 0
  double norm_b_;      // sqrt(max lambda)
};

// Chart image of a tangent parameter: Z = B f(B^+ B) as above.
GrassmannPoint b_to_z(const TangentParam& b);

// Inverse radial map: B = Z g(Z^+ Z) with g(y^2) = arctan(y)/y (epsilon = +1)
// or artanh(y)/y (epsilon = -1). Throws DomainError outside the unit ball when
// epsilon = -1.
TangentParam z_to_b(const GrassmannPoint& z);

// The distinguished group element moving the origin to Z:
//   [ P^(-1/2)            Z Q^(-1/2) ]      P = 1 + eps Z Z^+
//   [ -eps Q^(-1/2) Z^+   Q^(-1/2)   ]      Q = 1 + eps Z^+ Z
// Pseudo-unitary with determinant exactly 1.
GroupElement section(const GrassmannPoint& z);

// Linear fractional action Z -> (A Z + B)(C Z + D)^(-1). Throws ChartEscape
// when the denominator is singular or has condition number above 1e12.
GrassmannPoint act(const GroupElement& g, const GrassmannPoint& z);

// True when both pair determinant matrices, 1 - eps Z1^+ Z2 and
// 1 + eps Z1 Z2^+, have smallest singular value above 1e-8. Every two-point
// construction requires this.
bool pair_valid(const GrassmannPoint& z1, const GrassmannPoint& z2);

// Chart point of the section product, evaluated in closed form:
//   Z3 = P1^(-1/2) (Z1 + Z2) (1 - eps Z1^+ Z2)^(-1) Q1^(1/2).
// Equals act(section(z1), z2). Throws PairInvalid.
GrassmannPoint compose_points(const GrassmannPoint& z1, const GrassmannPoint& z2);

// Constant-speed geodesic with gamma(0) = z1, gamma(1) = z2, built by
// translating z2 to the origin's radial chart: left translations are
// isometries, so the translated radial geodesic is the true minimal arc.
class GeodesicArc {
 public:
  GeodesicArc(const GrassmannPoint& z1, const GrassmannPoint& z2);
  GrassmannPoint at(double t) const;
  const TangentParam& tangent() const { return radial_tangent_; }
  const GroupElement& translation() const { return translate_; }

 private:
  GroupElement translate_;  // section at z1
  TangentParam radial_tangent_;
  RadialGeodesic radial_;
};

GrassmannPoint geodesic_from_origin(const TangentParam& b, double t);
GrassmannPoint geodesic(const GrassmannPoint& z1, const GrassmannPoint& z2, double t);

// Deterministic pseudo-random group element: epsilon = +1 draws a Haar-like
// special unitary (Gaussian + QR), epsilon = -1 exponentiates a bounded
// pseudo-anti-hermitian traceless generator. Determinant is polished to 1 by
// the principal (n+m)-th root.
GroupElement random_group_element(const ManifoldSpec& spec, std::uint64_t seed);
GroupElement random_group_element(const ManifoldSpec& spec, std::mt19937_64& engine);

// Deterministic pseudo-random chart point with spectral norm <= max_norm
// (draws a Gaussian matrix and rescales to a uniform fraction of max_norm).
GrassmannPoint random_point(const ManifoldSpec& spec, std::uint64_t seed, double max_norm = 0.7);
GrassmannPoint random_point(const ManifoldSpec& spec, std::mt19937_64& engine, double max_norm = 0.7);

}  // namespace geophase::grassmann
