#pragma once

#include <vector>

#include "geophase/grassmann.hpp"

namespace geophase::phases {

using grassmann::GrassmannPoint;

// Reproducing kernel value K(Z1, Z2) = det(1 + eps Z1 Z2^+)^(eps k) split into
// modulus and principal phase; value == magnitude * exp(i phase).
struct Overlap {
  complexd value;
  double magnitude = 0.0;
  double phase = 0.0;
};

enum class AreaMethod { ClosedForm, Quadrature };

// Symplectic area of the geodesic triangle (origin, Z1, Z2), oriented so that
// the closed form equals (eps/2) arg det(1 + eps Z1 Z2^+). est_error is 0 for
// the closed form and |result(order) - result(order/2)| for quadrature.
struct TriangleArea {
  double value = 0.0;
  AreaMethod method = AreaMethod::ClosedForm;
  double est_error = 0.0;
};

// Kernel-induced distance. For epsilon = +1 the normalized overlap modulus is
// cos of the distance; for epsilon = -1 the reproducing-kernel Cauchy-Schwarz
// bound keeps the modulus <= 1 as well, so `hyperbolic` stays false on valid
// inputs and is reported only as a diagnostic for the arccosh branch.
struct ChordalDistance {
  double value = 0.0;
  bool hyperbolic = false;
};

// Throws PairInvalid when pair_valid fails.
Overlap kernel(const GrassmannPoint& z1, const GrassmannPoint& z2);

// Phase of the kernel between normalized coherent states. The normalizing
// kernel values at equal arguments are positive, so this equals kernel().phase.
double normalized_overlap_phase(const GrassmannPoint& z1, const GrassmannPoint& z2);

// Multiplying the kernel phase by 1: the overlap phase equals
// 2 * orientation_sign * triangle area at weight 1. Pinned by tests.
inline constexpr double orientation_sign = 1.0;

TriangleArea triangle_area_closed(const GrassmannPoint& z1, const GrassmannPoint& z2);

// Two-form value omega_Z(V, W) = -Im tr[ V (1 + eps Z^+ Z)^(-1) W^+ (1 + eps Z Z^+)^(-1) ]
// on tangent vectors in chart coordinates at Z.
double omega_at(const GrassmannPoint& z, const CMatrix& v, const CMatrix& w);

// Riemannian pairing g_Z(V, W) = Re tr[ ... ] with the same Gram factors;
// g(V, V) gives the squared speed used by the constant-speed checks.
double metric_at(const GrassmannPoint& z, const CMatrix& v, const CMatrix& w);

// Pullback of omega over the geodesic cone with apex at the origin and base
// the geodesic from z1 to z2, integrated by a tensor Gauss-Legendre rule of
// the given order per axis (4 <= order <= 64). Tangents by central differences
// with h = 1e-5. Deterministic summation order.
TriangleArea triangle_area_quadrature(const GrassmannPoint& z1, const GrassmannPoint& z2,
                                      int order = 32);

ChordalDistance chordal_distance(const GrassmannPoint& z1, const GrassmannPoint& z2);

// Quadrature over the cone with the given apex and base geodesic b0 -> b1.
// omega is closed, so the value depends only on the oriented boundary cycle
// (apex, b0, b1): cone_area_quadrature(Z2-apex, 0, Z1) must reproduce
// triangle_area_quadrature(Z1, Z2). Exposed for surface-independence checks.
TriangleArea cone_area_quadrature(const GrassmannPoint& apex, const GrassmannPoint& b0,
                                  const GrassmannPoint& b1, int order = 32);

// Nodes and weights of the Gauss-Legendre rule on [0, 1], ascending nodes.
// Exposed for tests; order must be in [2, 64].
void gauss_legendre_01(int order, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace geophase::phases
