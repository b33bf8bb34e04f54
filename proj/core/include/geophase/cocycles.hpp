#pragma once

#include "geophase/phases.hpp"

namespace geophase::cocycles {

using grassmann::GrassmannPoint;
using grassmann::GroupElement;

// Blocks of the product of two sections, sigma(Z1) sigma(Z2) = [[M, N], [P, Q]],
// together with its Gauss decomposition data:
//   zprime = N Q^(-1)   (the composed chart point)
//   alpha  = M - N Q^(-1) P   (Schur complement, the upper-left Gauss factor)
//   beta   = Q
//   zcomp  = Q^(-1) P   (lower-left Gauss parameter)
// All blocks are evaluated from closed forms in Z1, Z2, not by multiplying the
// section matrices, so tests can compare the two routes independently.
struct BlockProduct {
  CMatrix m, n, p, q;
  CMatrix zprime, alpha, beta, zcomp;
};

// Throws PairInvalid when the pair is invalid and SingularQ when the Gauss
// decomposition does not exist.
BlockProduct block_product(const GrassmannPoint& z1, const GrassmannPoint& z2);

// Closed form of the Gauss alpha factor,
//   alpha = P1^(-1/2) P1 (1 - eps Z2 Z1^+)^(-1) P2 P2^(-1/2),
// cross-checked internally against the Schur complement carried by `bp`.
CMatrix gauss_alpha(const BlockProduct& bp, const GrassmannPoint& z1, const GrassmannPoint& z2);

// Positive-definite factor of the polar form of alpha:
//   U = sqrt( P1^(1/2) (1 - eps Z2 Z1^+)^(-1) P2 (1 - eps Z1 Z2^+)^(-1) P1^(1/2) ),
// which also equals sqrt(1 + eps Z3 Z3^+) at the composed point Z3.
CMatrix gauss_u(const GrassmannPoint& z1, const GrassmannPoint& z2);

// Phase of the scalar the product of two coherent-state translations picks up:
//   Phi = -eps k arg det(1 - eps Z1 Z2^+), reduced to (-pi, pi].
// Equals arg((det alpha / det U)^(-eps)) for k = 1.
double multiplicative_phase(const GrassmannPoint& z1, const GrassmannPoint& z2, int k = 1);

// Group 2-cocycle from the determinant character v(g) = det(top-left block):
//   f(g1, g2) = (1/2pi) arg[ v(g1) v(g2) / v(g1 g2) ].
// On sections this reduces to (1/2pi) arg det(1 - eps Z1 Z2^+)^(-1).
// Throws SingularBlock when any of the three blocks is singular.
double gw_cocycle(const GroupElement& g1, const GroupElement& g2);

// Integral cocycle: the symplectic area of the geodesic triangle
// (origin, g1 origin, g1 g2 origin), by quadrature and in closed form.
double dupont_cocycle(const GroupElement& g1, const GroupElement& g2, int order = 32);
double dupont_cocycle_closed(const GroupElement& g1, const GroupElement& g2);

// Automorphy factor J(g, X) = det(A^+ - eps X B^+)^(-eps k) for g = [[A, B], [C, D]].
// Satisfies the cocycle property J(g1 g2, X) = J(g1, g2 X) J(g2, X) and the
// kernel covariance K(g X, g Y) = J(g, X) K(X, Y) conj(J(g, Y)).
complexd automorphy_j(const GroupElement& g, const GrassmannPoint& x);

// One instance of every phase/cocycle quantity on a pair of section elements,
// with the residuals of the identities tying them together.
//
// Under the conventions implemented here (kernel det(1 + eps Z1 Z2^+)^(eps k),
// character v = det of the upper-left block), the exponential bridge that
// follows from the phase and cocycle formulas is
//   exp(i eps k Phi) = exp(+2pi i k f),
// whose residual is `bridge_residual`. The negated-exponent variant
// exp(-2pi i k f) is its complex conjugate and cannot also vanish; that
// residual is carried as `bridge_residual_conjugate` for diagnostics.
struct CocycleTriple {
  double phi = 0.0;
  double f = 0.0;
  double c_quadrature = 0.0;
  double c_closed = 0.0;
  double bridge_residual = 0.0;            // |exp(i eps k Phi) - exp(+2pi i k f)|
  double bridge_residual_conjugate = 0.0;  // |exp(i eps k Phi) - exp(-2pi i k f)|
  double dupont_residual = 0.0;            // |f - (eps/pi) c_quadrature|
  double dupont_closed_residual = 0.0;     // |f - (eps/pi) c_closed|
};

CocycleTriple cocycle_triple_report(const GrassmannPoint& z1, const GrassmannPoint& z2,
                                    int order = 32);

}  // namespace geophase::cocycles
