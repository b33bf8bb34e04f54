#pragma once

#include "geophase/matfun.hpp"

namespace geophase::rankone {

// The three scalar reductions of the rank-one geometry: the sphere (compact,
// spin label j), the unit disc (noncompact, Bergman weight k), and the flat
// plane (the large-radius contraction of either).
enum class RankOneSpace { Sphere, Disc, Plane };

// weight carries j (sphere, positive half-integer), k (disc, half-integer
// >= 1), and is ignored for the plane. Disc points must satisfy |z| < 1.
struct RankOnePoint {
  RankOneSpace space = RankOneSpace::Plane;
  double weight = 0.0;
  complexd z;
};

RankOnePoint make_rank_one(RankOneSpace space, double weight, complexd z);

// Phase picked up between the coherent states at p and q:
//   sphere  j * arg(1 + z conj(z'))
//   disc   -k * arg(1 - z conj(z'))
//   plane   Im(z conj(z'))
// Not reduced mod 2pi: for |z| <= 0.7 and the weights in scope it already lies
// inside (-pi, pi], and the raw value is what the area identity compares.
double rank1_phase(const RankOnePoint& p, const RankOnePoint& q);

// Symplectic area of the geodesic triangle (0, p, q). Sphere and disc reuse
// the 1x1 matrix-domain quadrature; the plane is the exact flat-triangle value
// (1/2) Im(p conj(q)) in the clockwise-positive convention, so order is
// ignored there.
double rank1_area(const RankOnePoint& p, const RankOnePoint& q, int order = 32);

}  // namespace geophase::rankone
