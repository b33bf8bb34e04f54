#include "geophase/rankone.hpp"

#include <cmath>

#include "geophase/phases.hpp"

namespace geophase::rankone {

namespace {

using matfun::principal_arg;

bool is_half_integer(double w) {
  return std::abs(2.0 * w - std::round(2.0 * w)) <= 1e-12;
}

void require_compatible(const RankOnePoint& p, const RankOnePoint& q, const char* who) {
  if (p.space != q.space)
    throw DomainError(std::string(who) + ": points live on different spaces");
  if (p.space != RankOneSpace::Plane && p.weight != q.weight)
    throw DomainError(std::string(who) + ": points carry different weights");
}

grassmann::GrassmannPoint to_matrix_point(const RankOnePoint& p) {
  const grassmann::ManifoldSpec spec{1, 1, p.space == RankOneSpace::Sphere ? 1 : -1, 1};
  CMatrix z(1, 1);
  z(0, 0) = p.z;
  return grassmann::make_point(spec, std::move(z));
}

}  // namespace

RankOnePoint make_rank_one(RankOneSpace space, double weight, complexd z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("rank-one point: coordinate must be finite");
  switch (space) {
    case RankOneSpace::Sphere:
      if (!(weight > 0.0) || !is_half_integer(weight))
        throw DomainError("rank-one point: sphere weight must be a positive half-integer");
      break;
    case RankOneSpace::Disc:
      if (!(weight >= 1.0) || !is_half_integer(weight))
        throw DomainError("rank-one point: disc weight must be a half-integer >= 1");
      if (std::abs(z) >= 1.0)
        throw DomainError("rank-one point: disc coordinate must satisfy |z| < 1");
      break;
    case RankOneSpace::Plane:
      weight = 0.0;  // the plane carries no weight label
      break;
  }
  return RankOnePoint{space, weight, z};
}

double rank1_phase(const RankOnePoint& p, const RankOnePoint& q) {
  require_compatible(p, q, "rank1_phase");
  switch (p.space) {
    case RankOneSpace::Sphere:
      return p.weight * principal_arg(complexd(1.0, 0.0) + p.z * std::conj(q.z));
    case RankOneSpace::Disc:
      return -p.weight * principal_arg(complexd(1.0, 0.0) - p.z * std::conj(q.z));
    case RankOneSpace::Plane:
      return std::imag(p.z * std::conj(q.z));
  }
  throw DomainError("rank1_phase: unknown space tag");
}

double rank1_area(const RankOnePoint& p, const RankOnePoint& q, int order) {
  require_compatible(p, q, "rank1_area");
  if (p.space == RankOneSpace::Plane)
    return 0.5 * std::imag(p.z * std::conj(q.z));
  return phases::triangle_area_quadrature(to_matrix_point(p), to_matrix_point(q), order).value;
}

}  // namespace geophase::rankone
