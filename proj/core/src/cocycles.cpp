#include "geophase/cocycles.hpp"

#include <cmath>

namespace geophase::cocycles {

namespace {

constexpr double kBlockSingularTol = 1e-10;  // relative floor for invertible blocks
constexpr double kAlphaAgreementTol = 1e-8;  // internal Schur-vs-closed-form sanity bound

using grassmann::act;
using grassmann::multiply;
using grassmann::origin;
using grassmann::pair_valid;
using grassmann::section;
using matfun::det_c;
using matfun::herm_fn;
using matfun::ipow;
using matfun::principal_arg;
using matfun::principal_reduce;
using matfun::smallest_singular_value;
using matfun::spectral_norm;

CMatrix left_gram(int eps, const CMatrix& z) {
  return CMatrix::Identity(z.rows(), z.rows()) + static_cast<double>(eps) * z * z.adjoint();
}

CMatrix right_gram(int eps, const CMatrix& z) {
  return CMatrix::Identity(z.cols(), z.cols()) + static_cast<double>(eps) * z.adjoint() * z;
}

// x * y^(-1) without forming the inverse.
CMatrix solve_right(const CMatrix& x, const CMatrix& y) {
  return y.transpose().partialPivLu().solve(x.transpose()).transpose();
}

void require_pair(const GrassmannPoint& z1, const GrassmannPoint& z2, const char* who) {
  if (!pair_valid(z1, z2))
    throw PairInvalid(std::string(who) + ": pair determinant numerically singular");
}

complexd block_determinant_character(const grassmann::GroupElement& g) {
  const CMatrix a = grassmann::block_a(g);
  const double smax = spectral_norm(a);
  if (smallest_singular_value(a) <= kBlockSingularTol * std::max(1.0, smax))
    throw SingularBlock("gw_cocycle: upper-left block numerically singular");
  return det_c(a);
}

}  // namespace

BlockProduct block_product(const GrassmannPoint& z1, const GrassmannPoint& z2) {
  require_pair(z1, z2, "block_product");
  const int eps = z1.spec.epsilon;
  const double e = static_cast<double>(eps);
  const Eigen::Index n = z1.spec.n;
  const Eigen::Index m = z1.spec.m;

  const CMatrix p1_invsqrt = herm_fn(left_gram(eps, z1.z), matfun::ScalarFn::InvSqrt);
  const CMatrix p2_invsqrt = herm_fn(left_gram(eps, z2.z), matfun::ScalarFn::InvSqrt);
  const CMatrix q1_invsqrt = herm_fn(right_gram(eps, z1.z), matfun::ScalarFn::InvSqrt);
  const CMatrix q2_invsqrt = herm_fn(right_gram(eps, z2.z), matfun::ScalarFn::InvSqrt);

  BlockProduct bp;
  bp.m = p1_invsqrt * (CMatrix::Identity(n, n) - e * z1.z * z2.z.adjoint()) * p2_invsqrt;
  bp.n = p1_invsqrt * (z1.z + z2.z) * q2_invsqrt;
  bp.p = -e * q1_invsqrt * (z1.z + z2.z).adjoint() * p2_invsqrt;
  bp.q = q1_invsqrt * (CMatrix::Identity(m, m) - e * z1.z.adjoint() * z2.z) * q2_invsqrt;

  const double q_max = spectral_norm(bp.q);
  if (smallest_singular_value(bp.q) <= kBlockSingularTol * std::max(1.0, q_max))
    throw SingularQ("block_product: lower-right block numerically singular");

  bp.zprime = solve_right(bp.n, bp.q);
  bp.beta = bp.q;
  bp.zcomp = bp.q.partialPivLu().solve(bp.p);
  bp.alpha = bp.m - bp.zprime * bp.p;
  return bp;
}

CMatrix gauss_alpha(const BlockProduct& bp, const GrassmannPoint& z1, const GrassmannPoint& z2) {
  require_pair(z1, z2, "gauss_alpha");
  const int eps = z1.spec.epsilon;
  const double e = static_cast<double>(eps);
  const Eigen::Index n = z1.spec.n;

  const CMatrix p1 = left_gram(eps, z1.z);
  const CMatrix p2 = left_gram(eps, z2.z);
  const CMatrix p1_invsqrt = herm_fn(p1, matfun::ScalarFn::InvSqrt);
  const CMatrix p2_invsqrt = herm_fn(p2, matfun::ScalarFn::InvSqrt);
  const CMatrix mixed = CMatrix::Identity(n, n) - e * z2.z * z1.z.adjoint();
  const CMatrix lambda = p1 * mixed.partialPivLu().solve(p2);
  const CMatrix alpha = p1_invsqrt * lambda * p2_invsqrt;

  // The Schur complement carried by the block product must agree; a gross
  // mismatch means the inputs do not belong together.
  if ((alpha - bp.alpha).norm() > kAlphaAgreementTol * std::max(1.0, bp.alpha.norm()))
    throw ValidationError("gauss_alpha: closed form disagrees with the block product");
  return alpha;
}

CMatrix gauss_u(const GrassmannPoint& z1, const GrassmannPoint& z2) {
  require_pair(z1, z2, "gauss_u");
  const int eps = z1.spec.epsilon;
  const double e = static_cast<double>(eps);
  const Eigen::Index n = z1.spec.n;

  const CMatrix p1_sqrt = herm_fn(left_gram(eps, z1.z), matfun::ScalarFn::Sqrt);
  const CMatrix p2 = left_gram(eps, z2.z);
  const CMatrix mixed_21 = CMatrix::Identity(n, n) - e * z2.z * z1.z.adjoint();
  const CMatrix mixed_12 = CMatrix::Identity(n, n) - e * z1.z * z2.z.adjoint();
  // p1^(1/2) (1 - eps Z2 Z1^+)^(-1) p2 (1 - eps Z1 Z2^+)^(-1) p1^(1/2)
  const CMatrix inner = mixed_21.partialPivLu().solve(solve_right(p2, mixed_12));
  CMatrix gram3 = p1_sqrt * inner * p1_sqrt;
  gram3 = 0.5 * (gram3 + gram3.adjoint());  // discard the roundoff asymmetry

  // The squared factor must be the Gram matrix at the composed point.
  const CMatrix direct = left_gram(eps, grassmann::compose_points(z1, z2).z);
  if ((gram3 - direct).norm() > 1e-9 * std::max(1.0, direct.norm()))
    throw ValidationError("gauss_u: squared factor disagrees with the composed-point evaluation");
  return herm_fn(gram3, matfun::ScalarFn::Sqrt);
}

double multiplicative_phase(const GrassmannPoint& z1, const GrassmannPoint& z2, int k) {
  require_pair(z1, z2, "multiplicative_phase");
  if (k < 1) throw ValidationError("multiplicative_phase: k must be a positive integer");
  const int eps = z1.spec.epsilon;
  const double e = static_cast<double>(eps);
  const CMatrix mixed = CMatrix::Identity(z1.spec.n, z1.spec.n) - e * z1.z * z2.z.adjoint();
  return principal_reduce(-e * static_cast<double>(k) * principal_arg(det_c(mixed)));
}

double gw_cocycle(const GroupElement& g1, const GroupElement& g2) {
  if (!grassmann::same_space(g1.spec, g2.spec))
    throw ShapeMismatch("gw_cocycle: group elements live on different spaces");
  const complexd v1 = block_determinant_character(g1);
  const complexd v2 = block_determinant_character(g2);
  const complexd v12 = block_determinant_character(multiply(g1, g2));
  return principal_arg(v1 * v2 / v12) / (2.0 * M_PI);
}

double dupont_cocycle(const GroupElement& g1, const GroupElement& g2, int order) {
  const GrassmannPoint o = origin(g1.spec);
  const GrassmannPoint base_start = act(g1, o);
  const GrassmannPoint base_end = act(multiply(g1, g2), o);
  return phases::triangle_area_quadrature(base_start, base_end, order).value;
}

double dupont_cocycle_closed(const GroupElement& g1, const GroupElement& g2) {
  const GrassmannPoint o = origin(g1.spec);
  const GrassmannPoint base_start = act(g1, o);
  const GrassmannPoint base_end = act(multiply(g1, g2), o);
  return phases::triangle_area_closed(base_start, base_end).value;
}

complexd automorphy_j(const GroupElement& g, const GrassmannPoint& x) {
  if (!grassmann::same_space(g.spec, x.spec))
    throw ShapeMismatch("automorphy_j: group element and point live on different spaces");
  const double e = static_cast<double>(g.spec.epsilon);
  const CMatrix core =
      grassmann::block_a(g).adjoint() - e * x.z * grassmann::block_b(g).adjoint();
  const double smax = spectral_norm(core);
  if (smallest_singular_value(core) <= kBlockSingularTol * std::max(1.0, smax))
    throw SingularBlock("automorphy_j: block combination numerically singular");
  return ipow(det_c(core), -g.spec.epsilon * g.spec.weight_k);
}

CocycleTriple cocycle_triple_report(const GrassmannPoint& z1, const GrassmannPoint& z2,
                                    int order) {
  const int k = z1.spec.weight_k;
  const double e = static_cast<double>(z1.spec.epsilon);
  CocycleTriple r;
  r.phi = multiplicative_phase(z1, z2, k);
  const GroupElement s1 = section(z1);
  const GroupElement s2 = section(z2);
  r.f = gw_cocycle(s1, s2);
  r.c_quadrature = dupont_cocycle(s1, s2, order);
  r.c_closed = dupont_cocycle_closed(s1, s2);

  const complexd lhs = std::exp(complexd(0.0, e * r.phi));
  const double kf = 2.0 * M_PI * static_cast<double>(k) * r.f;
  r.bridge_residual = std::abs(lhs - std::exp(complexd(0.0, kf)));
  r.bridge_residual_conjugate = std::abs(lhs - std::exp(complexd(0.0, -kf)));
  r.dupont_residual = std::abs(r.f - e / M_PI * r.c_quadrature);
  r.dupont_closed_residual = std::abs(r.f - e / M_PI * r.c_closed);
  return r;
}

}  // namespace geophase::cocycles
