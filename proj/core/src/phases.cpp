#include "geophase/phases.hpp"

#include <algorithm>
#include <cmath>

namespace geophase::phases {

namespace {

constexpr double kFdStep = 1e-5;  // central-difference step for surface tangents

using grassmann::GeodesicArc;
using grassmann::GroupElement;
using grassmann::RadialGeodesic;
using matfun::det_c;
using matfun::ipow;
using matfun::principal_arg;

CMatrix left_gram(int eps, const CMatrix& z) {
  return CMatrix::Identity(z.rows(), z.rows()) + static_cast<double>(eps) * z * z.adjoint();
}

CMatrix right_gram(int eps, const CMatrix& z) {
  return CMatrix::Identity(z.cols(), z.cols()) + static_cast<double>(eps) * z.adjoint() * z;
}

complexd pair_determinant(int eps, const CMatrix& z1, const CMatrix& z2) {
  const CMatrix gram =
      CMatrix::Identity(z1.rows(), z1.rows()) + static_cast<double>(eps) * z1 * z2.adjoint();
  return det_c(gram);
}

// Tr[ V A W^+ B ] with A, B the inverse Gram factors at z. The two-form is
// -Im of this trace and the Riemannian pairing is +Re of it: the antisymmetric
// two-trace combination (i/2)(tr - conj(tr)) collapses to -Im(tr) exactly, so
// no imaginary residue survives by construction.
complexd pairing_trace(int eps, const CMatrix& z, const CMatrix& v, const CMatrix& w) {
  const CMatrix b_v = left_gram(eps, z).partialPivLu().solve(v);
  const CMatrix a_wadj = right_gram(eps, z).partialPivLu().solve(w.adjoint());
  return (b_v * a_wadj).trace();
}

double omega_raw(int eps, const CMatrix& z, const CMatrix& v, const CMatrix& w) {
  return -std::imag(pairing_trace(eps, z, v, w));
}

// One leg of the cone with apex at the origin: the radial geodesic reaching
// the base point, with its spectral data cached for repeated t evaluation.
RadialGeodesic origin_leg(const GeodesicArc& base, double s) {
  return RadialGeodesic(grassmann::z_to_b(base.at(s)));
}

// Tensor Gauss-Legendre sum of omega(dS/ds, dS/dt) over the cone
// S(t, s) = radial-geodesic(t) toward base(s), apex at the origin. The (s, t)
// ordering of the frame fixes the orientation; it matches the closed form.
double cone_sum_origin(const GeodesicArc& base, int eps, int order) {
  std::vector<double> nodes, weights;
  gauss_legendre_01(order, nodes, weights);
  double acc = 0.0;
  for (int j = 0; j < order; ++j) {
    const double s = nodes[j];
    const RadialGeodesic leg_c = origin_leg(base, s);
    const RadialGeodesic leg_p = origin_leg(base, s + kFdStep);
    const RadialGeodesic leg_m = origin_leg(base, s - kFdStep);
    double column = 0.0;
    for (int i = 0; i < order; ++i) {
      const double t = nodes[i];
      const CMatrix center = leg_c.at(t);
      const CMatrix d_t = (leg_c.at(t + kFdStep) - leg_c.at(t - kFdStep)) / (2.0 * kFdStep);
      const CMatrix d_s = (leg_p.at(t) - leg_m.at(t)) / (2.0 * kFdStep);
      column += weights[i] * omega_raw(eps, center, d_s, d_t);
    }
    acc += weights[j] * column;
  }
  return acc;
}

// Same cone sum with an arbitrary apex: every leg is the origin radial
// geodesic conjugated by the apex section, so each surface sample costs one
// chart action.
double cone_sum_apex(const GroupElement& fwd, const GroupElement& bwd, const GeodesicArc& base,
                     int eps, int order) {
  std::vector<double> nodes, weights;
  gauss_legendre_01(order, nodes, weights);
  const auto leg_for = [&](double s) {
    return RadialGeodesic(grassmann::z_to_b(grassmann::act(bwd, base.at(s))));
  };
  const auto surface = [&](const RadialGeodesic& leg, double t) {
    return grassmann::act(fwd, leg.point_at(t)).z;
  };
  double acc = 0.0;
  for (int j = 0; j < order; ++j) {
    const double s = nodes[j];
    const RadialGeodesic leg_c = leg_for(s);
    const RadialGeodesic leg_p = leg_for(s + kFdStep);
    const RadialGeodesic leg_m = leg_for(s - kFdStep);
    double column = 0.0;
    for (int i = 0; i < order; ++i) {
      const double t = nodes[i];
      const CMatrix center = surface(leg_c, t);
      const CMatrix d_t =
          (surface(leg_c, t + kFdStep) - surface(leg_c, t - kFdStep)) / (2.0 * kFdStep);
      const CMatrix d_s = (surface(leg_p, t) - surface(leg_m, t)) / (2.0 * kFdStep);
      column += weights[i] * omega_raw(eps, center, d_s, d_t);
    }
    acc += weights[j] * column;
  }
  return acc;
}

void check_quadrature_order(int order) {
  if (order < 4 || order > 64)
    throw ValidationError("triangle quadrature: order must be in [4, 64]");
}

// Diagonal kernel magnitude det(1 + eps Z Z^+)^(eps k), a positive real; the
// diagonal Gram determinant is well defined even where the two-point pair
// check would reject the duplicated argument (compact points of norm 1).
double diagonal_kernel_magnitude(const GrassmannPoint& z) {
  const complexd d = pair_determinant(z.spec.epsilon, z.z, z.z);
  return std::abs(ipow(d, z.spec.epsilon * z.spec.weight_k));
}

}  // namespace

Overlap kernel(const GrassmannPoint& z1, const GrassmannPoint& z2) {
  if (!grassmann::pair_valid(z1, z2))
    throw PairInvalid("kernel: pair determinant numerically singular");
  const complexd d = pair_determinant(z1.spec.epsilon, z1.z, z2.z);
  const complexd value = ipow(d, z1.spec.epsilon * z1.spec.weight_k);
  return Overlap{value, std::abs(value), principal_arg(value)};
}

double normalized_overlap_phase(const GrassmannPoint& z1, const GrassmannPoint& z2) {
  return kernel(z1, z2).phase;
}

TriangleArea triangle_area_closed(const GrassmannPoint& z1, const GrassmannPoint& z2) {
  if (!grassmann::pair_valid(z1, z2))
    throw PairInvalid("triangle_area_closed: pair determinant numerically singular");
  const double theta = principal_arg(pair_determinant(z1.spec.epsilon, z1.z, z2.z));
  return TriangleArea{0.5 * static_cast<double>(z1.spec.epsilon) * theta,
                      AreaMethod::ClosedForm, 0.0};
}

double omega_at(const GrassmannPoint& z, const CMatrix& v, const CMatrix& w) {
  if (v.rows() != z.spec.n || v.cols() != z.spec.m || w.rows() != z.spec.n ||
      w.cols() != z.spec.m)
    throw ShapeMismatch("omega_at: tangent matrices must be n x m");
  if (!matfun::is_finite(v) || !matfun::is_finite(w))
    throw DomainError("omega_at: tangent matrices must be finite");
  return omega_raw(z.spec.epsilon, z.z, v, w);
}

double metric_at(const GrassmannPoint& z, const CMatrix& v, const CMatrix& w) {
  if (v.rows() != z.spec.n || v.cols() != z.spec.m || w.rows() != z.spec.n ||
      w.cols() != z.spec.m)
    throw ShapeMismatch("metric_at: tangent matrices must be n x m");
  if (!matfun::is_finite(v) || !matfun::is_finite(w))
    throw DomainError("metric_at: tangent matrices must be finite");
  return std::real(pairing_trace(z.spec.epsilon, z.z, v, w));
}

TriangleArea triangle_area_quadrature(const GrassmannPoint& z1, const GrassmannPoint& z2,
                                      int order) {
  check_quadrature_order(order);
  const GeodesicArc base(z1, z2);
  const int eps = z1.spec.epsilon;
  const double fine = cone_sum_origin(base, eps, order);
  const double coarse = cone_sum_origin(base, eps, std::max(2, order / 2));
  return TriangleArea{fine, AreaMethod::Quadrature, std::abs(fine - coarse)};
}

TriangleArea cone_area_quadrature(const GrassmannPoint& apex, const GrassmannPoint& b0,
                                  const GrassmannPoint& b1, int order) {
  check_quadrature_order(order);
  if (!grassmann::same_space(apex.spec, b0.spec) || !grassmann::same_space(apex.spec, b1.spec))
    throw ShapeMismatch("cone_area_quadrature: points live on different spaces");
  if (apex.z.isZero(0.0)) return triangle_area_quadrature(b0, b1, order);
  const GeodesicArc base(b0, b1);
  const GroupElement fwd = grassmann::section(apex);
  const GroupElement bwd =
      grassmann::section(grassmann::make_point(apex.spec, -apex.z));
  const int eps = apex.spec.epsilon;
  const double fine = cone_sum_apex(fwd, bwd, base, eps, order);
  const double coarse = cone_sum_apex(fwd, bwd, base, eps, std::max(2, order / 2));
  return TriangleArea{fine, AreaMethod::Quadrature, std::abs(fine - coarse)};
}

ChordalDistance chordal_distance(const GrassmannPoint& z1, const GrassmannPoint& z2) {
  if (!grassmann::pair_valid(z1, z2))
    throw PairInvalid("chordal_distance: pair determinant numerically singular");
  const int eps = z1.spec.epsilon;
  const complexd d = pair_determinant(eps, z1.z, z2.z);
  const double cross = std::abs(ipow(d, eps * z1.spec.weight_k));
  const double ratio =
      cross / std::sqrt(diagonal_kernel_magnitude(z1) * diagonal_kernel_magnitude(z2));
  if (eps > 0) return ChordalDistance{std::acos(std::clamp(ratio, 0.0, 1.0)), false};
  if (ratio <= 1.0) return ChordalDistance{std::acos(ratio), false};
  return ChordalDistance{std::acosh(ratio), true};
}

void gauss_legendre_01(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  if (order < 2 || order > 64)
    throw ValidationError("gauss_legendre_01: order must be in [2, 64]");
  nodes.assign(order, 0.0);
  weights.assign(order, 0.0);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-angle initial guess, then Newton on the Legendre recurrence.
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    bool converged = false;
    for (int iter = 0; iter < 64; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw ConvergenceFailure("gauss_legendre_01: Newton iteration did not converge");
    {
      // Refresh the derivative at the converged node for the weight.
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = 0.5 * (1.0 - x);
    nodes[order - 1 - i] = 0.5 * (1.0 + x);
    weights[i] = 0.5 * w;
    weights[order - 1 - i] = 0.5 * w;
  }
}

}  // namespace geophase::phases
