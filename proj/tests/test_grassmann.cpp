#include <cmath>
#include <random>

#include "doctest.h"

#include "geophase/errors.hpp"
#include "geophase/grassmann.hpp"
#include "geophase/phases.hpp"

using namespace geophase;
using grassmann::GrassmannPoint;
using grassmann::GroupElement;
using grassmann::ManifoldSpec;

namespace {

constexpr double kPi = 3.14159265358979323846;

const ManifoldSpec kSizes[] = {{1, 1, +1, 1}, {1, 2, +1, 1}, {2, 2, +1, 1}, {2, 3, +1, 1},
                               {1, 1, -1, 1}, {1, 2, -1, 1}, {2, 2, -1, 1}, {2, 3, -1, 1}};

CMatrix random_with_norm(int rows, int cols, double norm, std::mt19937_64& eng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  CMatrix a(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) a(r, c) = complexd(n01(eng), n01(eng));
  return (norm / matfun::spectral_norm(a)) * a;
}

CMatrix scalar1x1(complexd v) {
  CMatrix a(1, 1);
  a(0, 0) = v;
  return a;
}

}  // namespace

TEST_CASE("validate rejects malformed manifold parameters") {
  CHECK_THROWS_AS(grassmann::validate({0, 1, -1, 1}), ValidationError);
  CHECK_THROWS_AS(grassmann::validate({1, 0, -1, 1}), ValidationError);
  CHECK_THROWS_AS(grassmann::validate({1, 1, 2, 1}), ValidationError);
  CHECK_THROWS_AS(grassmann::validate({1, 1, -1, 0}), ValidationError);
  CHECK_NOTHROW(grassmann::validate({3, 2, +1, 4}));
}

TEST_CASE("make_point enforces shape and the unit ball only where it applies") {
  const ManifoldSpec open{1, 1, -1, 1};
  CHECK_THROWS_AS(grassmann::make_point(open, CMatrix::Zero(2, 1)), ShapeMismatch);
  CHECK_THROWS_AS(grassmann::make_point(open, scalar1x1(complexd(1.2, 0))), DomainError);
  CHECK_THROWS_AS(grassmann::make_point(open, scalar1x1(complexd(1.0, 0))), DomainError);
  CHECK_NOTHROW(grassmann::make_point(open, scalar1x1(complexd(0.99, 0))));
  // The compact signature has no ball constraint.
  const ManifoldSpec compact{1, 1, +1, 1};
  CHECK_NOTHROW(grassmann::make_point(compact, scalar1x1(complexd(3.0, 0))));
}

TEST_CASE("radial chart maps hit the scalar anchors") {
  // Noncompact: z = tanh(b) radially, so z = tanh(0.5) pulls back to b = 0.5.
  const ManifoldSpec open{1, 1, -1, 1};
  const auto b_open =
      grassmann::z_to_b(grassmann::make_point(open, scalar1x1(std::tanh(0.5))));
  CHECK(b_open.b(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(grassmann::b_to_z(grassmann::make_tangent(open, scalar1x1(0.5))).z(0, 0).real() ==
        doctest::Approx(std::tanh(0.5)).epsilon(1e-14));
  // Compact: z = tan(b), so z = 1 pulls back to b = pi/4.
  const ManifoldSpec compact{1, 1, +1, 1};
  const auto b_compact =
      grassmann::z_to_b(grassmann::make_point(compact, scalar1x1(complexd(1.0, 0))));
  CHECK(b_compact.b(0, 0).real() == doctest::Approx(kPi / 4).epsilon(1e-14));
}

TEST_CASE("b_to_z and z_to_b are mutually inverse on all sizes") {
  std::mt19937_64 eng(21);
  for (const ManifoldSpec& spec : kSizes) {
    for (int i = 0; i < 10; ++i) {
      const double target = spec.epsilon > 0 ? 1.3 : 2.0;  // < pi/2 when compact
      const CMatrix b = random_with_norm(spec.n, spec.m, target, eng);
      const auto z = grassmann::b_to_z(grassmann::make_tangent(spec, b));
      const auto back = grassmann::z_to_b(z);
      CHECK((back.b - b).norm() <= 1e-10 * std::max(1.0, b.norm()));

      const GrassmannPoint p = grassmann::random_point(spec, eng);
      const auto round = grassmann::b_to_z(grassmann::z_to_b(p));
      CHECK((round.z - p.z).norm() <= 1e-10);
    }
  }
}

TEST_CASE("radial geodesics scale linearly in the tangent parameter") {
  std::mt19937_64 eng(22);
  for (const ManifoldSpec& spec : kSizes) {
    const CMatrix b = random_with_norm(spec.n, spec.m, 1.0, eng);
    const grassmann::RadialGeodesic geo(grassmann::make_tangent(spec, b));
    CHECK(geo.at(0.0).norm() == doctest::Approx(0.0));
    for (double t : {0.3, 0.7, 1.0}) {
      const auto direct = grassmann::b_to_z(grassmann::make_tangent(spec, (t * b).eval()));
      CHECK((geo.at(t) - direct.z).norm() <= 1e-12);
    }
  }
}

TEST_CASE("compact radial geodesics overflow the chart at the cut locus") {
  const ManifoldSpec compact{1, 1, +1, 1};
  const grassmann::RadialGeodesic geo(
      grassmann::make_tangent(compact, scalar1x1(complexd(1.6, 0))));
  CHECK_NOTHROW(geo.at(0.9));  // 1.44 < pi/2
  CHECK_THROWS_AS(geo.at(1.0), ChartOverflow);  // 1.6 > pi/2
}

TEST_CASE("geodesic arcs run between their endpoints at constant speed") {
  std::mt19937_64 eng(23);
  for (const ManifoldSpec& spec : kSizes) {
    const GrassmannPoint z1 = grassmann::random_point(spec, eng);
    const GrassmannPoint z2 = grassmann::random_point(spec, eng);
    const grassmann::GeodesicArc arc(z1, z2);
    CHECK((arc.at(0.0).z - z1.z).norm() <= 1e-10);
    CHECK((arc.at(1.0).z - z2.z).norm() <= 1e-10);

    // Constant speed: the metric length of the velocity is t-independent.
    const double h = 1e-6;
    auto speed2 = [&](double t) {
      const CMatrix v = (arc.at(t + h).z - arc.at(t - h).z) / (2.0 * h);
      return phases::metric_at(arc.at(t), v, v);
    };
    const double s0 = speed2(0.25);
    const double s1 = speed2(0.75);
    CHECK(std::abs(s0 - s1) <= 1e-5 * std::max(1.0, std::abs(s0)));
  }
}

TEST_CASE("geodesic arc construction demands a valid pair") {
  const ManifoldSpec compact{1, 1, +1, 1};
  const auto z1 = grassmann::make_point(compact, scalar1x1(complexd(1.0, 0)));
  const auto z2 = grassmann::make_point(compact, scalar1x1(complexd(1.0, 0)));
  CHECK_FALSE(grassmann::pair_valid(z1, z2));
  CHECK_THROWS_AS(grassmann::GeodesicArc(z1, z2), PairInvalid);
}

TEST_CASE("section at a scalar point matches the hand-computed matrix") {
  const ManifoldSpec open{1, 1, -1, 1};
  const GroupElement s = grassmann::section(grassmann::make_point(open, scalar1x1(0.6)));
  CHECK(std::abs(s.u(0, 0) - complexd(1.25, 0)) <= 1e-12);
  CHECK(std::abs(s.u(0, 1) - complexd(0.75, 0)) <= 1e-12);
  CHECK(std::abs(s.u(1, 0) - complexd(0.75, 0)) <= 1e-12);
  CHECK(std::abs(s.u(1, 1) - complexd(1.25, 0)) <= 1e-12);
  CHECK(std::abs(matfun::det_c(s.u) - complexd(1, 0)) <= 1e-12);
}

TEST_CASE("sections are pseudo-unitary, move the origin correctly, and invert") {
  std::mt19937_64 eng(24);
  for (const ManifoldSpec& spec : kSizes) {
    const GrassmannPoint o = grassmann::origin(spec);
    CHECK((grassmann::section(o).u -
           CMatrix::Identity(spec.n + spec.m, spec.n + spec.m)).norm() <= 1e-14);
    for (int i = 0; i < 10; ++i) {
      const GrassmannPoint z = grassmann::random_point(spec, eng);
      const GroupElement s = grassmann::section(z);
      CHECK(grassmann::pseudo_unitarity_residual(s) <= 1e-10);
      CHECK(std::abs(matfun::det_c(s.u) - complexd(1, 0)) <= 1e-10);
      CHECK((grassmann::act(s, o).z - z.z).norm() <= 1e-12);

      GrassmannPoint minus = z;
      minus.z = -z.z;
      const CMatrix product = grassmann::section(minus).u * s.u;
      CHECK((product - CMatrix::Identity(product.rows(), product.cols())).norm() <= 1e-10);
    }
  }
}

TEST_CASE("group inverse and multiplication satisfy the group axioms") {
  std::mt19937_64 eng(25);
  for (const ManifoldSpec& spec : kSizes) {
    const GroupElement g = grassmann::random_group_element(spec, eng);
    const GroupElement gi = grassmann::inverse(g);
    const CMatrix id = CMatrix::Identity(spec.n + spec.m, spec.n + spec.m);
    CHECK((grassmann::multiply(g, gi).u - id).norm() <= 1e-12);
    CHECK((grassmann::multiply(gi, g).u - id).norm() <= 1e-12);
    const GroupElement h = grassmann::random_group_element(spec, eng);
    CHECK(grassmann::pseudo_unitarity_residual(grassmann::multiply(g, h)) <= 1e-10);
  }
}

TEST_CASE("the fractional action composes along group multiplication") {
  std::mt19937_64 eng(26);
  for (const ManifoldSpec& spec : kSizes) {
    for (int i = 0; i < 5; ++i) {
      // Sections of interior points keep the action far from the chart edge.
      const GroupElement g1 = grassmann::section(grassmann::random_point(spec, eng, 0.5));
      const GroupElement g2 = grassmann::section(grassmann::random_point(spec, eng, 0.5));
      const GrassmannPoint x = grassmann::random_point(spec, eng, 0.5);
      const GrassmannPoint via_product = grassmann::act(grassmann::multiply(g1, g2), x);
      const GrassmannPoint via_steps = grassmann::act(g1, grassmann::act(g2, x));
      CHECK((via_product.z - via_steps.z).norm() <= 1e-9);
    }
  }
}

TEST_CASE("the action escapes the chart at a genuine pole") {
  const ManifoldSpec compact{1, 1, +1, 1};
  CMatrix w(2, 2);
  w << complexd(0, 0), complexd(1, 0), complexd(-1, 0), complexd(0, 0);
  const GroupElement g = grassmann::make_group_element(compact, w);
  CHECK_THROWS_AS(grassmann::act(g, grassmann::origin(compact)), ChartEscape);
}

TEST_CASE("compose_points equals the fractional action of the section") {
  std::mt19937_64 eng(27);
  for (const ManifoldSpec& spec : kSizes) {
    for (int i = 0; i < 10; ++i) {
      const GrassmannPoint z1 = grassmann::random_point(spec, eng);
      const GrassmannPoint z2 = grassmann::random_point(spec, eng);
      const GrassmannPoint closed = grassmann::compose_points(z1, z2);
      const GrassmannPoint action = grassmann::act(grassmann::section(z1), z2);
      CHECK((closed.z - action.z).norm() <= 1e-10);
    }
  }
  // Scalar anchor: z1 = z2 = 0.5 in the disc composes to 0.8.
  const ManifoldSpec open{1, 1, -1, 1};
  const auto z = grassmann::make_point(open, scalar1x1(0.5));
  CHECK(grassmann::compose_points(z, z).z(0, 0).real() == doctest::Approx(0.8).epsilon(1e-13));
}

TEST_CASE("random group elements satisfy the constructor invariants deterministically") {
  for (const ManifoldSpec& spec : kSizes) {
    const GroupElement a = grassmann::random_group_element(spec, 99);
    const GroupElement b = grassmann::random_group_element(spec, 99);
    CHECK((a.u - b.u).norm() == 0.0);  // same seed, same element
    CHECK(grassmann::pseudo_unitarity_residual(a) <= 1e-10);
    CHECK(std::abs(matfun::det_c(a.u) - complexd(1, 0)) <= 1e-10);
  }
}

TEST_CASE("random points respect the norm budget and the seed") {
  for (const ManifoldSpec& spec : kSizes) {
    const GrassmannPoint a = grassmann::random_point(spec, 7);
    const GrassmannPoint b = grassmann::random_point(spec, 7);
    CHECK((a.z - b.z).norm() == 0.0);
    CHECK(matfun::spectral_norm(a.z) <= 0.7 + 1e-12);
    std::mt19937_64 eng(8);
    for (int i = 0; i < 20; ++i)
      CHECK(matfun::spectral_norm(grassmann::random_point(spec, eng, 0.3).z) <= 0.3 + 1e-12);
  }
}
