#include "geophase/job.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "geophase/errors.hpp"
#include "geophase/phases.hpp"
#include "geophase/version.hpp"

namespace geophase::cli {

namespace {

using grassmann::GrassmannPoint;
using grassmann::GroupElement;
using grassmann::ManifoldSpec;
using rankone::RankOnePoint;
using rankone::RankOneSpace;

constexpr double kPi = 3.14159265358979323846;

Json complex_to_json(complexd v) { return Json::array({v.real(), v.imag()}); }

Json manifold_to_json(const ManifoldSpec& spec) {
  Json j = Json::object();
  j["n"] = spec.n;
  j["m"] = spec.m;
  j["epsilon"] = spec.epsilon;
  j["weight_k"] = spec.weight_k;
  return j;
}

// Accumulates one identity's residuals across cases. A NaN residual counts as
// a failure because the comparison is written in the accepting direction.
struct IdentityCheck {
  std::string name;
  double tolerance = 0.0;
  double max_residual = 0.0;
  int cases = 0;
  int failures = 0;

  double add(double residual) {
    ++cases;
    max_residual = std::max(max_residual, residual);
    if (!(residual <= tolerance)) ++failures;
    return residual;
  }
  bool pass() const { return failures == 0; }
  Json to_json() const {
    Json j = Json::object();
    j["name"] = name;
    j["tolerance"] = tolerance;
    j["cases"] = cases;
    j["failures"] = failures;
    j["max_residual"] = max_residual;
    j["pass"] = pass();
    return j;
  }
};

struct JobContext {
  const JobSpec& spec;
  std::map<std::string, double> tol;
  std::mt19937_64 engine;
  Json cases = Json::array();
  Json errors = Json::array();
  std::vector<IdentityCheck> identities;

  // Runs one case, recording any computation error instead of aborting the
  // suite; remaining cases still run.
  template <typename F>
  void guarded(int index, const std::string& identity_tag, F&& f) {
    try {
      std::forward<F>(f)();
    } catch (const Error& e) {
      Json rec = Json::object();
      rec["case"] = index;
      rec["identity"] = identity_tag;
      rec["message"] = e.what();
      errors.push_back(std::move(rec));
    }
  }
};

std::map<std::string, double> resolve_tolerances(const std::map<std::string, double>& overrides) {
  std::map<std::string, double> tol = default_tolerances();
  for (const auto& [key, value] : overrides) {
    auto it = tol.find(key);
    if (it == tol.end()) {
      std::string known;
      for (const auto& [k, unused] : tol) {
        if (!known.empty()) known += ", ";
        known += k;
      }
      throw ParseError("unknown tolerance key \"" + key + "\"; valid keys: " + known);
    }
    if (!(value > 0.0)) throw ValidationError("tolerance \"" + key + "\" must be positive");
    it->second = value;
  }
  return tol;
}

const Json& require_field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError("input: expected a JSON object");
  auto it = j.find(key);
  if (it == j.end())
    throw ParseError(std::string("input: missing required field \"") + key + "\"");
  return *it;
}

std::pair<GrassmannPoint, GrassmannPoint> pair_from_input(const ManifoldSpec& spec,
                                                          const Json& in) {
  const CMatrix m1 = parse_matrix_json(require_field(in, "z1"), "input.z1");
  const CMatrix m2 = parse_matrix_json(require_field(in, "z2"), "input.z2");
  GrassmannPoint z1 = grassmann::make_point(spec, m1);
  GrassmannPoint z2 = grassmann::make_point(spec, m2);
  return {std::move(z1), std::move(z2)};
}

std::pair<GrassmannPoint, GrassmannPoint> draw_pair(const ManifoldSpec& spec,
                                                    std::mt19937_64& engine) {
  GrassmannPoint z1 = grassmann::random_point(spec, engine);
  GrassmannPoint z2 = grassmann::random_point(spec, engine);
  return {std::move(z1), std::move(z2)};
}

complexd draw_bounded_complex(std::mt19937_64& engine, double bound) {
  std::normal_distribution<double> n01(0.0, 1.0);
  const double re = n01(engine);
  const double im = n01(engine);
  const complexd g(re, im);
  return bound * g / (1.0 + std::abs(g));
}

// ---- area ------------------------------------------------------------------

void run_area(JobContext& ctx) {
  IdentityCheck check{"area_quadrature_vs_closed", ctx.tol.at("area_quad")};
  const ManifoldSpec& spec = ctx.spec.manifold;

  auto run_one = [&](int index, const GrassmannPoint& z1, const GrassmannPoint& z2) {
    const phases::TriangleArea closed = phases::triangle_area_closed(z1, z2);
    const phases::TriangleArea quad = phases::triangle_area_quadrature(z1, z2, ctx.spec.order);
    const double residual = check.add(std::abs(closed.value - quad.value));
    Json c = Json::object();
    c["index"] = index;
    c["identity"] = check.name;
    c["z1"] = matrix_to_json(z1.z);
    c["z2"] = matrix_to_json(z2.z);
    c["area_closed"] = closed.value;
    c["area_quadrature"] = quad.value;
    c["est_error"] = quad.est_error;
    c["residual"] = residual;
    c["pass"] = residual <= check.tolerance;
    ctx.cases.push_back(std::move(c));
  };

  if (ctx.spec.input) {
    auto [z1, z2] = pair_from_input(spec, *ctx.spec.input);
    ctx.guarded(0, check.name, [&] { run_one(0, z1, z2); });
  } else {
    for (int i = 0; i < ctx.spec.trials; ++i) {
      auto [z1, z2] = draw_pair(spec, ctx.engine);
      ctx.guarded(i, check.name, [&] { run_one(i, z1, z2); });
    }
  }
  ctx.identities.push_back(std::move(check));
}

// ---- phase -----------------------------------------------------------------

void run_phase(JobContext& ctx) {
  IdentityCheck check{"phase_vs_twice_area", ctx.tol.at("phase_area")};
  const ManifoldSpec& spec = ctx.spec.manifold;

  auto run_one = [&](int index, const GrassmannPoint& z1, const GrassmannPoint& z2) {
    const phases::Overlap overlap = phases::kernel(z1, z2);
    const phases::TriangleArea closed = phases::triangle_area_closed(z1, z2);
    const phases::ChordalDistance dist = phases::chordal_distance(z1, z2);
    const double target = 2.0 * phases::orientation_sign *
                          static_cast<double>(spec.weight_k) * closed.value;
    const double residual =
        check.add(std::abs(matfun::principal_reduce(overlap.phase - target)));
    Json c = Json::object();
    c["index"] = index;
    c["identity"] = check.name;
    c["z1"] = matrix_to_json(z1.z);
    c["z2"] = matrix_to_json(z2.z);
    c["kernel"] = complex_to_json(overlap.value);
    c["magnitude"] = overlap.magnitude;
    c["phase"] = overlap.phase;
    c["area_closed"] = closed.value;
    c["chordal_distance"] = dist.value;
    c["hyperbolic"] = dist.hyperbolic;
    c["residual"] = residual;
    c["pass"] = residual <= check.tolerance;
    ctx.cases.push_back(std::move(c));
  };

  if (ctx.spec.input) {
    auto [z1, z2] = pair_from_input(spec, *ctx.spec.input);
    ctx.guarded(0, check.name, [&] { run_one(0, z1, z2); });
  } else {
    for (int i = 0; i < ctx.spec.trials; ++i) {
      auto [z1, z2] = draw_pair(spec, ctx.engine);
      ctx.guarded(i, check.name, [&] { run_one(i, z1, z2); });
    }
  }
  ctx.identities.push_back(std::move(check));
}

// ---- cocycle ---------------------------------------------------------------

void run_cocycle(JobContext& ctx) {
  IdentityCheck bridge{"phase_cocycle_bridge", ctx.tol.at("bridge")};
  IdentityCheck scaling_closed{"dupont_scaling_closed", ctx.tol.at("dupont_closed")};
  IdentityCheck scaling_quad{"dupont_scaling_quadrature", ctx.tol.at("dupont_quad")};
  const ManifoldSpec& spec = ctx.spec.manifold;

  auto run_one = [&](int index, const GrassmannPoint& z1, const GrassmannPoint& z2) {
    const cocycles::CocycleTriple t = cocycles::cocycle_triple_report(z1, z2, ctx.spec.order);
    const double rb = bridge.add(t.bridge_residual);
    const double rc = scaling_closed.add(t.dupont_closed_residual);
    const double rq = scaling_quad.add(t.dupont_residual);
    Json c = Json::object();
    c["index"] = index;
    c["identity"] = "cocycle_triple";
    c["z1"] = matrix_to_json(z1.z);
    c["z2"] = matrix_to_json(z2.z);
    c["phi"] = t.phi;
    c["f"] = t.f;
    c["c_closed"] = t.c_closed;
    c["c_quadrature"] = t.c_quadrature;
    c["bridge_residual"] = t.bridge_residual;
    c["bridge_residual_conjugate"] = t.bridge_residual_conjugate;
    c["dupont_closed_residual"] = t.dupont_closed_residual;
    c["dupont_quadrature_residual"] = t.dupont_residual;
    c["pass"] = rb <= bridge.tolerance && rc <= scaling_closed.tolerance &&
                rq <= scaling_quad.tolerance;
    ctx.cases.push_back(std::move(c));
  };

  if (ctx.spec.input) {
    auto [z1, z2] = pair_from_input(spec, *ctx.spec.input);
    ctx.guarded(0, "cocycle_triple", [&] { run_one(0, z1, z2); });
  } else {
    for (int i = 0; i < ctx.spec.trials; ++i) {
      auto [z1, z2] = draw_pair(spec, ctx.engine);
      ctx.guarded(i, "cocycle_triple", [&] { run_one(i, z1, z2); });
    }
  }
  ctx.identities.push_back(std::move(bridge));
  ctx.identities.push_back(std::move(scaling_closed));
  ctx.identities.push_back(std::move(scaling_quad));
}

// ---- verify ----------------------------------------------------------------

void run_verify(JobContext& ctx) {
  if (ctx.spec.input)
    throw ValidationError("the verify command draws its own instances and does not accept --in");
  const ManifoldSpec& spec = ctx.spec.manifold;
  const double e = static_cast<double>(spec.epsilon);
  const double k = static_cast<double>(spec.weight_k);

  // Identity 1: quadrature area against the closed form.
  {
    IdentityCheck check{"area_quadrature_vs_closed", ctx.tol.at("area_quad")};
    for (int i = 0; i < ctx.spec.trials; ++i) {
      auto [z1, z2] = draw_pair(spec, ctx.engine);
      ctx.guarded(i, check.name, [&] {
        const phases::TriangleArea closed = phases::triangle_area_closed(z1, z2);
        const phases::TriangleArea quad =
            phases::triangle_area_quadrature(z1, z2, ctx.spec.order);
        const double residual = check.add(std::abs(closed.value - quad.value));
        Json c = Json::object();
        c["index"] = i;
        c["identity"] = check.name;
        c["z1"] = matrix_to_json(z1.z);
        c["z2"] = matrix_to_json(z2.z);
        c["area_closed"] = closed.value;
        c["area_quadrature"] = quad.value;
        c["est_error"] = quad.est_error;
        c["residual"] = residual;
        c["pass"] = residual <= check.tolerance;
        ctx.cases.push_back(std::move(c));
      });
    }
    ctx.identities.push_back(std::move(check));
  }

  // Identity 2: overlap phase equals 2 k times the area, mod 2 pi.
  {
    IdentityCheck check{"phase_vs_twice_area", ctx.tol.at("phase_area")};
    for (int i = 0; i < ctx.spec.trials; ++i) {
      auto [z1, z2] = draw_pair(spec, ctx.engine);
      ctx.guarded(i, check.name, [&] {
        const phases::Overlap overlap = phases::kernel(z1, z2);
        const phases::TriangleArea closed = phases::triangle_area_closed(z1, z2);
        const double target = 2.0 * phases::orientation_sign * k * closed.value;
        const double residual =
            check.add(std::abs(matfun::principal_reduce(overlap.phase - target)));
        Json c = Json::object();
        c["index"] = i;
        c["identity"] = check.name;
        c["z1"] = matrix_to_json(z1.z);
        c["z2"] = matrix_to_json(z2.z);
        c["phase"] = overlap.phase;
        c["area_closed"] = closed.value;
        c["residual"] = residual;
        c["pass"] = residual <= check.tolerance;
        ctx.cases.push_back(std::move(c));
      });
    }
    ctx.identities.push_back(std::move(check));
  }

  // Identity 3: exp(i eps k Phi) = exp(2 pi i k f) on pairs of sections.
  {
    IdentityCheck check{"phase_cocycle_bridge", ctx.tol.at("bridge")};
    for (int i = 0; i < ctx.spec.trials; ++i) {
      auto [z1, z2] = draw_pair(spec, ctx.engine);
      ctx.guarded(i, check.name, [&] {
        const double phi = cocycles::multiplicative_phase(z1, z2, spec.weight_k);
        const double f = cocycles::gw_cocycle(grassmann::section(z1), grassmann::section(z2));
        const complexd lhs = std::exp(complexd(0.0, e * phi));
        const complexd rhs = std::exp(complexd(0.0, 2.0 * kPi * k * f));
        const double residual = check.add(std::abs(lhs - rhs));
        Json c = Json::object();
        c["index"] = i;
        c["identity"] = check.name;
        c["z1"] = matrix_to_json(z1.z);
        c["z2"] = matrix_to_json(z2.z);
        c["phi"] = phi;
        c["f"] = f;
        c["residual"] = residual;
        c["pass"] = residual <= check.tolerance;
        ctx.cases.push_back(std::move(c));
      });
    }
    ctx.identities.push_back(std::move(check));
  }

  // Identity 4: f = (eps/pi) c with the closed-form and quadrature areas.
  {
    IdentityCheck closed_check{"dupont_scaling_closed", ctx.tol.at("dupont_closed")};
    IdentityCheck quad_check{"dupont_scaling_quadrature", ctx.tol.at("dupont_quad")};
    for (int i = 0; i < ctx.spec.trials; ++i) {
      auto [z1, z2] = draw_pair(spec, ctx.engine);
      ctx.guarded(i, "dupont_scaling", [&] {
        const GroupElement s1 = grassmann::section(z1);
        const GroupElement s2 = grassmann::section(z2);
        const double f = cocycles::gw_cocycle(s1, s2);
        const double c_closed = cocycles::dupont_cocycle_closed(s1, s2);
        const double c_quad = cocycles::dupont_cocycle(s1, s2, ctx.spec.order);
        const double rc = closed_check.add(std::abs(f - e / kPi * c_closed));
        const double rq = quad_check.add(std::abs(f - e / kPi * c_quad));
        Json c = Json::object();
        c["index"] = i;
        c["identity"] = "dupont_scaling";
        c["z1"] = matrix_to_json(z1.z);
        c["z2"] = matrix_to_json(z2.z);
        c["f"] = f;
        c["c_closed"] = c_closed;
        c["c_quadrature"] = c_quad;
        c["closed_residual"] = rc;
        c["quadrature_residual"] = rq;
        c["pass"] = rc <= closed_check.tolerance && rq <= quad_check.tolerance;
        ctx.cases.push_back(std::move(c));
      });
    }
    ctx.identities.push_back(std::move(closed_check));
    ctx.identities.push_back(std::move(quad_check));
  }

  // Identity 5: automorphy cocycle property J(g1 g2, x) = J(g1, g2 x) J(g2, x).
  // Draws that land too close to a singular block or outside the chart are
  // redrawn; the engine state still advances deterministically.
  {
    IdentityCheck check{"automorphy_product", ctx.tol.at("automorphy")};
    constexpr int kMaxAttempts = 64;
    for (int i = 0; i < ctx.spec.trials; ++i) {
      bool done = false;
      std::string last_error;
      for (int attempt = 0; attempt < kMaxAttempts && !done; ++attempt) {
        const GroupElement g1 = grassmann::random_group_element(spec, ctx.engine);
        const GroupElement g2 = grassmann::random_group_element(spec, ctx.engine);
        const GrassmannPoint x = grassmann::random_point(spec, ctx.engine);
        try {
          const complexd j_composed = cocycles::automorphy_j(grassmann::multiply(g1, g2), x);
          const GrassmannPoint g2x = grassmann::act(g2, x);
          const complexd j_product =
              cocycles::automorphy_j(g1, g2x) * cocycles::automorphy_j(g2, x);
          const double residual = check.add(std::abs(j_composed - j_product) /
                                            std::max(1.0, std::abs(j_composed)));
          Json c = Json::object();
          c["index"] = i;
          c["identity"] = check.name;
          c["g1"] = matrix_to_json(g1.u);
          c["g2"] = matrix_to_json(g2.u);
          c["x"] = matrix_to_json(x.z);
          c["j_composed"] = complex_to_json(j_composed);
          c["j_product"] = complex_to_json(j_product);
          c["residual"] = residual;
          c["pass"] = residual <= check.tolerance;
          ctx.cases.push_back(std::move(c));
          done = true;
        } catch (const Error& err) {
          last_error = err.what();
        }
      }
      if (!done) {
        Json rec = Json::object();
        rec["case"] = i;
        rec["identity"] = check.name;
        rec["message"] = "no valid draw after " + std::to_string(kMaxAttempts) +
                         " attempts; last error: " + last_error;
        ctx.errors.push_back(std::move(rec));
      }
    }
    ctx.identities.push_back(std::move(check));
  }
}

// ---- rankone ---------------------------------------------------------------

std::string space_name(RankOneSpace space) {
  switch (space) {
    case RankOneSpace::Sphere: return "sphere";
    case RankOneSpace::Disc: return "disc";
    case RankOneSpace::Plane: return "plane";
  }
  return "plane";
}

// Full three-vertex shoelace value for the flat triangle (0, z, z + zp) in the
// clockwise-positive convention; an independent arithmetic path from
// Im(z conj(zp)) / 2.
double plane_shoelace_area(complexd z, complexd zp) {
  const double x0 = 0.0, y0 = 0.0;
  const double x1 = z.real(), y1 = z.imag();
  const double x2 = z.real() + zp.real(), y2 = z.imag() + zp.imag();
  return 0.5 * (x0 * (y2 - y1) + x1 * (y0 - y2) + x2 * (y1 - y0));
}

void run_rankone(JobContext& ctx) {
  IdentityCheck quad_check{"rankone_phase_vs_area", ctx.tol.at("rankone")};
  IdentityCheck plane_check{"rankone_plane_shoelace", ctx.tol.at("rankone_plane")};
  IdentityCheck reduction_check{"rankone_matrix_reduction", ctx.tol.at("rankone_reduction")};

  auto run_curved = [&](int index, RankOneSpace space, double weight, complexd z, complexd zp) {
    const RankOnePoint p = rankone::make_rank_one(space, weight, z);
    const RankOnePoint q = rankone::make_rank_one(space, weight, zp);
    const double phase = rankone::rank1_phase(p, q);
    const double area = rankone::rank1_area(p, q, ctx.spec.order);
    const double residual = quad_check.add(std::abs(phase - 2.0 * weight * area));

    // Doubling the scalar phase must land on the matrix-domain overlap phase
    // at integer weight kappa = 2 * weight, mod 2 pi.
    const int kappa = static_cast<int>(std::lround(2.0 * weight));
    const ManifoldSpec mspec{1, 1, space == RankOneSpace::Sphere ? +1 : -1, kappa};
    CMatrix zm(1, 1), zpm(1, 1);
    zm(0, 0) = z;
    zpm(0, 0) = zp;
    const double matrix_phase = phases::normalized_overlap_phase(
        grassmann::make_point(mspec, zm), grassmann::make_point(mspec, zpm));
    const double reduction_residual = reduction_check.add(
        std::abs(matfun::principal_reduce(2.0 * phase - matrix_phase)));

    Json c = Json::object();
    c["index"] = index;
    c["identity"] = quad_check.name;
    c["space"] = space_name(space);
    c["weight"] = weight;
    c["z"] = complex_to_json(z);
    c["zp"] = complex_to_json(zp);
    c["phase"] = phase;
    c["area"] = area;
    c["residual"] = residual;
    c["reduction_residual"] = reduction_residual;
    c["pass"] = residual <= quad_check.tolerance &&
                reduction_residual <= reduction_check.tolerance;
    ctx.cases.push_back(std::move(c));
  };

  auto run_plane = [&](int index, complexd z, complexd zp) {
    const RankOnePoint p = rankone::make_rank_one(RankOneSpace::Plane, 0.0, z);
    const RankOnePoint q = rankone::make_rank_one(RankOneSpace::Plane, 0.0, zp);
    const double phase = rankone::rank1_phase(p, q);
    const double area = rankone::rank1_area(p, q, ctx.spec.order);
    const double residual = quad_check.add(std::abs(phase - 2.0 * area));
    const double shoelace_residual =
        plane_check.add(std::abs(phase - 2.0 * plane_shoelace_area(z, zp)));
    Json c = Json::object();
    c["index"] = index;
    c["identity"] = "rankone_plane";
    c["space"] = "plane";
    c["weight"] = 0.0;
    c["z"] = complex_to_json(z);
    c["zp"] = complex_to_json(zp);
    c["phase"] = phase;
    c["area"] = area;
    c["residual"] = residual;
    c["shoelace_residual"] = shoelace_residual;
    c["pass"] = residual <= quad_check.tolerance &&
                shoelace_residual <= plane_check.tolerance;
    ctx.cases.push_back(std::move(c));
  };

  if (ctx.spec.input) {
    const Json& in = *ctx.spec.input;
    const Json& space_field = require_field(in, "space");
    if (!space_field.is_string())
      throw ParseError("input.space: expected \"sphere\", \"disc\", or \"plane\"");
    const std::string name = space_field.get<std::string>();
    RankOneSpace space;
    if (name == "sphere") space = RankOneSpace::Sphere;
    else if (name == "disc") space = RankOneSpace::Disc;
    else if (name == "plane") space = RankOneSpace::Plane;
    else throw ParseError("input.space: expected \"sphere\", \"disc\", or \"plane\"");

    double weight = 0.0;
    if (space != RankOneSpace::Plane) {
      const Json& w = require_field(in, "weight");
      if (!w.is_number()) throw ParseError("input.weight: expected a number");
      weight = w.get<double>();
    }
    const complexd z = parse_complex_json(require_field(in, "z"), "input.z");
    const complexd zp = parse_complex_json(require_field(in, "zp"), "input.zp");
    // Construct once outside the guarded region so malformed values (bad
    // weight, disc point outside the unit disc) surface as input errors.
    rankone::make_rank_one(space, weight, z);
    rankone::make_rank_one(space, weight, zp);
    if (space == RankOneSpace::Plane) {
      ctx.guarded(0, "rankone_plane", [&] { run_plane(0, z, zp); });
    } else {
      ctx.guarded(0, quad_check.name, [&] { run_curved(0, space, weight, z, zp); });
    }
  } else {
    const double sphere_weights[3] = {0.5, 1.0, 1.5};
    const double disc_weights[3] = {1.0, 1.5, 2.0};
    int index = 0;
    for (int i = 0; i < ctx.spec.trials; ++i) {
      const double j_weight = sphere_weights[i % 3];
      const double k_weight = disc_weights[i % 3];
      const complexd z = draw_bounded_complex(ctx.engine, 0.7);
      const complexd zp = draw_bounded_complex(ctx.engine, 0.7);
      ctx.guarded(index, quad_check.name,
                  [&] { run_curved(index, RankOneSpace::Sphere, j_weight, z, zp); });
      ++index;
      ctx.guarded(index, quad_check.name,
                  [&] { run_curved(index, RankOneSpace::Disc, k_weight, z, zp); });
      ++index;
      ctx.guarded(index, "rankone_plane", [&] { run_plane(index, z, zp); });
      ++index;
    }
  }

  if (quad_check.cases > 0) ctx.identities.push_back(std::move(quad_check));
  if (plane_check.cases > 0) ctx.identities.push_back(std::move(plane_check));
  if (reduction_check.cases > 0) ctx.identities.push_back(std::move(reduction_check));
}

}  // namespace

std::string command_name(Command c) {
  switch (c) {
    case Command::Area: return "area";
    case Command::Phase: return "phase";
    case Command::Cocycle: return "cocycle";
    case Command::Verify: return "verify";
    case Command::RankOne: return "rankone";
  }
  return "verify";
}

std::map<std::string, double> default_tolerances() {
  return {
      {"area_quad", 1e-6},
      {"phase_area", 1e-12},
      {"bridge", 1e-9},
      {"dupont_closed", 1e-12},
      {"dupont_quad", 1e-5},
      {"automorphy", 1e-10},
      {"cocycle_additive", 1e-9},
      {"rankone", 1e-6},
      {"rankone_plane", 1e-14},
      {"rankone_reduction", 1e-12},
  };
}

complexd parse_complex_json(const Json& j, const std::string& context) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(context + ": expected a complex number as [re, im]");
  return complexd(j[0].get<double>(), j[1].get<double>());
}

CMatrix parse_matrix_json(const Json& j, const std::string& context) {
  if (!j.is_array() || j.empty())
    throw ParseError(context + ": expected a non-empty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || row.empty())
      throw ParseError(context + "[" + std::to_string(r) + "]: expected a non-empty row array");
    if (r == 0) {
      cols = row.size();
    } else if (row.size() != cols) {
      throw ParseError(context + "[" + std::to_string(r) + "]: row length " +
                       std::to_string(row.size()) + " does not match first row length " +
                       std::to_string(cols));
    }
  }
  CMatrix a(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = parse_complex_json(
          j[r][c], context + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  return a;
}

CMatrix parse_matrix_json(const std::string& text, const std::string& context) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(context + ": " + e.what());
  }
  return parse_matrix_json(j, context);
}

Json matrix_to_json(const CMatrix& a) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < a.cols(); ++c) row.push_back(complex_to_json(a(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Report run_job(const JobSpec& spec) {
  grassmann::validate(spec.manifold);
  if (spec.trials < 1) throw ValidationError("trials must be >= 1");
  if (spec.order < 4 || spec.order > 64) throw ValidationError("order must lie in [4, 64]");

  const auto start = std::chrono::steady_clock::now();
  JobContext ctx{spec, resolve_tolerances(spec.tol_overrides), std::mt19937_64(spec.seed)};

  switch (spec.command) {
    case Command::Area: run_area(ctx); break;
    case Command::Phase: run_phase(ctx); break;
    case Command::Cocycle: run_cocycle(ctx); break;
    case Command::Verify: run_verify(ctx); break;
    case Command::RankOne: run_rankone(ctx); break;
  }

  bool pass = ctx.errors.empty();
  Json identities = Json::array();
  for (const IdentityCheck& check : ctx.identities) {
    pass = pass && check.pass();
    identities.push_back(check.to_json());
  }

  const auto stop = std::chrono::steady_clock::now();
  const double wall_ms =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(stop - start).count();

  Json body = Json::object();
  body["schema"] = kReportSchema;
  body["version"] = kVersion;
  body["command"] = command_name(spec.command);
  body["manifold"] = manifold_to_json(spec.manifold);
  body["seed"] = spec.seed;
  body["trials"] = spec.trials;
  body["order"] = spec.order;
  body["tolerances"] = Json(ctx.tol);
  body["input"] = spec.input ? *spec.input : Json(nullptr);
  body["identities"] = std::move(identities);
  body["cases"] = std::move(ctx.cases);
  body["errors"] = std::move(ctx.errors);
  body["pass"] = pass;
  body["wall_time_ms"] = wall_ms;

  return {std::move(body), pass};
}

std::string report_to_string(const Report& report) {
  return report.body.dump(2) + "\n";
}

}  // namespace geophase::cli
