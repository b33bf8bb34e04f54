#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "geophase/cocycles.hpp"
#include "geophase/rankone.hpp"

namespace geophase::cli {

// Reports keep their keys in insertion order so the emitted JSON reads in the
// same order the fields are documented.
using Json = nlohmann::ordered_json;

enum class Command { Area, Phase, Cocycle, Verify, RankOne };

std::string command_name(Command c);

// Tolerance keys understood by --tol, with their defaults:
//   area_quad         1e-6   quadrature vs closed-form triangle area
//   phase_area        1e-12  overlap phase vs 2 * k * area, mod 2pi
//   bridge            1e-9   |exp(i eps k Phi) - exp(2pi i k f)|
//   dupont_closed     1e-12  |f - (eps/pi) c| with the closed-form c
//   dupont_quad       1e-5   |f - (eps/pi) c| with the quadrature c
//   automorphy        1e-10  automorphy cocycle property, relative
//   cocycle_additive  1e-9   additive 2-cocycle identity for f, mod 1
//   rankone           1e-6   rank-one phase vs 2 * weight * area
//   rankone_plane     1e-14  plane phase vs twice the shoelace area
//   rankone_reduction 1e-12  rank-one phase vs the matrix phase, mod 2pi
std::map<std::string, double> default_tolerances();

struct JobSpec {
  Command command = Command::Verify;
  grassmann::ManifoldSpec manifold{1, 1, -1, 1};
  std::uint64_t seed = 0;
  int trials = 100;
  int order = 32;
  // Explicit inputs parsed from --in; when absent, instances are drawn from
  // the seed. Layout per command is documented in the README.
  std::optional<Json> input;
  std::map<std::string, double> tol_overrides;
};

struct Report {
  Json body;
  bool pass = false;
};

// Runs the job and assembles the JSON report. Per-case computation errors are
// caught, recorded in the report's "errors" array, and fail the run; malformed
// input (ParseError, ValidationError, ShapeMismatch, DomainError raised while
// constructing explicit inputs) propagates to the caller, which maps it to
// exit code 2.
Report run_job(const JobSpec& spec);

// Serialization used everywhere: a complex number is [re, im], a matrix is a
// nested row-major array of those. context prefixes error locations.
CMatrix parse_matrix_json(const Json& j, const std::string& context);
CMatrix parse_matrix_json(const std::string& text, const std::string& context);
Json matrix_to_json(const CMatrix& a);
complexd parse_complex_json(const Json& j, const std::string& context);

// Report body serialized with a stable key order and a trailing newline;
// "wall_time_ms" is the only field that varies between identical runs.
std::string report_to_string(const Report& report);

}  // namespace geophase::cli
