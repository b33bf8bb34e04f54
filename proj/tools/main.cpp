#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "geophase/geophase.hpp"

namespace {

using geophase::cli::Command;
using geophase::cli::JobSpec;
using geophase::cli::Json;

Command parse_command(const std::string& name) {
  if (name == "area") return Command::Area;
  if (name == "phase") return Command::Phase;
  if (name == "cocycle") return Command::Cocycle;
  if (name == "verify") return Command::Verify;
  if (name == "rankone") return Command::RankOne;
  throw geophase::ParseError("unknown command \"" + name + "\"");
}

void apply_manifold(const std::string& text, geophase::grassmann::ManifoldSpec& spec) {
  std::istringstream ss(text);
  int n = 0, m = 0, eps = 0;
  char c1 = 0, c2 = 0;
  if (!(ss >> n >> c1 >> m >> c2 >> eps) || c1 != ',' || c2 != ',')
    throw geophase::ParseError("--manifold expects n,m,eps (for example 1,2,-1)");
  std::string rest;
  if (ss >> rest)
    throw geophase::ParseError("--manifold expects n,m,eps (for example 1,2,-1)");
  spec.n = n;
  spec.m = m;
  spec.epsilon = eps;
}

void apply_tolerance(const std::string& text, std::map<std::string, double>& overrides) {
  const std::size_t sep = text.find('=');
  if (sep == std::string::npos || sep == 0)
    throw geophase::ParseError("--tol expects KEY=VALUE, got \"" + text + "\"");
  const std::string key = text.substr(0, sep);
  const std::string value_text = text.substr(sep + 1);
  try {
    std::size_t used = 0;
    const double value = std::stod(value_text, &used);
    if (used != value_text.size()) throw std::invalid_argument("trailing characters");
    overrides[key] = value;
  } catch (const std::exception&) {
    throw geophase::ParseError("--tol " + key + ": \"" + value_text + "\" is not a number");
  }
}

Json load_input_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw geophase::ParseError("cannot open input file \"" + path + "\"");
  try {
    return Json::parse(file);
  } catch (const nlohmann::json::exception& e) {
    throw geophase::ParseError("input file \"" + path + "\": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent-state geometry on matrix domains: symplectic areas of geodesic "
               "triangles, overlap phases, and group cocycles, with a verification mode "
               "that cross-checks the identities tying them together."};
  app.require_subcommand(1);

  std::string manifold_text;
  std::string in_path;
  std::string out_path;
  std::vector<std::string> tol_args;
  JobSpec spec;

  const struct {
    const char* name;
    const char* help;
  } commands[] = {
      {"area", "Symplectic area of the geodesic triangle (origin, Z1, Z2), closed form and "
               "quadrature"},
      {"phase", "Overlap phase between coherent states with the kernel, area, and distance"},
      {"cocycle", "Multiplicative phase, determinant 2-cocycle, and area cocycle on a pair"},
      {"verify", "Draw random instances and check every identity class at its tolerance"},
      {"rankone", "Scalar sphere/disc/plane reductions: phases, areas, and matrix cross-checks"},
  };
  for (const auto& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->add_option("--manifold", manifold_text,
                    "Chart shape and signature as n,m,eps (default 1,1,-1)");
    sub->add_option("--k", spec.manifold.weight_k, "Positive integer kernel weight (default 1)");
    sub->add_option("--seed", spec.seed, "Seed for the deterministic instance generator");
    sub->add_option("--trials", spec.trials, "Random instances per identity (default 100)");
    sub->add_option("--order", spec.order, "Gauss-Legendre order per axis, 4..64 (default 32)");
    sub->add_option("--in", in_path, "JSON file with explicit inputs instead of random draws");
    sub->add_option("--out", out_path, "Write the JSON report to this file instead of stdout");
    sub->add_option("--tol", tol_args, "Tolerance override KEY=VALUE; repeatable");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    spec.command = parse_command(app.get_subcommands().front()->get_name());
    if (!manifold_text.empty()) apply_manifold(manifold_text, spec.manifold);
    for (const std::string& arg : tol_args) apply_tolerance(arg, spec.tol_overrides);
    if (!in_path.empty()) spec.input = load_input_file(in_path);

    const geophase::cli::Report report = geophase::cli::run_job(spec);
    const std::string text = geophase::cli::report_to_string(report);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path);
      if (!out) throw geophase::ParseError("cannot open output file \"" + out_path + "\"");
      out << text;
    }
    return report.pass ? 0 : 1;
  } catch (const geophase::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
