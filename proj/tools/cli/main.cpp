#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "log.hpp"
#include "umbilic/errors.hpp"
#include "umbilic/io.hpp"

namespace cli {

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("UMBILIC_LOG");
    const std::string v = env ? env : "info";
    if (v == "quiet") return LogLevel::quiet;
    if (v == "debug") return LogLevel::debug;
    return LogLevel::info;
  }();
  return level;
}

namespace {

int exit_code_for(umbilic::ErrorCode code) {
  using umbilic::ErrorCode;
  switch (code) {
    case ErrorCode::out_of_domain:
    case ErrorCode::non_positive_warping:
      return kDomainError;
    case ErrorCode::conservation_breach:
    case ErrorCode::degenerate_plane:
    case ErrorCode::degenerate_frame:
    case ErrorCode::rank_deficient:
      return kNumericalBreach;
    case ErrorCode::not_totally_geodesic:
    case ErrorCode::tangent_to_xi:
    case ErrorCode::tau_nonzero_on_geodesic:
    case ErrorCode::not_unit_killing:
      return kCheckFailed;
    default:
      return kInputError;
  }
}

// A job config is a JSON object {"command": "check smoothness", "<flag>": value, ...}.
// It is turned back into command-line arguments so the same parser validates
// it; unknown flags are rejected there.
std::vector<std::string> config_to_args(const std::string& path) {
  const umbilic::Json j = umbilic::read_json_file(path);
  if (!j.is_object() || !j.contains("command") || !j["command"].is_string()) {
    throw umbilic::GeometryError(umbilic::ErrorCode::schema, path + ": missing string field 'command'");
  }
  if (!j.contains("schema") || j["schema"] != umbilic::kSchemaVersion) {
    throw umbilic::GeometryError(umbilic::ErrorCode::schema, path + ".schema: missing or unsupported");
  }
  std::vector<std::string> args;
  std::istringstream words(j["command"].get<std::string>());
  for (std::string w; words >> w;) args.push_back(w);
  for (const auto& [key, value] : j.items()) {
    if (key == "command" || key == "schema") continue;
    args.push_back("--" + key);
    if (value.is_string()) {
      args.push_back(value.get<std::string>());
    } else if (value.is_number() || value.is_object()) {
      args.push_back(value.dump());
    } else {
      throw umbilic::GeometryError(umbilic::ErrorCode::schema,
                                   path + "." + key + ": expected a string, number or object");
    }
  }
  return args;
}

}  // namespace

int run(std::vector<std::string> args) {
  CLI::App app{"Umbilical hypersurfaces and unit Killing fields: constructions and checks",
               "umbilic"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "umbilic 1.0");
  app.footer("A job file can replace the command: umbilic --config job.json [--out DIR]");
  Options o;

  auto chart = [&](CLI::App* c, const std::string& fallback) {
    c->add_option("--chart", o.chart, "chart preset (hopf, const, wobble, bump, warped-one, "
                                      "warped-cos, warped-exp), JSON file or inline JSON")
        ->default_str(fallback);
  };
  auto common = [&](CLI::App* c) {
    c->add_option("--out", o.out, "output directory")->capture_default_str();
    c->add_option("--grid", o.grid, "samples per axis")->check(CLI::PositiveNumber);
    c->add_option("--tol", o.tol, "verdict tolerance")->check(CLI::PositiveNumber);
    c->add_option("--seed", o.seed, "seed for randomized spot checks")->capture_default_str();
  };

  auto* inspect = app.add_subcommand("inspect", "sample metric, Christoffel symbols and curvature");
  chart(inspect, "hopf");
  common(inspect);

  auto* build = app.add_subcommand("build-umbilical", "integrate a profile and build the umbilical hypersurface");
  build->add_option("--f", o.f, "warping preset (one, cos, exp) or JSON")->default_str("cos");
  build->add_option("--theta0", o.theta0, "initial profile angle")->capture_default_str();
  build->add_option("--x10", o.x10, "initial x1")->capture_default_str();
  build->add_option("--x00", o.x00, "initial x0")->capture_default_str();
  build->add_option("--arclen", o.arclen, "profile length")->check(CLI::PositiveNumber)->capture_default_str();
  build->add_option("--step", o.step, "integration step")->check(CLI::PositiveNumber)->capture_default_str();
  build->add_option("--fiber-dim", o.fiber_dim, "fiber dimension (1 or 2)")->check(CLI::Range(1, 2));
  common(build);

  auto* conformal = app.add_subcommand("conformal", "reparameterize a warped product as conformal to a product");
  conformal->add_option("--f", o.f, "warping preset (one, cos, exp) or JSON")->default_str("exp");
  conformal->add_option("--lo", o.lo, "interval start")->capture_default_str();
  conformal->add_option("--hi", o.hi, "interval end")->capture_default_str();
  conformal->add_option("--t0", o.t0, "base point, s(t0) = 0")->capture_default_str();
  common(conformal);

  auto* check = app.add_subcommand("check", "structural checks");
  check->require_subcommand(1);
  auto* smooth = check->add_subcommand("smoothness", "smooth closure on S3 or S2xR");
  smooth->add_option("--theta", o.theta, "theta preset or JSON")->default_str("hopf");
  smooth->add_option("--b", o.b, "right endpoint")->capture_default_str();
  smooth->add_option("--target", o.target, "s3 or s2xr")->capture_default_str();
  smooth->add_option("--kmax", o.k_max, "highest even order / 2")->capture_default_str();
  common(smooth);
  auto* r3 = check->add_subcommand("r3", "R3 admissibility");
  r3->add_option("--theta", o.theta, "theta preset or JSON")->default_str("const");
  r3->add_option("--range", o.range, "sample [-range, range]")->check(CLI::PositiveNumber)->capture_default_str();
  common(r3);
  auto* sub = check->add_subcommand("submersion", "Riemannian submersion onto the base surface");
  chart(sub, "hopf");
  sub->add_option("--theta", o.theta, "theta preset or JSON (overrides --chart)");
  common(sub);
  auto* tg = check->add_subcommand("tg-surfaces", "level surface x = x0 totally geodesic?");
  chart(tg, "bump");
  tg->add_option("--x0", o.x0, "level")->capture_default_str();
  common(tg);
  auto* killing = check->add_subcommand("killing", "Killing defect of a vector field");
  chart(killing, "wobble");
  killing->add_option("--field", o.field, "xi or d<coordinate>")->capture_default_str();
  common(killing);
  auto* lemma = check->add_subcommand("lemma1", "xi-decomposition identities on a hypersurface");
  chart(lemma, "warped-cos");
  lemma->add_option("--surface", o.surface, "slice, profile or graph")->capture_default_str();
  lemma->add_option("--theta0", o.theta0, "profile angle")->capture_default_str();
  lemma->add_option("--x10", o.x10, "profile start x1")->capture_default_str();
  lemma->add_option("--arclen", o.arclen, "profile length")->check(CLI::PositiveNumber)->capture_default_str();
  lemma->add_option("--step", o.step, "integration step")->check(CLI::PositiveNumber)->capture_default_str();
  common(lemma);

  auto* geo = app.add_subcommand("geodesic", "integrate a unit-speed geodesic");
  chart(geo, "hopf");
  geo->add_option("--point", o.point, "start point, comma separated")->required();
  geo->add_option("--dir", o.dir, "direction, comma separated (normalized)")->required();
  geo->add_option("--length", o.length, "arc length")->check(CLI::PositiveNumber)->capture_default_str();
  geo->add_option("--step", o.step, "integration step")->check(CLI::PositiveNumber)->capture_default_str();
  common(geo);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (inspect->parsed()) return cmd_inspect(o);
    if (build->parsed()) return cmd_build_umbilical(o);
    if (conformal->parsed()) return cmd_conformal(o);
    if (smooth->parsed()) return cmd_check_smoothness(o);
    if (r3->parsed()) return cmd_check_r3(o);
    if (sub->parsed()) return cmd_check_submersion(o);
    if (tg->parsed()) return cmd_check_tg_surfaces(o);
    if (killing->parsed()) return cmd_check_killing(o);
    if (lemma->parsed()) return cmd_check_lemma1(o);
    if (geo->parsed()) return cmd_geodesic(o);
  } catch (const umbilic::GeometryError& e) {
    std::cerr << "error: " << e.what();
    if (e.location()) std::cerr << " (at " << umbilic::format_number(*e.location()) << ")";
    std::cerr << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace cli

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  // --config FILE replaces the command; later arguments are appended.
  if (args.size() >= 2 && args[0] == "--config") {
    try {
      auto job = cli::config_to_args(args[1]);
      job.insert(job.end(), args.begin() + 2, args.end());
      return cli::run(job);
    } catch (const umbilic::GeometryError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return cli::kInputError;
    }
  }
  return cli::run(args);
}
