#include "preserverlab/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "preserverlab/canonicalize.hpp"
#include "preserverlab/check.hpp"
#include "preserverlab/harness.hpp"
#include "preserverlab/suite.hpp"

namespace plab {

namespace {

nlohmann::json load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open spec file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError("spec file '" + path + "' is not valid JSON: " + std::string(e.what()));
  }
}

void emit(RunReport report, const std::string& out_path,
          std::chrono::steady_clock::time_point started) {
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (out_path.empty())
    std::cout << to_json(report).dump(2) << '\n';
  else
    write_report_atomic(report, out_path);
}

struct CheckArgs {
  std::string spec_path;
  std::string property;
  std::string norm = "schatten:2";
  std::string direction = "both";
  int samples = 0;
  double tol = kDefaultCheckTol;
  std::uint64_t seed = 0;
  std::string out;
};

int run_check(const CheckArgs& args) {
  const auto started = std::chrono::steady_clock::now();
  const nlohmann::json doc = load_spec(args.spec_path);
  const BlackBoxMap map = make_map(mapspec_from_json(doc));

  CheckReport check;
  if (args.property == "area") {
    check = check_area(map, args.samples, args.tol, args.seed);
  } else if (args.property == "comm-norm") {
    check = check_comm_norm(map, GaugeNorm::parse(args.norm), args.samples, args.tol,
                            args.seed);
  } else if (args.property == "commutativity") {
    check = check_commutativity_bidir(map, args.samples, args.tol, args.seed);
  } else {
    check = check_projection_orthogonality(
        map, args.direction == "forward" ? Direction::Forward : Direction::Both,
        args.samples, args.tol, args.seed);
  }

  RunReport report;
  report.command = "check";
  report.spec_digest = json_digest(doc);
  report.parameters = {{"property", args.property}, {"norm", args.norm},
                       {"direction", args.direction}, {"samples", args.samples},
                       {"tol", args.tol},            {"seed", args.seed}};
  report.result = to_json(check);
  emit(std::move(report), args.out, started);

  if (check.outcome == CheckOutcome::Incomplete) return 2;
  return check.pass() ? 0 : 1;
}

struct CanonArgs {
  std::string spec_path;
  std::string target;
  std::string norm = "schatten:2";
  std::uint64_t seed = kCanonSeed;
  std::string out;
};

int run_canonicalize(const CanonArgs& args) {
  const auto started = std::chrono::steady_clock::now();
  const nlohmann::json doc = load_spec(args.spec_path);
  const BlackBoxMap map = make_map(mapspec_from_json(doc));

  RunReport report;
  report.command = "canonicalize";
  report.spec_digest = json_digest(doc);
  report.parameters = {{"target", args.target}, {"norm", args.norm}, {"seed", args.seed}};

  int code = 0;
  try {
    if (args.target == "area") {
      const CanonicalAreaForm form = map.space().dim == 2 ? area_canon_2d(map, args.seed)
                                                          : area_canon_highd(map, args.seed);
      report.result = to_json(form);
    } else if (args.target == "wigner-real") {
      report.result = to_json(wigner_real(map, args.seed));
    } else if (args.target == "comm-norm") {
      report.result =
          to_json(comm_canon_general(map, GaugeNorm::parse(args.norm), args.seed));
    } else if (args.target == "wigner-complex") {
      report.result = to_json(wigner_complex(map, args.seed));
    } else {
      const BlackBoxMap extended = extend_projection_map(map, args.seed);
      nlohmann::json result =
          to_json(comm_canon_2x2(extended, GaugeNorm::parse(args.norm), args.seed));
      result["note"] = "canonical form of the spectral extension of the projection map";
      report.result = std::move(result);
    }
  } catch (const NotAPreserver& e) {
    report.result = {{"kind", "rejection"}, {"error", "NotAPreserver"}, {"detail", e.what()}};
    code = 1;
  } catch (const PreconditionError& e) {
    report.result = {{"kind", "rejection"}, {"error", "PreconditionError"}, {"detail", e.what()}};
    code = 1;
  }

  emit(std::move(report), args.out, started);
  return code;
}

struct SuiteArgs {
  std::uint64_t seed = 1;
  int instances = 1000;
  std::string out;
};

int run_suite(const SuiteArgs& args) {
  const auto started = std::chrono::steady_clock::now();
  const SuiteReport suite = identity_suite(args.seed, args.instances);

  RunReport report;
  report.command = "suite";
  report.parameters = {{"seed", args.seed}, {"instances", args.instances}};
  report.result = to_json(suite);
  emit(std::move(report), args.out, started);
  return suite.pass ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"randomized preserver checks and canonical-form recovery"};
  app.set_version_flag("--version", std::string(kToolName) + " " + std::string(kToolVersion));
  app.require_subcommand(1);

  CheckArgs check_args;
  CLI::App* check = app.add_subcommand("check", "run a randomized property check");
  check->add_option("--spec", check_args.spec_path, "map specification file")->required();
  check->add_option("--property", check_args.property, "property to check")
      ->required()
      ->check(CLI::IsMember({"area", "comm-norm", "commutativity", "orthogonality"}));
  check->add_option("--norm", check_args.norm, "norm descriptor (comm-norm only)");
  check->add_option("--direction", check_args.direction, "orthogonality directions")
      ->check(CLI::IsMember({"forward", "both"}));
  check->add_option("--samples", check_args.samples, "number of sampled instances")
      ->required()
      ->check(CLI::PositiveNumber);
  check->add_option("--tol", check_args.tol, "relative tolerance")->required();
  check->add_option("--seed", check_args.seed, "sampling seed")->required();
  check->add_option("--out", check_args.out, "write the run report to this file");

  CanonArgs canon_args;
  CLI::App* canon = app.add_subcommand("canonicalize", "recover a canonical form");
  canon->add_option("--spec", canon_args.spec_path, "map specification file")->required();
  canon->add_option("--target", canon_args.target, "canonical form to recover")
      ->required()
      ->check(CLI::IsMember(
          {"area", "comm-norm", "wigner-real", "wigner-complex", "extend-projection"}));
  canon->add_option("--norm", canon_args.norm, "norm descriptor (comm targets)");
  canon->add_option("--seed", canon_args.seed, "probe seed")->required();
  canon->add_option("--out", canon_args.out, "write the run report to this file");

  SuiteArgs suite_args;
  CLI::App* suite = app.add_subcommand("suite", "run the identity cross-check suite");
  suite->add_option("--seed", suite_args.seed, "sampling seed");
  suite->add_option("--instances", suite_args.instances, "instances per identity")
      ->check(CLI::PositiveNumber);
  suite->add_option("--out", suite_args.out, "write the run report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (check->parsed()) return run_check(check_args);
    if (canon->parsed()) return run_canonicalize(canon_args);
    return run_suite(suite_args);
  } catch (const MissingSample& e) {
    std::cerr << "missing sample: " << e.what() << '\n';
    return 2;
  } catch (const SpecError& e) {
    std::cerr << "spec error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace plab
