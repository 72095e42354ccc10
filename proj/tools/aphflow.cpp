// Command-line front end: run a scenario, run the inequality suite, or
// describe the body a scenario uses.
//
// Exit codes: 0 success, 1 invalid input, 2 runtime failure.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "aph/inequality_oracles.hpp"
#include "aph/scenario_io.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kRuntime = 2;

int report(const char* what, const std::exception& e, int code) {
  std::cerr << "aphflow: " << what << ": " << e.what() << "\n";
  return code;
}

int cmd_run(const std::string& path, bool quiet) {
  aph::ScenarioConfig cfg;
  try {
    cfg = aph::load_config(path);
  } catch (const aph::Error& e) {
    return report("invalid scenario", e, kInvalid);
  }
  const auto base = std::filesystem::path(path).parent_path();
  std::ostream* log = quiet ? nullptr : &std::cerr;
  try {
    const auto result = aph::run_scenario(cfg, log, base);
    const auto term = result.trajectory.termination;
    if (term == aph::Termination::kReachedTEnd || term == aph::Termination::kKoscConverged) {
      return kOk;
    }
    std::cerr << "aphflow: run ended early: " << aph::to_string(term) << "\n";
    return kRuntime;
  } catch (const aph::DomainError& e) {
    // Body rejected, bad point count or negatively oriented curve.
    return report("invalid scenario", e, kInvalid);
  } catch (const aph::InvalidInitialCurve& e) {
    return report("invalid initial curve", e, kInvalid);
  } catch (const std::exception& e) {
    return report("run failed", e, kRuntime);
  }
}

int cmd_check(std::uint64_t seed, std::size_t instances) {
  aph::SuiteReport report;
  try {
    report = aph::run_random_suite(seed, instances);
  } catch (const std::exception& e) {
    return ::report("inequality suite failed", e, kRuntime);
  }
  std::printf("seed %llu\n", static_cast<unsigned long long>(report.seed));
  std::printf("%-24s %10s %10s %14s  %s\n", "oracle", "instances", "passed", "max lhs/rhs",
              "result");
  for (const auto& row : report.rows) {
    std::printf("%-24s %10zu %10zu %14.10f  %s\n", row.oracle.c_str(), row.instances, row.passed,
                row.worst_ratio, row.passed == row.instances ? "PASS" : "FAIL");
  }
  return report.all_passed() ? kOk : kRuntime;
}

int cmd_describe(const std::string& path) {
  try {
    const auto cfg = aph::load_config(path);
    const auto ind = aph::Indicatrix::build(cfg.indicatrix, cfg.indicatrix_grid);
    const auto& spec = ind.spec();
    std::printf("r(theta)            = %.17g", spec.constant_term);
    for (const auto& h : spec.harmonics) {
      std::printf(" + %.17g cos %d theta + %.17g sin %d theta", h.cos_amp, h.k, h.sin_amp, h.k);
    }
    std::printf("\n");
    std::printf("isotropic           = %s\n", ind.is_isotropic() ? "yes" : "no");
    std::printf("area(isoperimetrix) = %.15g\n", ind.area_isoperimetrix());
    std::printf("Q_star = min Q      = %.15g\n", ind.q_star());
    std::printf("max Q               = %.15g\n", ind.q_max());
    std::printf("min r               = %.15g\n", ind.min_radius());
    std::printf("convexity margin    = %.15g\n", ind.convexity_margin());
    std::printf("grid                = %zu\n", ind.grid_resolution());
    return kOk;
  } catch (const aph::Error& e) {
    return report("invalid scenario", e, kInvalid);
  } catch (const std::exception& e) {
    return report("describe-indicatrix failed", e, kRuntime);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anisotropic polyharmonic curve flow"};
  app.require_subcommand(1);

  std::string run_path;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Integrate the flow described by a scenario file");
  run->add_option("config", run_path, "Scenario file")->required();
  run->add_flag("-q,--quiet", quiet, "Do not log progress to stderr");

  std::uint64_t seed = 0;
  std::size_t instances = 1000;
  auto* check = app.add_subcommand("check-inequalities", "Run the randomized inequality suite");
  check->add_option("--seed", seed, "Random seed")->required();
  check->add_option("--instances", instances, "Instances per oracle")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1'000'000}));

  std::string describe_path;
  auto* describe =
      app.add_subcommand("describe-indicatrix", "Print the constants of a scenario's indicatrix");
  describe->add_option("config", describe_path, "Scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInvalid;
  }

  if (*run) return cmd_run(run_path, quiet);
  if (*check) return cmd_check(seed, instances);
  return cmd_describe(describe_path);
}
