// canoma: command-line front end for the cache-aided NOMA engine.
//
//   canoma optimize   --case A|B|C|D|all|split [--json]
//   canoma sweep      --variable zeta|snr_db|cache_size|omega|m|num_files
//                     (--from X --to Y --steps N | --values v1,v2,...) [--with-split]
//   canoma surface    --grid N
//   canoma validate   --samples N [--all-semantics]
//   canoma concavity  --case A|B|C|D|all --grid N
//
// Every subcommand accepts --config <scenario.json>, --out <path>, --seed and
// --workers. Exit status: 0 ok, 1 usage/config error, 2 validation failure,
// 3 numerical error.

#include "canoma/cli/commands.hpp"
#include "canoma/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

namespace {

using namespace canoma;
using cli::ExitCode;

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 42;
  int workers = 1;
};

void add_common(CLI::App* sub, CommonOptions& common) {
  sub->add_option("--config", common.config_path, "Scenario file (JSON)");
  sub->add_option("--out", common.out_path, "Output path (default stdout)");
  sub->add_option("--seed", common.seed, "Monte Carlo seed");
  sub->add_option("--workers", common.workers, "Worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cache-aided NOMA decoding-probability engine"};
  app.require_subcommand(1);
  CommonOptions common;

  std::string case_selector = "all";
  bool json = false;
  auto* optimize = app.add_subcommand("optimize", "Optimize the power split per case");
  optimize->add_option("--case", case_selector, "A, B, C, D, all or split")
      ->check(CLI::IsMember({"A", "B", "C", "D", "all", "split"}));
  optimize->add_flag("--json", json, "Emit JSON instead of CSV");
  add_common(optimize, common);

  std::string variable;
  double from = 0.0;
  double to = 1.0;
  int steps = 11;
  std::vector<double> values;
  bool with_split = false;
  auto* sweep = app.add_subcommand("sweep", "Average success versus one parameter");
  sweep->add_option("--variable", variable, "zeta, snr_db, cache_size, omega, m, num_files")
      ->required();
  auto* from_opt = sweep->add_option("--from", from, "First value");
  auto* to_opt = sweep->add_option("--to", to, "Last value");
  sweep->add_option("--steps", steps, "Number of values")->check(CLI::PositiveNumber);
  auto* values_opt = sweep->add_option("--values", values, "Explicit value list")->delimiter(',');
  values_opt->excludes(from_opt)->excludes(to_opt);
  sweep->add_flag("--with-split", with_split, "Add the optimized split-file objective");
  add_common(sweep, common);

  int surface_grid = 51;
  auto* surface = app.add_subcommand("surface", "Split-file objective on an (alpha, beta) grid");
  surface->add_option("--grid", surface_grid, "Points per axis")->check(CLI::Range(2, 100000));
  add_common(surface, common);

  std::uint64_t samples = 1'000'000;
  bool all_semantics = false;
  auto* validate = app.add_subcommand("validate", "Analytic values against Monte Carlo");
  validate->add_option("--samples", samples, "Samples per estimate");
  validate->add_flag("--all-semantics", all_semantics, "Check both chain semantics");
  add_common(validate, common);

  std::string concavity_case = "A";
  int concavity_grid = 101;
  auto* concavity = app.add_subcommand("concavity", "Objective versus alpha with concavity verdicts");
  concavity->add_option("--case", concavity_case, "A, B, C, D or all")
      ->check(CLI::IsMember({"A", "B", "C", "D", "all"}));
  concavity->add_option("--grid", concavity_grid, "Grid points per branch")
      ->check(CLI::Range(11, 1000000));
  add_common(concavity, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ExitCode::kSuccess : ExitCode::kUsageError;
  }

  try {
    const cli::Config cfg =
        common.config_path.empty() ? cli::default_config() : cli::load_config(common.config_path);

    std::unique_ptr<std::ofstream> file;
    if (!common.out_path.empty()) {
      file = std::make_unique<std::ofstream>(common.out_path, std::ios::binary);
      if (!*file) {
        std::cerr << "error: cannot open " << common.out_path << " for writing\n";
        return ExitCode::kUsageError;
      }
    }
    std::ostream& out = file ? *file : std::cout;

    int status = ExitCode::kSuccess;
    if (optimize->parsed()) {
      cli::cmd_optimize(cfg, case_selector, json, out);
    } else if (sweep->parsed()) {
      const auto var = cli::parse_sweep_variable(variable);
      if (values.empty()) {
        if (from_opt->count() == 0 || to_opt->count() == 0) {
          std::cerr << "error: sweep needs --from and --to, or --values\n";
          return ExitCode::kUsageError;
        }
        values = cli::linspace(from, to, steps);
      }
      cli::cmd_sweep(cfg, var, values, common.workers, with_split, out);
    } else if (surface->parsed()) {
      cli::cmd_surface(cfg, surface_grid, out);
    } else if (validate->parsed()) {
      mc::McConfig mc_cfg;
      mc_cfg.samples = samples;
      mc_cfg.seed = common.seed;
      mc_cfg.workers = common.workers;
      if (!cli::cmd_validate(cfg, mc_cfg, all_semantics, out)) {
        std::cerr << "validation failed\n";
        status = ExitCode::kValidationFailure;
      }
    } else if (concavity->parsed()) {
      std::ostream& verdicts = file ? std::cout : std::cerr;
      cli::cmd_concavity(cfg, concavity_case, concavity_grid, out, verdicts);
    }
    out.flush();
    return status;
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return ExitCode::kUsageError;
  } catch (const DomainError& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return ExitCode::kUsageError;
  } catch (const AccuracyError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return ExitCode::kNumericalError;
  } catch (const EvaluationError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return ExitCode::kNumericalError;
  }
}
