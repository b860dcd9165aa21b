#include "noisyevo/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "noisyevo/table_io.hpp"
#include "noisyevo/theory_report.hpp"

namespace noisyevo {

namespace {

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (token.empty())
      throw UsageError("empty entry in --grid list");
    try {
      std::size_t consumed = 0;
      const double value = std::stod(token, &consumed);
      if (consumed != token.size()) throw std::invalid_argument(token);
      grid.push_back(value);
    } catch (const std::exception&) {
      throw UsageError("bad --grid entry: '" + token + "'");
    }
  }
  if (grid.empty()) throw UsageError("--grid needs at least one value");
  return grid;
}

std::uint64_t default_master_seed() {
  if (const char* env = std::getenv("NOISYEVO_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("NOISYEVO_SEED is not an integer");
    }
  }
  return 1;
}

struct FlagValues {
  int n = 100;
  double sigma2 = 0.0;
  std::string algo;
  int runs = 100;
  std::uint64_t budget = 100'000'000ULL;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::int64_t K = 0;
  bool K_given = false;
  std::int64_t mu = 0;
  bool mu_given = false;
  std::int64_t resamples = 0;
  bool resamples_given = false;
  double ck = 1.0, cm = 3.0, ct = 2.0;
  bool margin = false;
  std::string out;
  std::string grid;
  int threads = 0;
};

void add_common_flags(CLI::App* cmd, FlagValues& v, bool with_sigma,
                      bool with_n) {
  if (with_n) cmd->add_option("--n", v.n, "problem size");
  if (with_sigma) cmd->add_option("--sigma2", v.sigma2, "noise variance");
  cmd->add_option("--algo", v.algo, "cga|ea|rerls|no-cga|no-rerls")
      ->required();
  cmd->add_option("--runs", v.runs, "independent runs per point");
  cmd->add_option("--budget", v.budget, "max noisy evaluations per run");
  cmd->add_option("--seed", v.seed, "master seed");
  cmd->add_option("--K", v.K, "manual cGA population size");
  cmd->add_option("--mu", v.mu, "EA population size");
  cmd->add_option("--resamples", v.resamples, "manual reRLS resamples");
  cmd->add_option("--ck", v.ck, "population sizing constant");
  cmd->add_option("--cm", v.cm, "resampling constant");
  cmd->add_option("--ct", v.ct, "phase budget constant");
  cmd->add_flag("--margin", v.margin, "clamp cGA frequencies to [1/n, 1-1/n]");
  cmd->add_option("--out", v.out, "output file path");
  cmd->add_option("--threads", v.threads, "worker threads (0 = auto)");
}

ExperimentConfig build_config(const CLI::App* cmd, const FlagValues& v) {
  const auto kind = algorithm_from_name(v.algo);
  if (!kind)
    throw UsageError("unknown --algo '" + v.algo +
                     "' (expected cga|ea|rerls|no-cga|no-rerls)");
  ExperimentConfig config;
  config.algo = *kind;
  config.n = v.n;
  config.sigma2 = v.sigma2;
  config.runs = v.runs;
  config.budget = v.budget;
  config.master_seed =
      cmd->count("--seed") > 0 ? v.seed : default_master_seed();
  if (cmd->count("--K") > 0) config.population_size = v.K;
  if (cmd->count("--mu") > 0) config.mu = v.mu;
  if (cmd->count("--resamples") > 0) config.resamples = v.resamples;
  config.constants = SizingConstants{v.ck, v.cm, v.ct};
  config.margin = v.margin;
  config.threads = v.threads;
  try {
    validate_config(config);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return config;
}

}  // namespace

CliCommand parse_cli(int argc, const char* const* argv) {
  CLI::App app{"noisy OneMax optimizer benchmark harness"};
  app.require_subcommand(1);
  app.fallthrough(false);

  FlagValues run_v, sweep_var_v, sweep_n_v, export_v;
  std::uint64_t theory_seed = 12345;

  CLI::App* run_cmd = app.add_subcommand("run", "one configuration");
  add_common_flags(run_cmd, run_v, true, true);

  CLI::App* sweep_var_cmd =
      app.add_subcommand("sweep-variance", "sweep sigma^2 at fixed n");
  add_common_flags(sweep_var_cmd, sweep_var_v, false, true);
  sweep_var_cmd->add_option("--grid", sweep_var_v.grid,
                            "comma list of sigma^2 values")
      ->required();

  CLI::App* sweep_n_cmd =
      app.add_subcommand("sweep-n", "sweep n with sigma^2 = sqrt(n)");
  add_common_flags(sweep_n_cmd, sweep_n_v, false, false);
  sweep_n_cmd->add_option("--grid", sweep_n_v.grid, "comma list of n values")
      ->required();

  CLI::App* theory_cmd =
      app.add_subcommand("verify-theory", "run the analytic check suite");
  theory_cmd->add_option("--seed", theory_seed,
                         "Monte Carlo seed for the sampled checks");

  CLI::App* export_cmd =
      app.add_subcommand("export-raw", "run one configuration, write raw CSV");
  add_common_flags(export_cmd, export_v, true, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    CliCommand command;
    command.kind = CommandKind::help;
    command.help_text = app.help();
    return command;
  } catch (const CLI::ParseError& e) {
    throw UsageError(std::string(e.what()) + "\n" + app.help());
  }

  CliCommand command;
  if (run_cmd->parsed()) {
    command.kind = CommandKind::run;
    command.config = build_config(run_cmd, run_v);
    if (run_cmd->count("--out") > 0) command.out = run_v.out;
  } else if (sweep_var_cmd->parsed()) {
    command.kind = CommandKind::sweep_variance;
    command.config = build_config(sweep_var_cmd, sweep_var_v);
    command.grid = parse_grid(sweep_var_v.grid);
    if (sweep_var_cmd->count("--out") == 0)
      throw UsageError("sweep-variance requires --out");
    command.out = sweep_var_v.out;
  } else if (sweep_n_cmd->parsed()) {
    command.kind = CommandKind::sweep_n;
    command.config = build_config(sweep_n_cmd, sweep_n_v);
    command.grid = parse_grid(sweep_n_v.grid);
    for (double value : command.grid)
      if (value < 1.0 || value != static_cast<double>(
                                      static_cast<std::int64_t>(value)))
        throw UsageError("sweep-n --grid entries must be positive integers");
    if (sweep_n_cmd->count("--out") == 0)
      throw UsageError("sweep-n requires --out");
    command.out = sweep_n_v.out;
  } else if (theory_cmd->parsed()) {
    command.kind = CommandKind::verify_theory;
    command.theory_seed = theory_seed;
  } else if (export_cmd->parsed()) {
    command.kind = CommandKind::export_raw;
    command.config = build_config(export_cmd, export_v);
    if (export_cmd->count("--out") == 0)
      throw UsageError("export-raw requires --out");
    command.out = export_v.out;
  }
  return command;
}

namespace {

void print_run_report(const ExperimentConfig& config,
                      const std::vector<RunRecord>& records,
                      std::ostream& out) {
  const SummaryRow row = summarize(records, config.sigma2);
  out << "algo=" << algorithm_name(config.algo) << " n=" << config.n
      << " sigma2=" << format_number(config.sigma2)
      << " runs=" << config.runs << " budget=" << config.budget
      << " seed=" << config.master_seed << "\n";
  out << "hits=" << row.hits << "/" << row.runs << "\n";
  out << "evals med=" << format_number(row.med)
      << " lq=" << format_number(row.lq) << " uq=" << format_number(row.uq)
      << "\n";
  std::vector<double> params;
  for (const auto& r : records)
    if (r.hit) params.push_back(r.param);
  if (!params.empty())
    out << "param med=" << format_number(percentile(params, 0.5)) << "\n";
}

}  // namespace

int execute_command(const CliCommand& command, std::ostream& out,
                    std::ostream& err) {
  try {
    switch (command.kind) {
      case CommandKind::help:
        out << command.help_text;
        return 0;
      case CommandKind::run: {
        const auto records = run_experiment(command.config);
        print_run_report(command.config, records, out);
        if (command.out) {
          SummaryRow row = summarize(records, command.config.sigma2);
          row.sigma2 = command.config.sigma2;
          write_summary_table({row}, *command.out);
        }
        return 0;
      }
      case CommandKind::export_raw: {
        const auto records = run_experiment(command.config);
        export_raw(records, *command.out);
        out << "wrote " << records.size() << " records to " << *command.out
            << "\n";
        return 0;
      }
      case CommandKind::sweep_variance:
      case CommandKind::sweep_n: {
        const SweepAxis axis = command.kind == CommandKind::sweep_variance
                                   ? SweepAxis::variance
                                   : SweepAxis::dimension;
        std::vector<double> grid = command.grid;
        std::sort(grid.begin(), grid.end());
        const SweepResult result = sweep(axis, grid, command.config);
        write_summary_table(result.evals, *command.out);
        const auto companion = companion_table_path(*command.out);
        write_summary_table(result.params, companion);
        out << "wrote " << *command.out << " and " << companion.string()
            << "\n";
        return 0;
      }
      case CommandKind::verify_theory: {
        const auto checks = run_theory_checks(command.theory_seed);
        out << format_theory_report(checks);
        return all_passed(checks) ? 0 : 3;
      }
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int cli_main(int argc, const char* const* argv) {
  try {
    const CliCommand command = parse_cli(argc, argv);
    return execute_command(command, std::cout, std::cerr);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace noisyevo
