#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dtsched_cli/cli.hpp"

using dtsched::cli::CliConfig;
using dtsched::cli::OutputFormat;

namespace {

void add_inputs(CLI::App* cmd, CliConfig& cfg, bool required) {
  auto* m = cmd->add_option("--machine", cfg.machine_path, "Machine JSON")->check(CLI::ExistingFile);
  auto* o = cmd->add_option("--order", cfg.order_path, "Order JSON")->check(CLI::ExistingFile);
  auto* p = cmd->add_option("--prices", cfg.prices_path, "Tariff JSON")->check(CLI::ExistingFile);
  if (required) {
    m->required();
    o->required();
    p->required();
  }
}

void add_outputs(CLI::App* cmd, CliConfig& cfg, std::string& format) {
  cmd->add_option("--out", cfg.out_path, "Output file (default: stdout)");
  cmd->add_option("--format", format, "json or csv (csv applies to timelines)")
      ->check(CLI::IsMember({"json", "csv"}))
      ->default_str("json");
}

void add_window(CLI::App* cmd, CliConfig& cfg) {
  cmd->add_option("--window", cfg.window, "Look-ahead window W")->check(CLI::Range(1, 64));
}

void add_data_dir(CLI::App* cmd, CliConfig& cfg) {
  cmd->add_option("--data-dir", cfg.data_dir, "History store directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-aware batch scheduling with a limited look-ahead controller"};
  app.require_subcommand(1);
  CliConfig cfg;
  std::string format = "json";

  auto* plan = app.add_subcommand("plan", "Exhaustive open-loop optimum");
  add_inputs(plan, cfg, true);
  add_outputs(plan, cfg, format);

  auto* run = app.add_subcommand("run", "Closed-loop look-ahead run (stored)");
  add_inputs(run, cfg, true);
  run->add_option("--disturbances", cfg.disturbances_path, "Disturbance list JSON")->check(CLI::ExistingFile);
  add_window(run, cfg);
  add_outputs(run, cfg, format);
  add_data_dir(run, cfg);

  auto* bench = app.add_subcommand("benchmark", "Utilisation-first benchmark run (stored)");
  add_inputs(bench, cfg, true);
  add_outputs(bench, cfg, format);
  add_data_dir(bench, cfg);

  auto* cmp = app.add_subcommand("compare", "Compare two stored runs or a run against the benchmark");
  cmp->add_option("ids", cfg.run_ids, "Stored run ids");
  cmp->add_option("--against", cfg.against, "Reference controller (benchmark)")
      ->check(CLI::IsMember({"benchmark"}));
  add_inputs(cmp, cfg, false);
  cmp->add_option("--disturbances", cfg.disturbances_path, "Disturbance list JSON")->check(CLI::ExistingFile);
  add_window(cmp, cfg);
  add_outputs(cmp, cfg, format);
  add_data_dir(cmp, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : dtsched::cli::kExitInput;
  }
  cfg.format = format == "csv" ? OutputFormat::kCsv : OutputFormat::kJson;

  if (*plan) return dtsched::cli::cmd_plan(cfg, std::cout, std::cerr);
  if (*run) return dtsched::cli::cmd_run(cfg, std::cout, std::cerr);
  if (*bench) return dtsched::cli::cmd_benchmark(cfg, std::cout, std::cerr);
  return dtsched::cli::cmd_compare(cfg, std::cout, std::cerr);
}
