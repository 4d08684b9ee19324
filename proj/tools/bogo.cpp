#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "bogo/commands.hpp"
#include "bogo/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Bogoliubov coefficients of a scalar field in a cavity with moving walls"};
  app.require_subcommand(1);
  std::string config_path, output_path, format;
  long seed = 0;
  bool verbose = false;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"spectrum", "static mode table"},
      {"resonances", "mode pairs resonant with the drive"},
      {"evolve", "first-order Bogoliubov coefficients at checkpoints"},
      {"evolve-exact", "instantaneous-basis evolution of the full transformation (1D only)"},
      {"validate", "closed-form and cross-method regression checks"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--output", output_path, "write the table here instead of stdout");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", seed, "accepted for reproducibility records; the engine is deterministic");
    sub->add_flag("--verbose", verbose, "echo the resolved configuration to stderr");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : bogo::kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  bogo::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = bogo::load_config(config_path);
    if (!format.empty()) bogo::apply_setting(cfg, "output.format", format);
    if (!output_path.empty()) cfg.output_path = output_path;
  } catch (const bogo::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return bogo::kExitConfig;
  }
  if (verbose)
    for (const auto& [k, v] : cfg.resolved()) std::cerr << k << " = " << v << '\n';

  if (cfg.output_path.empty()) return bogo::run_command(command, cfg, std::cout, std::cerr);
  std::ofstream out(cfg.output_path);
  if (!out) {
    std::cerr << "error: cannot write '" << cfg.output_path << "'\n";
    return bogo::kExitConfig;
  }
  return bogo::run_command(command, cfg, out, std::cerr);
}
