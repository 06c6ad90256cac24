#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slitsim/commands.hpp"

namespace {

slitsim::PhaseMode parse_mode(const std::string& token) {
  return token == "qm" ? slitsim::PhaseMode::qm : slitsim::PhaseMode::paper;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Batch simulator for two-channel matter-wave interference: field maps, "
      "averaged trajectories, detector-coincidence scans, and a validation "
      "suite against an independent quantum-mechanical reference."};
  app.require_subcommand(1);

  using Command = slitsim::RunManifest::Command;
  slitsim::RunManifest manifest;
  std::string mode_token;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* config_opt =
        sub->add_option("--config", manifest.config_path,
                        "Path to the plain-text configuration file");
    if (config_required) config_opt->required();
    sub->add_option("--out", manifest.out_dir,
                    "Output directory (created if missing)")
        ->required();
    sub->add_option("--mode", mode_token,
                    "Override the configured phase mode")
        ->check(CLI::IsMember({"paper", "qm"}));
  };

  auto* fields = app.add_subcommand(
      "fields", "Write fields.csv and intensity.pgm over the full grid");
  add_common(fields, true);

  auto* trajectories = app.add_subcommand(
      "trajectories",
      "Integrate quantile-seeded averaged trajectories and check their order");
  add_common(trajectories, true);
  trajectories->add_option("--seeds", manifest.seeds,
                           "Number of quantile-seeded trajectories")
      ->check(CLI::PositiveNumber);

  auto* epr = app.add_subcommand(
      "epr", "Scan the detector-pair coincidence probabilities (epr_scan.csv)");
  add_common(epr, true);

  auto* validate = app.add_subcommand(
      "validate",
      "Run the full validation suite and write validation.txt");
  add_common(validate, true);
  validate->add_option("--seeds", manifest.seeds,
                       "Number of trajectories for the order check")
      ->check(CLI::PositiveNumber);
  validate->add_option("--probe", manifest.probes,
                       "x position(s) for the informational reversal scan");

  auto* render = app.add_subcommand(
      "render", "Re-render intensity.pgm from an existing fields.csv");
  add_common(render, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (fields->parsed()) manifest.command = Command::fields;
  if (trajectories->parsed()) manifest.command = Command::trajectories;
  if (epr->parsed()) manifest.command = Command::epr;
  if (validate->parsed()) manifest.command = Command::validate;
  if (render->parsed()) manifest.command = Command::render;
  if (!mode_token.empty()) manifest.mode_override = parse_mode(mode_token);

  return slitsim::run(manifest);
}
