#include <iostream>

#include "CLI11.hpp"
#include "gch/app.hpp"

int main(int argc, char** argv) {
  CLI::App cli{"Viscous laboratory for a generalized Camassa-Holm equation"};
  cli.require_subcommand(1);

  gch::app::Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", opt.config_path,
                              "experiment configuration (JSON)");
    if (needs_config) c->required();
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_flag("--paper-literal", opt.paper_literal,
                  "use the literal eta'(u0) initial trace in the entropy form");
    sub->add_option("--seed", opt.seed_override,
                    "override the test-function seed");
  };

  CLI::App* run = cli.add_subcommand("run", "integrate one viscous problem");
  add_common(run, true);

  CLI::App* sweep =
      cli.add_subcommand("sweep", "run the vanishing-viscosity ladder");
  add_common(sweep, true);

  CLI::App* certify =
      cli.add_subcommand("certify", "re-certify a stored trajectory");
  add_common(certify, true);
  certify
      ->add_option("--trajectory", opt.trajectory_dir,
                   "directory holding trajectory.json")
      ->required();

  CLI::App* selftest =
      cli.add_subcommand("selftest", "quick built-in smoke checks");
  (void)selftest;

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : gch::app::kExitConfigError;
  }

  try {
    if (run->parsed()) return gch::app::cmd_run(opt);
    if (sweep->parsed()) return gch::app::cmd_sweep(opt);
    if (certify->parsed()) return gch::app::cmd_certify(opt);
    return gch::app::cmd_selftest();
  } catch (const gch::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return gch::app::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gch::app::kExitCheckFailure;
  }
}
