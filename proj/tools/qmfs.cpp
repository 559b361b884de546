#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "qmfs/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"quaternionic method of fundamental solutions for Maxwell problems"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_path;
  int seed = 0;  // reserved; the pipeline is deterministic

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "problem config (JSON)")->required();
    cmd->add_option("--output", output_path, "override the config's output path");
    cmd->add_option("--seed", seed, "reserved for future stochastic components");
  };

  CLI::App* solve = app.add_subcommand("solve", "single solve (first N of the config)");
  CLI::App* sweep = app.add_subcommand("sweep", "solve for every N in the config");
  CLI::App* verify = app.add_subcommand("verify", "run the verification checks");
  add_common(solve);
  add_common(sweep);
  add_common(verify);

  CLI11_PARSE(app, argc, argv);

  std::optional<std::filesystem::path> output_override;
  if (!output_path.empty()) output_override = output_path;

  if (verify->parsed()) return qmfs::driver::verify_suite(config_path, std::cout, std::cerr);

  std::optional<int> single_n;
  if (solve->parsed()) {
    try {
      single_n = qmfs::driver::load_config(config_path).n_values.front();
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return 1;
    }
  }
  return qmfs::driver::run(config_path, output_override, std::cerr, single_n);
}
