#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "wnc/cli.hpp"

int main(int argc, char** argv) {
  using wnc::cli::Format;
  CLI::App app{"Maximum multiflow and fractional scheduling for wireless networks with network coding"};
  app.require_subcommand(1);

  wnc::cli::RunConfig cfg;
  const std::map<std::string, wnc::Mode> modes{{"plain", wnc::Mode::plain}, {"coding", wnc::Mode::coding}};
  const std::map<std::string, Format> formats{{"json", Format::json}, {"table", Format::table}};

  auto common = [&](CLI::App* sub) {
    sub->add_option("instance", cfg.instance_path, "Network instance file (JSON)")->required();
    sub->add_option("--format", cfg.format, "Output format: json or table")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--cap", cfg.enumeration_cap, "Vertex cap for exact set enumeration")
        ->capture_default_str();
  };

  auto* solve = app.add_subcommand("solve", "Maximum multiflow LP");
  common(solve);
  solve->add_option("--mode", cfg.mode, "plain or coding")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));

  auto* compare = app.add_subcommand("compare", "Throughput with and without coding");
  common(compare);

  auto* inspect = app.add_subcommand("inspect", "Conflict graph statistics and schedulable sets");
  common(inspect);

  auto* schedule = app.add_subcommand("schedule", "Fractional schedule for a link demand");
  common(schedule);
  schedule->add_option("--demand", cfg.demand_path, "Demand file (JSON)")->required();
  schedule->add_option("--algorithm", cfg.algorithm, "cfs or exact")
      ->check(CLI::IsMember({"cfs", "exact"}))
      ->capture_default_str();
  schedule->add_option("--mode", cfg.mode, "plain or coding")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));

  auto* demo = app.add_subcommand("demo", "Write the three-node relay example instance");
  demo->add_option("--out", cfg.out_dir, "Output directory")->capture_default_str();
  demo->add_option("--format", cfg.format, "Output format: json or table")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : wnc::cli::kValidation;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  return wnc::cli::run(cfg, std::cout, std::cerr);
}
