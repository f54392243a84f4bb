#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hypsurf/acceptance.hpp"
#include "hypsurf/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"end-space classification and gluing-complex synthesis"};
  app.require_subcommand(1);

  hypsurf::RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "seed for twists and perturbations");
    sub->add_option("--output,-o", cfg.output, "output path (default stdout)");
    sub->add_option("--format", cfg.format, "json | dot | text");
    sub->add_option("--jobs", cfg.jobs, "internal parallelism (search only)");
  };

  auto* classify = app.add_subcommand("classify", "decide realizability");
  classify->add_option("--ends", cfg.endspace, "end space shorthand or JSON")->required();
  classify->add_option("--group", cfg.group,
                       "group class tag (finite|vc|countable) or builtin:NAME or table file")
      ->required();
  add_common(classify);

  auto* build = app.add_subcommand("build", "synthesize a gluing complex");
  build->add_option("--ends", cfg.endspace, "end space shorthand or JSON")->required();
  build->add_option("--group", cfg.group, "builtin:NAME or table file");
  build->add_option("--construction", cfg.construction,
                    "x | y | x_infinite | y_infinite | x_gamma");
  build->add_option("--M", cfg.truncation_M, "truncation depth (default 2)");
  build->add_option("--R", cfg.ball_radius_R, "ball radius for infinite groups (default 3)");
  add_common(build);

  auto* verify = app.add_subcommand("verify", "re-check a complex file");
  verify->add_option("input", cfg.input, "complex JSON path")->required();
  add_common(verify);

  auto* export_cmd = app.add_subcommand("export", "re-serialize a complex (json or dot)");
  export_cmd->add_option("input", cfg.input, "complex JSON path")->required();
  add_common(export_cmd);

  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  add_common(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (selftest->parsed()) {
    cfg.command = "selftest";
    return hypsurf::acceptance::run_acceptance(std::cout);
  }
  if (classify->parsed()) cfg.command = "classify";
  if (build->parsed()) cfg.command = "build";
  if (verify->parsed()) cfg.command = "verify";
  if (export_cmd->parsed()) {
    cfg.command = "export";
    if (cfg.format == "json" && !export_cmd->count("--format")) cfg.format = "dot";
  }
  return hypsurf::run(cfg);
}
