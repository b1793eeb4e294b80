// ieforge: build instruction corpora from annotated IE datasets, audit them,
// and score model extractions.
//
//   ieforge build --config pipeline.json [--seed N] [--out DIR] [--datasets a,b] [--mode hard_negative|traditional]
//   ieforge audit --config pipeline.json [--out DIR] [--datasets a,b]
//   ieforge score --manifest manifest.json [--report report.json]

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ieforge/ieforge.hpp"

namespace {

struct PipelineFlags {
  std::string config;
  std::optional<uint64_t> seed;
  std::optional<std::string> out;
  std::vector<std::string> datasets;
  std::optional<std::string> mode;
  std::string stop_after = "record";
};

void add_pipeline_flags(CLI::App* cmd, PipelineFlags& flags, bool generation_flags) {
  cmd->add_option("--config", flags.config, "Pipeline config file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", flags.out, "Output directory (overrides the config)");
  cmd->add_option("--datasets", flags.datasets, "Only process these datasets")->delimiter(',');
  if (generation_flags) {
    cmd->add_option("--seed", flags.seed, "Global seed (overrides the config)");
    cmd->add_option("--mode", flags.mode, "Generation mode")
        ->check(CLI::IsMember({"hard_negative", "traditional"}));
    cmd->add_option("--stop-after", flags.stop_after, "Last stage to run")
        ->check(CLI::IsMember({"ingest", "clean", "dict", "generate", "record"}));
  }
}

ieforge::RunOptions to_options(const PipelineFlags& flags) {
  ieforge::RunOptions options;
  options.seed = flags.seed;
  if (flags.out) options.output_dir = *flags.out;
  options.datasets = flags.datasets;
  if (flags.mode) options.mode = ieforge::parse_generation_mode(*flags.mode);
  options.stop_after = ieforge::parse_stage(flags.stop_after);
  return options;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schema-batched instruction corpora for information extraction"};
  app.require_subcommand(1);

  PipelineFlags build_flags;
  auto* build = app.add_subcommand("build", "Ingest, clean, build hard-negative dictionaries, generate, record");
  add_pipeline_flags(build, build_flags, true);

  PipelineFlags audit_flags;
  auto* audit = app.add_subcommand("audit", "Ingest, clean, and write data records without generating");
  add_pipeline_flags(audit, audit_flags, false);

  std::string manifest;
  std::string report = "score_report.json";
  auto* score = app.add_subcommand("score", "Score predictions listed in a manifest");
  score->add_option("--manifest", manifest, "Evaluation manifest")->required()->check(CLI::ExistingFile);
  score->add_option("--report", report, "Report file to write");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) {
      const auto config = ieforge::load_config(build_flags.config);
      ieforge::run_build(config, to_options(build_flags), &std::cout);
    } else if (audit->parsed()) {
      const auto config = ieforge::load_config(audit_flags.config);
      ieforge::run_audit(config, to_options(audit_flags), &std::cout);
    } else if (score->parsed()) {
      ieforge::run_score(manifest, report, &std::cout);
    }
  } catch (const ieforge::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
