#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "disembed/pipeline.h"

int main(int argc, char** argv) {
  CLI::App app{"Split complex sentences into core facts and linked context sentences."};

  std::string input;
  std::string sentence;
  std::string output;
  std::string mode = "full";
  std::string catalog;
  std::size_t max_iterations = 10;
  std::string families;
  std::size_t jobs = 1;

  auto* input_opt = app.add_option("--input", input, "annotated JSONL file (one record per line)");
  auto* sentence_opt =
      app.add_option("--sentence", sentence, "one annotated JSON record or bracketed parse");
  input_opt->excludes(sentence_opt);
  app.add_option("--output", output, "output JSONL file (default: stdout)");
  app.add_option("--mode", mode, "simplify or full")
      ->check(CLI::IsMember({"simplify", "full"}));
  app.add_option("--catalog", catalog, "rule catalog JSON (default: built-in)");
  app.add_option("--max-iterations", max_iterations, "nested rounds before giving up")
      ->check(CLI::PositiveNumber);
  app.add_option("--families", families, "comma-separated rule families to enable");
  app.add_option("--jobs", jobs, "sentences processed in parallel")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return disembed::kExitUsage;
  }

  disembed::PipelineConfig config;
  if (*input_opt) config.input_path = input;
  if (*sentence_opt) config.sentence = sentence;
  if (!output.empty()) config.output_path = output;
  config.mode = mode == "simplify" ? disembed::Mode::kSimplifyOnly : disembed::Mode::kFull;
  if (!catalog.empty()) config.catalog_path = catalog;
  config.max_iterations = max_iterations;
  config.jobs = jobs;
  try {
    if (!families.empty()) config.families = disembed::parse_family_list(families);
    disembed::validate_config(config);
  } catch (const disembed::PipelineError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return e.exit_code();
  }

  std::ios::sync_with_stdio(false);
  return disembed::run(config, std::cout, std::cerr).exit_code;
}
