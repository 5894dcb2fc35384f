// Reduces a MicroC program while an external oracle keeps accepting it.
#include <iostream>

#include <CLI11.hpp>

#include "drr/error.hpp"
#include "drr/pipeline/pipeline.hpp"

int main(int argc, char** argv) {
  drr::pipeline::RunConfig config;
  std::string stages = "sem+syn";
  bool no_cache = false;

  CLI::App app{"Dependency-reconstructing test-case reducer for MicroC"};
  app.add_option("--input", config.input, "program to reduce")->required();
  app.add_option("--oracle", config.oracle_command,
                 "property command; exits 0 when $DRR_CANDIDATE is still interesting")
      ->required()
      ->expected(1, -1);
  app.add_option("--output", config.output, "where to write the reduced program")->required();
  app.add_option("--stages", stages, "sem+syn, sem or syn")->capture_default_str();
  app.add_flag("--ablation-no-reconstruct", config.ablation_no_reconstruct,
               "delete semantic candidates without dependency reconstruction");
  app.add_option("--timeout", config.timeout_seconds, "seconds per oracle query")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--emit-graph", config.emit_graph, "write the input's dependency graph (dot)");
  app.add_option("--metrics", config.metrics, "write the metrics JSON");
  app.add_option("--log", config.log, "write one JSON line per reduction attempt");
  app.add_flag("--no-cache", no_cache, "query the oracle even for programs seen before");
  app.add_option("--candidate-name", config.candidate_name, "file name the oracle sees")
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  config.cache = !no_cache;

  try {
    config.stages = drr::pipeline::parse_stages(stages);
    auto report = drr::pipeline::run(config);
    std::cerr << "drreduce: " << report.tokens_before << " -> " << report.tokens_after
              << " tokens, " << report.queries << " queries, " << report.time_seconds << " s\n";
    return 0;
  } catch (const drr::ConfigError& e) {
    std::cerr << "drreduce: " << e.what() << "\n";
    return 1;
  } catch (const drr::LocatedError& e) {
    std::cerr << "drreduce: " << config.input << ": " << e.what() << "\n";
    return 2;
  } catch (const drr::InitialPropertyError& e) {
    std::cerr << "drreduce: " << e.what() << "\n";
    return 3;
  } catch (const drr::OracleError& e) {
    std::cerr << "drreduce: oracle: " << e.what() << "\n";
    return 4;
  } catch (const drr::Error& e) {
    std::cerr << "drreduce: " << e.what() << "\n";
    return 1;
  }
}
