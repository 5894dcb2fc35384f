#include "drr/pipeline/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "drr/error.hpp"
#include "drr/frontend/parser.hpp"
#include "drr/frontend/printer.hpp"
#include "drr/frontend/sema.hpp"
#include "drr/semgraph/graph.hpp"
#include "drr/synred/synred.hpp"

namespace drr::pipeline {

using Clock = std::chrono::steady_clock;

const char* to_string(Stages stages) {
  switch (stages) {
    case Stages::SemSyn: return "sem+syn";
    case Stages::Sem: return "sem";
    case Stages::Syn: return "syn";
  }
  return "?";
}

Stages parse_stages(const std::string& text) {
  if (text == "sem+syn") return Stages::SemSyn;
  if (text == "sem") return Stages::Sem;
  if (text == "syn") return Stages::Syn;
  throw ConfigError("unknown stages '" + text + "' (expected sem+syn, sem or syn)");
}

std::size_t ReductionReport::iterations() const {
  std::size_t n = 0;
  for (const auto& s : stages) n += s.iterations.size();
  return n;
}

std::vector<redcore::IterationRecord> ReductionReport::log() const {
  std::vector<redcore::IterationRecord> all;
  for (const auto& s : stages) all.insert(all.end(), s.iterations.begin(), s.iterations.end());
  return all;
}

nlohmann::json ReductionReport::to_json() const {
  nlohmann::json stage_list = nlohmann::json::array();
  for (const auto& s : stages) stage_list.push_back(redcore::summary_json(s));
  return {{"tokens_before", tokens_before}, {"tokens_after", tokens_after},
          {"queries", queries},             {"time_seconds", time_seconds},
          {"iterations", iterations()},     {"rounds", rounds},
          {"stages", std::move(stage_list)}};
}

namespace {

frontend::SyntaxTree compile(const std::string& source) {
  auto tree = frontend::parse_source(source);
  for (const auto& d : frontend::typecheck(tree))
    if (d.severity == frontend::Severity::Error) throw CompileError(d.message, d.span);
  return tree;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void dump(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error("cannot write " + path);
}

}  // namespace

ReductionReport reduce(const std::string& source, oracle::Oracle& oracle,
                       const PipelineOptions& options) {
  if (options.stages == Stages::Syn && !options.reconstruct)
    throw ConfigError("the ablation only applies to the semantic stage");
  auto start = Clock::now();
  std::size_t queries_before = oracle.queries();
  auto tree = compile(source);

  ReductionReport report;
  report.tokens_before = frontend::count_tokens(tree);
  if (!oracle.query(frontend::print(tree)).accept)
    throw InitialPropertyError("the input does not satisfy the property");

  bool run_sem = options.stages != Stages::Syn;
  bool run_syn = options.stages != Stages::Sem;
  while (true) {
    ++report.rounds;
    std::size_t accepted = 0;
    if (run_sem && frontend::compiles(tree)) {
      auto graph = semgraph::build_graph(tree);
      auto sem = redcore::reduce_semantic(std::move(tree), std::move(graph), oracle,
                                          {options.reconstruct});
      tree = std::move(sem.tree);
      accepted += sem.report.accepted_count();
      report.stages.push_back(std::move(sem.report));
    }
    if (run_syn) {
      auto syn = synred::reduce_syntactic(std::move(tree), oracle);
      tree = std::move(syn.tree);
      accepted += syn.report.accepted_count();
      report.stages.push_back(std::move(syn.report));
    }
    // A single stage is already at its own fixpoint after one round.
    if (accepted == 0 || !(run_sem && run_syn)) break;
  }

  report.output = frontend::print(tree);
  report.tokens_after = frontend::count_tokens(tree);
  report.queries = oracle.queries() - queries_before;
  report.time_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

ReductionReport run(const RunConfig& config) {
  if (config.stages == Stages::Syn && config.ablation_no_reconstruct)
    throw ConfigError("--ablation-no-reconstruct needs the semantic stage");
  auto start = Clock::now();
  std::string source = slurp(config.input);
  if (!config.emit_graph.empty())
    dump(config.emit_graph, semgraph::to_dot(semgraph::build_graph(compile(source))));

  oracle::OracleConfig oc;
  oc.command = config.oracle_command;
  oc.timeout_seconds = config.timeout_seconds;
  oc.candidate_name = config.candidate_name;
  oracle::Oracle oracle(std::make_unique<oracle::ExternalChecker>(oc), config.cache);

  auto report = reduce(source, oracle, {config.stages, !config.ablation_no_reconstruct});
  report.time_seconds = std::chrono::duration<double>(Clock::now() - start).count();

  dump(config.output, report.output);
  if (!config.metrics.empty()) dump(config.metrics, report.to_json().dump(2) + "\n");
  if (!config.log.empty()) {
    std::ostringstream lines;
    redcore::write_jsonl(lines, report.log());
    dump(config.log, lines.str());
  }
  return report;
}

MinimalityReport verify_minimal(const std::string& program, oracle::Oracle& oracle) {
  MinimalityReport report;
  auto tree = frontend::parse_source(program);
  report.violations = redcore::semantic_minimality_sweep(tree, oracle);
  auto syn = synred::syntactic_minimality_sweep(tree, oracle);
  report.violations.insert(report.violations.end(), syn.begin(), syn.end());
  return report;
}

}  // namespace drr::pipeline
