#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "drr/oracle/oracle.hpp"
#include "drr/redcore/report.hpp"
#include "drr/redcore/semantic.hpp"

namespace drr::pipeline {

enum class Stages { SemSyn, Sem, Syn };

const char* to_string(Stages stages);
/// Accepts "sem+syn", "sem" and "syn"; throws ConfigError otherwise.
Stages parse_stages(const std::string& text);

struct PipelineOptions {
  Stages stages = Stages::SemSyn;
  bool reconstruct = true;
};

struct RunConfig {
  std::string input;
  std::vector<std::string> oracle_command;
  std::string output;
  Stages stages = Stages::SemSyn;
  bool ablation_no_reconstruct = false;
  double timeout_seconds = 10.0;
  std::string candidate_name = "candidate.mc";
  bool cache = true;
  std::string emit_graph;  // empty: none
  std::string metrics;
  std::string log;
};

struct ReductionReport {
  std::size_t tokens_before = 0;
  std::size_t tokens_after = 0;
  std::size_t queries = 0;
  double time_seconds = 0.0;
  std::size_t rounds = 0;
  std::vector<redcore::StageReport> stages;
  std::string output;  // final program, canonical form

  std::size_t iterations() const;
  std::vector<redcore::IterationRecord> log() const;
  nlohmann::json to_json() const;
};

/// Runs the configured stages on `source`. With both stages, rounds of
/// semantic then syntactic reduction repeat until a round changes nothing.
/// Throws LexError/ParseError/CompileError for a bad input,
/// InitialPropertyError when the input fails the oracle and ConfigError for
/// the syntactic stage combined with the ablation.
ReductionReport reduce(const std::string& source, oracle::Oracle& oracle,
                       const PipelineOptions& options = {});

/// Reads the input, runs the external oracle and writes the output, and the
/// metrics, log and graph files when requested.
ReductionReport run(const RunConfig& config);

struct MinimalityReport {
  std::vector<redcore::Violation> violations;
  bool minimal() const { return violations.empty(); }
};

/// Tries every single semantic candidate deletion (with reconstruction) and
/// every single syntactic site deletion; any that passes the oracle and
/// shrinks the program is a violation.
MinimalityReport verify_minimal(const std::string& program, oracle::Oracle& oracle);

}  // namespace drr::pipeline
