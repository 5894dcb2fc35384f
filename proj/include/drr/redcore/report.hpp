#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "drr/oracle/oracle.hpp"
#include "drr/redcore/ddmin.hpp"

namespace drr::redcore {

/// One reduction attempt. Attempts that never reach the oracle (failed
/// reconstruction, no token decrease) are logged too, with their source.
struct IterationRecord {
  std::string stage;  // "sem" or "syn"
  std::size_t iter = 0;
  CandidateList candidate_ids;
  bool accept = false;
  oracle::VerdictSource source = oracle::VerdictSource::Oracle;
  bool no_progress = false;  // rejected because the token count would not drop
  std::size_t tokens_after = 0;
  double elapsed_ms = 0.0;
  bool compiles = false;  // the attempted program typechecks
  std::string note;
};

struct StageReport {
  std::string stage;
  std::size_t tokens_before = 0;
  std::size_t tokens_after = 0;
  std::size_t queries = 0;
  double seconds = 0.0;
  std::vector<IterationRecord> iterations;
  /// Accepted programs in order, for inspection of intermediates.
  std::vector<std::string> accepted;

  std::size_t accepted_count() const { return accepted.size(); }
};

nlohmann::json to_json(const IterationRecord& record);
nlohmann::json summary_json(const StageReport& report);

/// One JSON object per line.
void write_jsonl(std::ostream& out, const std::vector<IterationRecord>& records);

}  // namespace drr::redcore
