#include "drr/redcore/report.hpp"

namespace drr::redcore {

nlohmann::json to_json(const IterationRecord& r) {
  nlohmann::json j{{"stage", r.stage},
                   {"iter", r.iter},
                   {"candidate_ids", r.candidate_ids},
                   {"verdict", r.accept ? "accept" : "reject"},
                   {"source", oracle::to_string(r.source)},
                   {"tokens_after", r.tokens_after},
                   {"elapsed_ms", r.elapsed_ms},
                   {"compiles", r.compiles}};
  if (r.no_progress) j["no_progress"] = true;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

nlohmann::json summary_json(const StageReport& report) {
  return {{"stage", report.stage},
          {"tokens_before", report.tokens_before},
          {"tokens_after", report.tokens_after},
          {"queries", report.queries},
          {"iterations", report.iterations.size()},
          {"accepted", report.accepted_count()},
          {"time_seconds", report.seconds}};
}

void write_jsonl(std::ostream& out, const std::vector<IterationRecord>& records) {
  for (const auto& r : records) out << to_json(r).dump() << "\n";
}

}  // namespace drr::redcore
