#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace drr::oracle {

struct OracleConfig {
  std::vector<std::string> command;  // program followed by its arguments
  double timeout_seconds = 10.0;
  std::string candidate_name = "candidate.mc";
};

struct CheckResult {
  bool accept = false;
  bool timed_out = false;
  int exit_code = -1;
};

/// Decides the property for one program text.
class Checker {
 public:
  virtual ~Checker() = default;
  virtual CheckResult check(const std::string& program) = 0;
};

/// Writes the program into a fresh temporary directory and runs the
/// configured command there with DRR_CANDIDATE pointing at it. Exit code 0
/// within the timeout accepts. Throws OracleError when the command cannot
/// be started or the directory cannot be created.
class ExternalChecker : public Checker {
 public:
  explicit ExternalChecker(OracleConfig config);
  CheckResult check(const std::string& program) override;

 private:
  OracleConfig config_;
};

/// In-process property, for tests and experiments that would otherwise
/// spawn thousands of processes.
class FunctionChecker : public Checker {
 public:
  explicit FunctionChecker(std::function<bool(const std::string&)> predicate)
      : predicate_(std::move(predicate)) {}
  CheckResult check(const std::string& program) override {
    bool ok = predicate_(program);
    return {ok, false, ok ? 0 : 1};
  }

 private:
  std::function<bool(const std::string&)> predicate_;
};

enum class VerdictSource { Oracle, Cache, PrecheckReject };

const char* to_string(VerdictSource source);

struct Verdict {
  bool accept = false;
  VerdictSource source = VerdictSource::Oracle;
};

struct QueryRecord {
  std::uint64_t hash = 0;
  bool accept = false;
  bool timed_out = false;
  double seconds = 0.0;
  bool cached = false;
};

/// Counts, caches and times queries against a checker. Verdicts are cached
/// by program bytes, which assumes the property is deterministic.
class Oracle {
 public:
  explicit Oracle(std::unique_ptr<Checker> checker, bool cache = true);

  Verdict query(const std::string& program);

  /// Number of real (uncached) checks so far.
  std::size_t queries() const;
  std::vector<QueryRecord> log() const;

 private:
  std::unique_ptr<Checker> checker_;
  bool cache_enabled_;
  mutable std::mutex mutex_;
  std::unordered_map<std::string, bool> cache_;
  std::vector<QueryRecord> log_;
};

struct Metrics {
  std::size_t queries = 0;
  double time_seconds = 0.0;
};

/// Q counts uncached records; T is the pipeline wall time, passed in since
/// it also covers analysis outside the oracle.
Metrics metrics(const std::vector<QueryRecord>& log, double wall_seconds);

std::uint64_t program_hash(const std::string& program);

}  // namespace drr::oracle
