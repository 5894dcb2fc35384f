#include "drr/oracle/oracle.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <thread>

#include "drr/error.hpp"

namespace drr::oracle {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

const char* to_string(VerdictSource source) {
  switch (source) {
    case VerdictSource::Oracle: return "oracle";
    case VerdictSource::Cache: return "cache";
    case VerdictSource::PrecheckReject: return "precheck-reject";
  }
  return "?";
}

std::uint64_t program_hash(const std::string& program) {
  return std::hash<std::string>{}(program);
}

namespace {

class TempDir {
 public:
  TempDir() {
    std::string pattern = (fs::temp_directory_path() / "drr-XXXXXX").string();
    if (!mkdtemp(pattern.data()))
      throw OracleError("cannot create temporary directory: " + std::string(std::strerror(errno)));
    path_ = pattern;
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

}  // namespace

ExternalChecker::ExternalChecker(OracleConfig config) : config_(std::move(config)) {
  if (config_.command.empty()) throw OracleError("empty oracle command");
  if (config_.timeout_seconds <= 0) throw OracleError("oracle timeout must be positive");
  // The oracle runs inside a fresh directory, so relative paths must be
  // pinned to the caller's working directory now.
  auto& program = config_.command.front();
  if (program.find('/') != std::string::npos) program = fs::absolute(program).string();
}

CheckResult ExternalChecker::check(const std::string& program) {
  TempDir dir;
  fs::path candidate = dir.path() / config_.candidate_name;
  {
    std::ofstream out(candidate, std::ios::binary);
    out << program;
    if (!out) throw OracleError("cannot write " + candidate.string());
  }

  std::vector<char*> argv;
  for (auto& arg : config_.command) argv.push_back(const_cast<char*>(arg.c_str()));
  argv.push_back(nullptr);

  // The child reports a failed exec through this pipe; a successful exec
  // closes it.
  int report[2];
  if (pipe2(report, O_CLOEXEC) != 0) throw OracleError("pipe: " + std::string(std::strerror(errno)));

  pid_t pid = fork();
  if (pid < 0) {
    close(report[0]);
    close(report[1]);
    throw OracleError("fork: " + std::string(std::strerror(errno)));
  }
  if (pid == 0) {
    setpgid(0, 0);
    close(report[0]);
    int devnull = open("/dev/null", O_RDWR);
    if (devnull >= 0) {
      dup2(devnull, STDIN_FILENO);
      dup2(devnull, STDOUT_FILENO);
      dup2(devnull, STDERR_FILENO);
    }
    if (chdir(dir.path().c_str()) == 0) {
      setenv("DRR_CANDIDATE", candidate.c_str(), 1);
      execvp(argv[0], argv.data());
    }
    int err = errno;
    [[maybe_unused]] auto n = write(report[1], &err, sizeof err);
    _exit(127);
  }
  close(report[1]);
  int exec_errno = 0;
  ssize_t got = read(report[0], &exec_errno, sizeof exec_errno);
  close(report[0]);
  if (got == static_cast<ssize_t>(sizeof exec_errno)) {
    waitpid(pid, nullptr, 0);
    throw OracleError("cannot run oracle '" + config_.command.front() +
                      "': " + std::strerror(exec_errno));
  }

  auto deadline = Clock::now() + std::chrono::duration<double>(config_.timeout_seconds);
  auto pause = std::chrono::microseconds(100);
  int status = 0;
  while (true) {
    pid_t done = waitpid(pid, &status, WNOHANG);
    if (done == pid) break;
    if (done < 0 && errno != EINTR) throw OracleError("waitpid: " + std::string(std::strerror(errno)));
    if (Clock::now() >= deadline) {
      kill(-pid, SIGKILL);
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      return {false, true, -1};
    }
    std::this_thread::sleep_for(pause);
    pause = std::min(pause * 2, std::chrono::microseconds(5000));
  }
  // Reap anything the oracle left running in its process group.
  kill(-pid, SIGKILL);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code == 0, false, code};
}

Oracle::Oracle(std::unique_ptr<Checker> checker, bool cache)
    : checker_(std::move(checker)), cache_enabled_(cache) {}

Verdict Oracle::query(const std::string& program) {
  {
    std::lock_guard lock(mutex_);
    if (cache_enabled_) {
      if (auto it = cache_.find(program); it != cache_.end()) {
        log_.push_back({program_hash(program), it->second, false, 0.0, true});
        return {it->second, VerdictSource::Cache};
      }
    }
  }
  auto start = Clock::now();
  CheckResult result = checker_->check(program);
  double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  std::lock_guard lock(mutex_);
  if (cache_enabled_) cache_.emplace(program, result.accept);
  log_.push_back({program_hash(program), result.accept, result.timed_out, seconds, false});
  return {result.accept, VerdictSource::Oracle};
}

std::size_t Oracle::queries() const {
  std::lock_guard lock(mutex_);
  std::size_t q = 0;
  for (const auto& r : log_) q += !r.cached;
  return q;
}

std::vector<QueryRecord> Oracle::log() const {
  std::lock_guard lock(mutex_);
  return log_;
}

Metrics metrics(const std::vector<QueryRecord>& log, double wall_seconds) {
  Metrics m;
  for (const auto& r : log) m.queries += !r.cached;
  m.time_seconds = wall_seconds;
  return m;
}

}  // namespace drr::oracle
