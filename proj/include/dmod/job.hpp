#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dmod {

/// Malformed job description (exit code 2).
class JobError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { kExitOk = 0, kExitParse = 2, kExitBudget = 3, kExitVerify = 4 };

/// One CLI invocation or job file.
///
/// Job files hold one `key: value` per line; `#` starts a comment. Keys:
/// command, ring, ideal, f, lambda, order, format, budget, max-steps, timing,
/// name, and expect.<field> for regression checks.
struct Job {
  std::string command;
  std::vector<std::string> ring;
  std::string ideal;
  std::string f;
  std::string lambda;
  std::string order = "degrevlex";
  std::string format = "text";
  double budget_seconds = 0;  // 0: none
  std::size_t max_steps = 0;
  bool timing = false;
  std::string name;
  std::vector<std::pair<std::string, std::string>> expect;
};

Job parse_job(std::string_view text);
Job load_job_file(const std::string& path);
/// Command-specific required fields; throws JobError.
void validate(const Job& job);

struct Report {
  int exit_code = kExitOk;
  std::string output;
};

/// Runs a job and renders it in the job's format. Never throws for bad input;
/// failures are reported through the exit code and the status field.
Report run(const Job& job);

const std::vector<std::string>& job_commands();

}  // namespace dmod
