#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <future>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "dmod/job.hpp"

namespace {

// Runs one job file in a child process and returns (exit code, output).
std::pair<int, std::string> run_child(const std::string& self, const std::string& path, const std::string& format) {
  std::string cmd = "'" + self + "' --job '" + path + "' --format " + format + " 2>&1";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) return {dmod::kExitParse, "cannot start child for " + path + "\n"};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe.get())) > 0) out.append(buf, n);
  int status = pclose(pipe.release());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : dmod::kExitVerify, out};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"D-module localization, b-functions and multiplicities over Q"};
  app.set_version_flag("--version", "dmod 0.1");
  dmod::Job job;
  std::string ring, command, format;
  std::vector<std::string> job_files, expects;
  std::size_t jobs = 1;
  double budget = -1;
  if (const char* env = std::getenv("DMOD_BUDGET")) budget = std::atof(env);

  app.add_option("command", command, "gb | ann-fs | bfun | localize | lochom | lambda-mod | mult | verify");
  app.add_option("--ring", ring, "x-variables, e.g. x,y");
  app.add_option("--ideal", job.ideal, "generators, e.g. \"x*dx^2+dy\"");
  app.add_option("--f", job.f, "polynomial f");
  app.add_option("--lambda", job.lambda, "rational lambda for lambda-mod");
  app.add_option("--order", job.order, "gb order: degrevlex | weight:t=1,dt=-1 | elim:x,dx");
  app.add_option("--budget", budget, "wall-clock seconds per job (default: $DMOD_BUDGET)");
  app.add_option("--max-steps", job.max_steps, "reduction steps per Groebner basis");
  app.add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--job", job_files, "job file(s); overrides the flags above");
  app.add_option("--jobs", jobs, "parallel processes for several job files")->check(CLI::PositiveNumber);
  app.add_option("--expect", expects, "field=value check, e.g. b=(s+1)*(s+2)");
  app.add_flag("--timing", job.timing, "report wall time (output is then not reproducible)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : dmod::kExitParse;
  }

  if (job_files.size() > 1) {
    std::vector<std::future<std::pair<int, std::string>>> pending;
    std::vector<std::pair<int, std::string>> done(job_files.size());
    const std::string fmt = format.empty() ? "text" : format;
    for (std::size_t i = 0; i < job_files.size(); i += jobs) {
      for (std::size_t k = i; k < std::min(i + jobs, job_files.size()); ++k)
        pending.push_back(std::async(std::launch::async, run_child, std::string(argv[0]), job_files[k], fmt));
      for (std::size_t k = i; k < std::min(i + jobs, job_files.size()); ++k) done[k] = pending[k].get();
    }
    int worst = 0;
    for (const auto& [rc, out] : done) {
      std::cout << out;
      worst = std::max(worst, rc);
    }
    return worst;
  }

  try {
    if (job_files.size() == 1) {
      auto timing = job.timing;
      job = dmod::load_job_file(job_files[0]);
      job.timing = job.timing || timing;
    } else {
      job.command = command;
      job.ring = ring.empty() ? std::vector<std::string>{} : std::vector<std::string>{};
      if (!ring.empty()) {
        std::string cur;
        for (char c : ring + ",") {
          if (c == ',') {
            if (!cur.empty()) job.ring.push_back(cur);
            cur.clear();
          } else if (c != ' ') {
            cur += c;
          }
        }
      }
      for (const auto& e : expects) {
        auto eq = e.find('=');
        if (eq == std::string::npos) throw dmod::JobError("--expect needs field=value");
        job.expect.emplace_back(e.substr(0, eq), e.substr(eq + 1));
      }
    }
    if (!format.empty()) job.format = format;
    if (budget > 0 && job.budget_seconds == 0) job.budget_seconds = budget;
  } catch (const dmod::JobError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dmod::kExitParse;
  }
  auto rep = dmod::run(job);
  std::cout << rep.output;
  return rep.exit_code;
}
