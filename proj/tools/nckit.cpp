#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "nckit/error.hpp"
#include "nckit/job.hpp"

namespace {

struct Options {
  std::string job_path;
  int degree_bound = -1;
  int guard = -1;
  std::string format = "json";
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--job", o.job_path, "job file (JSON, schema 1)")
      ->required();
  cmd->add_option("--degree-bound", o.degree_bound,
                  "override the job's degree bound");
  cmd->add_option("--guard", o.guard, "override the job's guard window");
  cmd->add_option("--format", o.format, "output format: json | text")
      ->check(CLI::IsMember({"json", "text"}));
}

int run_job(const Options& o, const std::string& only_analysis) {
  if (const char* tenv = std::getenv("NCKIT_THREADS")) {
    char* end = nullptr;
    long t = std::strtol(tenv, &end, 10);
    if (end == tenv || *end != '\0' || t < 1 || t > 256) {
      std::cerr << "error: NCKIT_THREADS must be an integer in [1, 256]\n";
      return 1;
    }
  }
  std::ifstream in(o.job_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open job file '" << o.job_path << "'\n";
    return 1;
  }
  std::ostringstream buf;
  buf << in.rdbuf();

  try {
    nckit::JobSpec job = nckit::parse_job(buf.str());
    if (!only_analysis.empty()) job.analyses = {only_analysis};
    if (o.degree_bound >= 0) {
      if (o.degree_bound < 2 || o.degree_bound > 40) {
        std::cerr << "error: --degree-bound must be in [2, 40]\n";
        return 1;
      }
      job.degree_bound = static_cast<unsigned>(o.degree_bound);
    }
    if (o.guard >= 0) {
      if (o.guard < 1) {
        std::cerr << "error: --guard must be at least 1\n";
        return 1;
      }
      job.guard = static_cast<unsigned>(o.guard);
    }
    if (job.guard >= job.degree_bound) {
      std::cerr << "error: guard (" << job.guard
                << ") must be smaller than degree_bound (" << job.degree_bound
                << ")\n";
      return 1;
    }
    nckit::Report rep = nckit::run(job);
    std::cout << nckit::emit(rep, o.format);
    return rep.undecided ? 2 : 0;
  } catch (const nckit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "nckit: exact invariants of finite group actions on graded algebras"};
  app.require_subcommand(1);

  Options opts;
  CLI::App* run = app.add_subcommand("run", "run the analyses a job requests");
  add_common(run, opts);

  // Aliases that run a single analysis regardless of the job's list.
  const char* aliases[] = {"pertinency", "smallness", "trace", "auslander"};
  for (const char* a : aliases)
    add_common(app.add_subcommand(a, std::string("run only the ") + a +
                                         " analysis"),
               opts);

  CLI11_PARSE(app, argc, argv);

  std::string only;
  for (const char* a : aliases)
    if (app.get_subcommand(a)->parsed()) only = a;
  return run_job(opts, only);
}
