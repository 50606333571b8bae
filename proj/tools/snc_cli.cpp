// Command-line front end; talks to the toolkit through the C interface only.
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "CLI11.hpp"
#include "snc/snc.h"

namespace {

struct RunOptions {
  std::string config;
  std::string out = "out";
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

unsigned env_threads() {
  if (const char* v = std::getenv("SNC_THREADS")) {
    char* end = nullptr;
    const unsigned long n = std::strtoul(v, &end, 10);
    if (end != v && *end == '\0' && n > 0 && n < 4096) return static_cast<unsigned>(n);
    std::fprintf(stderr, "snc: ignoring invalid SNC_THREADS='%s'\n", v);
  }
  return 1;
}

void print_message(const char* message, void*) { std::fprintf(stderr, "snc: %s\n", message); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatial network calculus toolkit: regulation bounds, Monte Carlo validation, checkers"};
  app.set_version_flag("--version", std::string("snc ") + snc_version());
  app.require_subcommand(1);

  RunOptions opts;
  bool seed_given = false;
  for (const char* name : {"bounds", "simulate", "check"}) {
    auto* sub = app.add_subcommand(name, std::string("run the ") + name + " experiment of a config file");
    sub->add_option("--config", opts.config, "experiment config file")->required();
    sub->add_option("--out", opts.out, "output directory (created if missing)");
    sub->add_option("--seed", opts.seed, "master seed, overrides the config");
    sub->add_option("--threads", opts.threads, "worker threads (default: SNC_THREADS or 1)")
        ->check(CLI::Range(1u, 4096u));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto* sub = app.get_subcommands().front();
  seed_given = sub->count("--seed") > 0;
  const unsigned threads = opts.threads > 0 ? opts.threads : env_threads();

  int compliant = 1;
  const snc_status st = snc_run_experiment(sub->get_name().c_str(), opts.config.c_str(), opts.out.c_str(), opts.seed,
                                           seed_given ? 1 : 0, threads, print_message, nullptr, &compliant);
  if (st != SNC_OK) {
    std::fprintf(stderr, "snc: %s: %s\n", snc_status_name(st), snc_last_error());
    return snc_exit_code(st);
  }
  std::fprintf(stderr, "snc: %s finished; outputs in %s%s\n", sub->get_name().c_str(), opts.out.c_str(),
               compliant ? "" : " (non-compliant results reported)");
  return 0;
}
