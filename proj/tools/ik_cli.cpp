// Batch driver for the verification suites. Talks to the library strictly
// through the C interface.
#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>

#include "ik/ik.h"

namespace {

constexpr const char* kOutputEnv = "IK_OUTPUT_DIR";

struct SessionDeleter {
  void operator()(ik_session* s) const { ik_session_free(s); }
};
using SessionPtr = std::unique_ptr<ik_session, SessionDeleter>;

int fail_with(const ik_session* s, ik_status st) {
  std::fprintf(stderr, "error (%s): %s\n", ik_status_name(st),
               ik_session_last_error(s));
  return st == IK_SUITE_FAILURE ? 1 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integrable spin-chain identity checker"};
  app.require_subcommand(1);

  std::string config_path, out_dir, eta_text, suites_csv;
  std::string seed_text, tol_text, nsites_text;

  CLI::App* run = app.add_subcommand("run", "execute check suites");
  run->add_option("config", config_path,
                  "config file (key:value tree); defaults when omitted");
  run->add_option("--seed", seed_text, "RNG seed for randomized draws");
  run->add_option("--tolerance", tol_text,
                  "replace every per-case default tolerance");
  run->add_option("--out", out_dir, "directory for per-suite reports");
  run->add_option("--n-sites", nsites_text, "chain length (1..5)");
  run->add_option("--eta", eta_text, "crossing parameter as re,im");
  run->add_option("--suites", suites_csv, "comma-separated suite names");

  CLI::App* list = app.add_subcommand("list-suites", "print the registry");

  std::string describe_name;
  CLI::App* describe =
      app.add_subcommand("describe", "explain one suite");
  describe->add_option("suite", describe_name, "suite name")->required();

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    for (int i = 0; i < ik_suite_count(); ++i)
      std::printf("%s\n", ik_suite_name(i));
    return 0;
  }

  if (describe->parsed()) {
    const char* desc = ik_suite_describe(describe_name.c_str());
    if (!desc) {
      std::fprintf(stderr, "error (config-error): unknown suite '%s'\n",
                   describe_name.c_str());
      return 2;
    }
    std::printf("%s: %s\n", describe_name.c_str(), desc);
    return 0;
  }

  SessionPtr session(ik_session_new());
  if (!session) {
    std::fprintf(stderr, "error: cannot create session\n");
    return 2;
  }

  if (!config_path.empty()) {
    const ik_status st =
        ik_session_load_config_file(session.get(), config_path.c_str());
    if (st != IK_OK) return fail_with(session.get(), st);
  }

  // precedence: config file < environment < command-line flags
  if (const char* env = std::getenv(kOutputEnv); env && *env) {
    const ik_status st = ik_session_set_option(session.get(), "output", env);
    if (st != IK_OK) return fail_with(session.get(), st);
  }
  const std::pair<const char*, const std::string*> options[] = {
      {"seed", &seed_text},       {"tolerance", &tol_text},
      {"n_sites", &nsites_text},  {"eta", &eta_text},
      {"output", &out_dir},       {"suites", &suites_csv},
  };
  for (const auto& [key, value] : options) {
    if (value->empty()) continue;
    const ik_status st =
        ik_session_set_option(session.get(), key, value->c_str());
    if (st != IK_OK) return fail_with(session.get(), st);
  }

  const ik_status st = ik_session_run(session.get());
  if (st != IK_OK && st != IK_SUITE_FAILURE)
    return fail_with(session.get(), st);
  std::fputs(ik_session_summary(session.get()), stdout);
  if (st == IK_SUITE_FAILURE) {
    std::fprintf(stderr, "FAILED: %d case(s) above tolerance\n",
                 ik_session_cases_failed(session.get()));
    return 1;
  }
  return 0;
}
