#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <regex>
#include <string>

#include "ik/ik.h"

namespace {

struct Session {
  ik_session* s = ik_session_new();
  ~Session() { ik_session_free(s); }
};

// timing lines are the only permitted difference between identical runs
std::string strip_timing(std::string text) {
  static const std::regex timing("[ ]*timing_ms:[^\n]*\n");
  return std::regex_replace(text, timing, "");
}

constexpr const char* kSmallConfig =
    "eta: [0.31, 0.07]\n"
    "n_sites: 2\n"
    "seed: 11\n"
    "suites:\n"
    "  item: qybe\n"
    "  item: unitarity\n"
    "  item: basis-count\n";

}  // namespace

TEST_CASE("registry is fixed and describable") {
  CHECK(ik_suite_count() == 20);
  for (int i = 0; i < ik_suite_count(); ++i) {
    const char* name = ik_suite_name(i);
    REQUIRE(name != nullptr);
    CHECK(ik_suite_describe(name) != nullptr);
  }
  CHECK(ik_suite_name(20) == nullptr);
  CHECK(ik_suite_name(-1) == nullptr);
  CHECK(ik_suite_describe("no-such-suite") == nullptr);
}

TEST_CASE("config errors map to status codes with messages") {
  Session ses;
  CHECK(ik_session_load_config_text(ses.s, "key without colon\n") ==
        IK_ERR_CONFIG);
  CHECK(std::string(ik_session_last_error(ses.s)).size() > 0);
  CHECK(ik_session_load_config_text(ses.s, "n_sites: 9\n") == IK_ERR_SIZE);
  CHECK(ik_session_load_config_text(
            ses.s, "suites:\n  item: not-a-suite\n") == IK_ERR_CONFIG);
  // colliding inhomogeneities
  CHECK(ik_session_load_config_text(ses.s,
                                    "n_sites: 2\n"
                                    "theta:\n"
                                    "  item: [0.1, 0.0]\n"
                                    "  item: [0.1, 0.0]\n") ==
        IK_ERR_DEGENERATE);
  CHECK(ik_session_set_option(ses.s, "bogus", "1") == IK_ERR_CONFIG);
  CHECK(ik_session_set_option(ses.s, "eta", "a,b") == IK_ERR_CONFIG);
  CHECK(ik_session_load_config_file(ses.s, "/no/such/file.cfg") == IK_ERR_IO);
  CHECK(ik_session_set_option(nullptr, "seed", "1") == IK_ERR_ARGUMENT);
}

TEST_CASE("a passing run reports its suites") {
  Session ses;
  REQUIRE(ik_session_load_config_text(ses.s, kSmallConfig) == IK_OK);
  CHECK(ik_session_run(ses.s) == IK_OK);
  CHECK(ik_session_suites_run(ses.s) == 3);
  CHECK(ik_session_cases_failed(ses.s) == 0);
  const std::string summary = ik_session_summary(ses.s);
  CHECK(summary.find("pass: true") != std::string::npos);
  const char* rep = ik_session_report(ses.s, "qybe");
  REQUIRE(rep != nullptr);
  CHECK(std::string(rep).find("suite: qybe") == 0);
  CHECK(ik_session_report(ses.s, "rtt") == nullptr);
}

TEST_CASE("identical config and seed give byte-identical reports") {
  std::string first, second, other_seed;
  for (std::string* out : {&first, &second, &other_seed}) {
    Session ses;
    REQUIRE(ik_session_load_config_text(ses.s, kSmallConfig) == IK_OK);
    if (out == &other_seed)
      REQUIRE(ik_session_set_option(ses.s, "seed", "12") == IK_OK);
    REQUIRE(ik_session_run(ses.s) == IK_OK);
    *out = strip_timing(ik_session_report(ses.s, "qybe"));
  }
  CHECK(first == second);
  CHECK(first != other_seed);
}

TEST_CASE("an unreachable tolerance turns into a suite failure") {
  Session ses;
  REQUIRE(ik_session_load_config_text(ses.s, kSmallConfig) == IK_OK);
  REQUIRE(ik_session_set_option(ses.s, "suites", "qybe") == IK_OK);
  REQUIRE(ik_session_set_option(ses.s, "tolerance", "1e-300") == IK_OK);
  CHECK(ik_session_run(ses.s) == IK_SUITE_FAILURE);
  CHECK(ik_session_cases_failed(ses.s) > 0);
  const std::string summary = ik_session_summary(ses.s);
  CHECK(summary.find("pass: false") != std::string::npos);
}

TEST_CASE("option overrides reshape the run") {
  Session ses;
  REQUIRE(ik_session_set_option(ses.s, "suites", "basis-count") == IK_OK);
  REQUIRE(ik_session_set_option(ses.s, "n_sites", "4") == IK_OK);
  REQUIRE(ik_session_set_option(ses.s, "eta", "0.28,0.04") == IK_OK);
  CHECK(ik_session_run(ses.s) == IK_OK);
  const std::string summary = ik_session_summary(ses.s);
  CHECK(summary.find("n_sites: 4") != std::string::npos);
  CHECK(summary.find("name: basis-count") != std::string::npos);
}
