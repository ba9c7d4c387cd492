#include "ik/ik.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "suites.hpp"

using namespace ik;

struct ik_session {
  RunConfig cfg = default_config();
  std::string last_error;
  // post-run state
  std::vector<SuiteReport> reports;
  std::map<std::string, std::string> report_text;
  std::string summary_text;
  // scratch buffer so returned pointers outlive the call
  mutable std::string lookup_buffer;
};

namespace {

ik_status to_status(const std::exception& e, ik_session* s) {
  if (s) s->last_error = e.what();
  if (dynamic_cast<const ConfigParse*>(&e)) return IK_ERR_CONFIG;
  if (dynamic_cast<const SizeGuard*>(&e)) return IK_ERR_SIZE;
  if (dynamic_cast<const DegenerateParams*>(&e)) return IK_ERR_DEGENERATE;
  if (dynamic_cast<const NearSingular*>(&e)) return IK_ERR_SINGULAR;
  if (dynamic_cast<const SingularTransfer*>(&e)) return IK_ERR_SINGULAR;
  if (dynamic_cast<const NoConvergence*>(&e)) return IK_ERR_NO_CONVERGENCE;
  if (dynamic_cast<const IndexOutOfRange*>(&e)) return IK_ERR_INDEX;
  if (dynamic_cast<const std::ios_base::failure*>(&e)) return IK_ERR_IO;
  if (dynamic_cast<const std::filesystem::filesystem_error*>(&e))
    return IK_ERR_IO;
  return IK_ERR_INTERNAL;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string part;
  while (std::getline(in, part, ',')) {
    size_t a = part.find_first_not_of(" \t");
    size_t b = part.find_last_not_of(" \t");
    if (a != std::string::npos) out.push_back(part.substr(a, b - a + 1));
  }
  return out;
}

Cplx parse_eta_option(const std::string& v) {
  if (!v.empty() && v.front() == '[') return parse_complex(v);
  const auto parts = split_csv(v);
  if (parts.size() == 1) return Cplx{parse_real(parts[0]), 0.0};
  if (parts.size() == 2)
    return Cplx{parse_real(parts[0]), parse_real(parts[1])};
  throw ConfigParse("eta must be '[re, im]' or 're,im', got '" + v + "'");
}

KvNode summary_tree(const ik_session& s) {
  KvNode root;
  root.add("version", kVersion);
  root.children.push_back({"config", config_to_tree(s.cfg)});
  KvNode& suites = root.add_child("suites");
  int failed_suites = 0, failed_cases = 0;
  for (const auto& rep : s.reports) {
    KvNode& node = suites.add_child("suite");
    node.add("name", rep.suite);
    node.add("cases", std::to_string(rep.cases.size()));
    node.add("failed", std::to_string(rep.failed_count()));
    node.add("pass", rep.passed() ? "true" : "false");
    if (!rep.passed()) ++failed_suites;
    failed_cases += rep.failed_count();
  }
  KvNode& total = root.add_child("total");
  total.add("suites", std::to_string(s.reports.size()));
  total.add("failed_suites", std::to_string(failed_suites));
  total.add("failed_cases", std::to_string(failed_cases));
  total.add("pass", failed_cases == 0 ? "true" : "false");
  return root;
}

}  // namespace

extern "C" {

const char* ik_version(void) { return kVersion; }

const char* ik_status_name(ik_status status) {
  switch (status) {
    case IK_OK: return "ok";
    case IK_SUITE_FAILURE: return "suite-failure";
    case IK_ERR_CONFIG: return "config-error";
    case IK_ERR_DEGENERATE: return "degenerate-parameters";
    case IK_ERR_SIZE: return "size-guard";
    case IK_ERR_SINGULAR: return "near-singular";
    case IK_ERR_NO_CONVERGENCE: return "no-convergence";
    case IK_ERR_INDEX: return "index-out-of-range";
    case IK_ERR_IO: return "io-error";
    case IK_ERR_ARGUMENT: return "bad-argument";
    case IK_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

ik_session* ik_session_new(void) {
  try {
    return new ik_session;
  } catch (...) {
    return nullptr;
  }
}

void ik_session_free(ik_session* session) { delete session; }

ik_status ik_session_load_config_text(ik_session* session, const char* text) {
  if (!session) return IK_ERR_ARGUMENT;
  if (!text) {
    session->last_error = "null config text";
    return IK_ERR_ARGUMENT;
  }
  try {
    session->cfg = config_from_tree(parse_tree(text));
    return IK_OK;
  } catch (const std::exception& e) {
    return to_status(e, session);
  }
}

ik_status ik_session_load_config_file(ik_session* session, const char* path) {
  if (!session) return IK_ERR_ARGUMENT;
  if (!path) {
    session->last_error = "null config path";
    return IK_ERR_ARGUMENT;
  }
  std::ifstream in(path);
  if (!in) {
    session->last_error = std::string("cannot read config file '") + path +
                          "'";
    return IK_ERR_IO;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return ik_session_load_config_text(session, buf.str().c_str());
}

ik_status ik_session_set_option(ik_session* session, const char* key,
                                const char* value) {
  if (!session) return IK_ERR_ARGUMENT;
  if (!key || !value) {
    session->last_error = "null option key or value";
    return IK_ERR_ARGUMENT;
  }
  const std::string k = key, v = value;
  try {
    if (k == "seed") {
      session->cfg.params.seed = static_cast<std::uint64_t>(parse_int(v));
    } else if (k == "tolerance") {
      session->cfg.tolerance_override = parse_real(v);
    } else if (k == "n_sites" || k == "n-sites") {
      const long ns = parse_int(v);
      if (ns < 1) throw ConfigParse("n_sites must be positive");
      if (ns > kMaxSites)
        throw SizeGuard("n_sites " + std::to_string(ns) +
                        " exceeds the dense-operator limit of " +
                        std::to_string(kMaxSites) + " sites");
      session->cfg.params.n_sites = static_cast<int>(ns);
      // the explicit theta list no longer matches; regenerate via defaults
      KvNode tree = config_to_tree(session->cfg);
      std::erase_if(tree.children,
                    [](const auto& c) { return c.first == "theta"; });
      session->cfg = config_from_tree(tree);
    } else if (k == "eta") {
      session->cfg.params.eta = parse_eta_option(v);
      session->cfg.params.validate();
    } else if (k == "output" || k == "out") {
      session->cfg.output_path = v;
    } else if (k == "suites") {
      auto names = split_csv(v);
      if (names.empty()) throw ConfigParse("empty suites list");
      for (const auto& n : names)
        if (suite_index(n) < 0)
          throw ConfigParse("unknown suite '" + n + "'");
      session->cfg.suites = names;
    } else {
      throw ConfigParse("unknown option '" + k + "'");
    }
    return IK_OK;
  } catch (const std::exception& e) {
    return to_status(e, session);
  }
}

ik_status ik_session_run(ik_session* session) {
  if (!session) return IK_ERR_ARGUMENT;
  session->reports.clear();
  session->report_text.clear();
  session->summary_text.clear();
  try {
    session->cfg.params.validate();
    for (const auto& name : session->cfg.suites) {
      SuiteReport rep = run_suite(name, session->cfg);
      session->report_text[name] =
          emit_tree(report_to_tree(rep, session->cfg));
      session->reports.push_back(std::move(rep));
    }
    session->summary_text = emit_tree(summary_tree(*session));
    if (!session->cfg.output_path.empty()) {
      namespace fs = std::filesystem;
      const fs::path dir(session->cfg.output_path);
      fs::create_directories(dir);
      for (const auto& [name, text] : session->report_text) {
        std::ofstream out(dir / (name + ".txt"), std::ios::binary);
        if (!out) throw std::ios_base::failure("cannot write report for " +
                                               name);
        out << text;
      }
      std::ofstream out(dir / "summary.txt", std::ios::binary);
      if (!out) throw std::ios_base::failure("cannot write summary");
      out << session->summary_text;
    }
    int failed = 0;
    for (const auto& rep : session->reports) failed += rep.failed_count();
    if (failed > 0) {
      session->last_error =
          std::to_string(failed) + " check case(s) above tolerance";
      return IK_SUITE_FAILURE;
    }
    return IK_OK;
  } catch (const std::exception& e) {
    return to_status(e, session);
  }
}

int ik_session_suites_run(const ik_session* session) {
  return session ? static_cast<int>(session->reports.size()) : 0;
}

int ik_session_cases_failed(const ik_session* session) {
  if (!session) return 0;
  int failed = 0;
  for (const auto& rep : session->reports) failed += rep.failed_count();
  return failed;
}

const char* ik_session_summary(const ik_session* session) {
  return session ? session->summary_text.c_str() : "";
}

const char* ik_session_report(const ik_session* session, const char* suite) {
  if (!session || !suite) return nullptr;
  auto it = session->report_text.find(suite);
  if (it == session->report_text.end()) return nullptr;
  session->lookup_buffer = it->second;
  return session->lookup_buffer.c_str();
}

const char* ik_session_last_error(const ik_session* session) {
  return session ? session->last_error.c_str() : "";
}

int ik_suite_count(void) { return suite_count(); }

const char* ik_suite_name(int index) { return suite_name(index); }

const char* ik_suite_describe(const char* name) {
  return name ? suite_description(name) : nullptr;
}

}  // extern "C"
