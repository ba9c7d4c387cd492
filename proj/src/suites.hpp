#pragma once

#include <optional>

#include "bethe.hpp"
#include "inverse.hpp"
#include "kvtree.hpp"

namespace ik {

inline constexpr int kMaxSites = 5;
inline constexpr const char* kVersion = "0.1.0";

// Optional overrides for the root-solving suites; when absent they fall
// back to built-in guesses near the one-root closed form.
struct BetheOptions {
  int n = 1;                                 // roots per guess
  std::vector<std::vector<Cplx>> guesses;    // Newton starting points
  std::vector<Cplx> sample_points;           // spectral points for on-shell
};

struct RunConfig {
  ModelParams params;               // eta, n_sites, theta, seed
  std::vector<std::string> suites;  // empty means all, in registry order
  std::string output_path;          // directory for per-suite reports
  // When set, replaces every per-case default tolerance.
  std::optional<double> tolerance_override;
  std::optional<BetheOptions> bethe;
};

// eta = 0.3+0.05i, N = 3, deterministic generic inhomogeneities, seed 1.
RunConfig default_config();
// Throws ConfigParse on malformed input, SizeGuard when n_sites exceeds
// kMaxSites, DegenerateParams on colliding inhomogeneities.
RunConfig config_from_tree(const KvNode& root);
KvNode config_to_tree(const RunConfig& cfg);

struct SuiteCase {
  std::string id;
  std::vector<std::pair<std::string, std::string>> inputs;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<SuiteCase> cases;
  // free-form key/value findings (adjudicated readings, prefactors, ...)
  std::vector<std::pair<std::string, std::string>> notes;
  double timing_ms = 0.0;

  int failed_count() const;
  bool passed() const { return failed_count() == 0; }
};

int suite_count();
const char* suite_name(int index);          // nullptr out of range
int suite_index(const std::string& name);   // -1 if unknown
const char* suite_description(const std::string& name);  // nullptr if unknown

// Throws ConfigParse for an unknown suite name.
SuiteReport run_suite(const std::string& name, const RunConfig& cfg);

KvNode report_to_tree(const SuiteReport& rep, const RunConfig& cfg);

}  // namespace ik
