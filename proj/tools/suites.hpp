// Verification-suite registry shared by the command-line tool and the
// acceptance runner.  Each identity draws its own deterministic sample
// substream, measures a scalar error, and passes iff error <= tol.
#ifndef SJG_TOOLS_SUITES_HPP
#define SJG_TOOLS_SUITES_HPP

#include <functional>
#include <string>
#include <vector>

#include "sjg/config.hpp"

namespace sjg::tools {

struct SuiteConfig {
  ModelParams mp{};
  unsigned long long seed = 42;
  int samples = 200;
};

struct IdentityRow {
  std::string identity_id;
  std::string paper_anchor;
  int samples = 0;
  double max_abs_err = 0.0;
  double tol = 0.0;
  bool pass = false;
};

// `run` returns the measured error and reports the sample count it actually
// used (expensive charts cap the requested count).  For expected-difference
// fixtures the error is the shortfall below the required gap, so tol = 0.
struct Identity {
  std::string suite;
  std::string id;
  std::string anchor;
  double tol = 0.0;
  std::function<double(const SuiteConfig&, int& samples_used)> run;
};

const std::vector<Identity>& identity_registry();
std::vector<std::string> suite_ids();
bool is_suite(const std::string& id);

// suite "all" runs every registered identity; rows come back in
// registration order regardless of evaluation order
std::vector<IdentityRow> run_suite(const std::string& suite, const SuiteConfig& cfg);

std::string fmt17(double v);
std::string report_json(const std::string& suite, const SuiteConfig& cfg,
                        const std::vector<IdentityRow>& rows);
void write_atomic(const std::string& path, const std::string& content);

}  // namespace sjg::tools

#endif
