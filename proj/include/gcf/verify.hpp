#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gcf/closed_flow.hpp"
#include "gcf/config.hpp"
#include "gcf/diagnostics.hpp"
#include "gcf/graph_flow.hpp"

namespace gcf::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Report assembly shared by the CLI subcommands and the verify suite.
diag::RunReport closed_report(const closed::ClosedRunConfig& cfg,
                              const closed::ClosedRunResult& res, const Tolerances& tol,
                              const std::string& run_id,
                              const std::vector<std::pair<std::string, std::string>>& echo);
diag::RunReport graph_report(const graph::GraphRunConfig& cfg, const graph::GraphRunResult& res,
                             const Tolerances& tol, const std::string& run_id,
                             const std::vector<std::pair<std::string, std::string>>& echo);

// Acceptance suites. "core" runs every criterion; "smoke" is the cheap
// subset used for quick determinism checks. Artifacts land under out_dir.
// Prints one line per criterion to `log` as results arrive.
std::vector<CriterionResult> run_suite(const std::string& suite, const std::string& out_dir,
                                       std::ostream& log);

}  // namespace gcf::verify
