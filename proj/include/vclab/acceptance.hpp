#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vclab {
namespace acceptance {

struct Options {
    std::string vclab_path;  // CLI binary, needed by the determinism criterion
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

// Runs every acceptance criterion, printing one [PASS]/[FAIL] line per
// criterion to `log` as it completes.
std::vector<CriterionResult> run_all(const Options& opts, std::ostream& log);

bool all_pass(const std::vector<CriterionResult>& results);

}  // namespace acceptance
}  // namespace vclab
