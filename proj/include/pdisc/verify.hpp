#ifndef PDISC_VERIFY_HPP
#define PDISC_VERIFY_HPP

#include <string>
#include <vector>

namespace pdisc {

/// One verification check: a measured value against its threshold.
struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string note;
};

/// One acceptance criterion: its checks plus the wall-clock budget.
struct CriterionResult {
    int id = 0;
    std::string name;
    std::vector<CheckResult> checks;
    double seconds = 0.0;
    double budget = 0.0;

    bool pass() const {
        if (seconds > budget) return false;
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

struct SuiteResult {
    std::string suite;
    std::vector<CriterionResult> criteria;
    bool all_pass() const {
        for (const auto& c : criteria)
            if (!c.pass()) return false;
        return true;
    }
};

std::vector<int> criterion_ids();

/// Runs one criterion (1..11); fast caps the p-ladders for CI.
CriterionResult run_criterion(int id, bool fast = false);

/// Suite names accepted by run_suite and the CLI verify subcommand.
std::vector<std::string> suite_names();

/// Runs all criteria belonging to the named suite ("all" for everything).
/// Throws std::invalid_argument for unknown names.
SuiteResult run_suite(const std::string& name, bool fast = false);

}  // namespace pdisc

#endif
