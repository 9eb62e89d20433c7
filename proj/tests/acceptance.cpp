// Acceptance gate: runs every verification criterion at full scale and
// prints one PASS/FAIL line per criterion. Exit 0 iff everything passes.

#include <cstdio>

#include "pdisc/verify.hpp"

int main() {
    setvbuf(stdout, nullptr, _IONBF, 0);
    bool all = true;
    for (int id : pdisc::criterion_ids()) {
        const pdisc::CriterionResult r = pdisc::run_criterion(id, false);
        all = all && r.pass();
        std::printf("[%s] criterion %2d: %-34s (%6.2f s / budget %3.0f s)\n",
                    r.pass() ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                    r.budget);
        for (const auto& c : r.checks) {
            if (!c.pass)
                std::printf("       failed: %s  measured=%.6g threshold=%.6g\n",
                            c.name.c_str(), c.measured, c.threshold);
        }
        if (r.seconds > r.budget)
            std::printf("       failed: runtime budget exceeded\n");
    }
    std::printf("%s\n", all ? "ACCEPTANCE: all criteria pass"
                            : "ACCEPTANCE: FAILURES PRESENT");
    return all ? 0 : 1;
}
