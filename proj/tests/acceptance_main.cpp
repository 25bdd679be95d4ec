// Runs every verification suite on the default grid and prints one
// pass/fail line per suite. Exit code 0 iff everything passed.
#include <iostream>

#include "colombeau/grid.hpp"
#include "colombeau/suites.hpp"

int main() {
    const colombeau::EpsGrid grid = colombeau::EpsGrid::dyadic();
    const std::vector<colombeau::SuiteResult> results = colombeau::run_all_suites(grid);

    bool all_pass = true;
    for (const colombeau::SuiteResult& r : results) {
        const bool ok = r.passed();
        all_pass = all_pass && ok;
        std::cout << (ok ? "PASS" : "FAIL") << "  " << r.name << "\n";
        if (!ok) {
            for (const colombeau::SuiteLine& l : r.lines) {
                if (l.pass) continue;
                std::cout << "      failed: " << l.label;
                if (!l.detail.empty()) std::cout << " [" << l.detail << "]";
                std::cout << "\n";
            }
        }
    }
    std::cout << (all_pass ? "all suites passed" : "at least one suite failed") << "\n";
    return all_pass ? 0 : 1;
}
