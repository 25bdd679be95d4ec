#pragma once

#include <string>
#include <vector>

#include "colombeau/grid.hpp"

namespace colombeau {

// One asserted fact inside a verification suite.
struct SuiteLine {
    std::string label;
    bool pass = false;
    std::string detail;  // evidence: counts, worst errors, witnesses
};

// A named bundle of related assertions, run on one grid and seed.
struct SuiteResult {
    std::string name;
    std::vector<SuiteLine> lines;
    bool passed() const;
};

// Suite names in canonical order.
const std::vector<std::string>& suite_names();

// Runs one suite by name; UnsupportedError on unknown names. Exceptions
// raised inside a suite are captured as a failing line, never propagated.
SuiteResult run_suite(const std::string& name, const EpsGrid& grid, unsigned seed = 42);

// Every suite, in canonical order.
std::vector<SuiteResult> run_all_suites(const EpsGrid& grid, unsigned seed = 42);

}  // namespace colombeau
