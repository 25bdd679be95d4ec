#pragma once

#include <optional>
#include <string>
#include <vector>

#include "colombeau/report.hpp"

namespace colombeau {

// One named definition, kept in document order so later definitions can
// reference earlier ones.
struct ScenarioDef {
    std::string kind;  // net | iset | point | family | smooth | gsf | radii
    std::string name;
    SExpr form;
};

// One check: an operation applied to argument forms (inline or by name),
// with an optional expected verdict.
struct ScenarioCheck {
    std::string op;
    std::vector<SExpr> args;
    std::optional<SExpr> expect;
    int line = 0;
};

struct ScenarioDoc {
    int grid_kmin = 4;
    int grid_kmax = 48;
    double tail_fraction = 0.4;
    unsigned seed = 42;
    std::vector<ScenarioDef> defs;
    std::vector<ScenarioCheck> checks;

    EpsGrid grid() const;
};

// Document <-> tree. Loading resolves nothing; resolve() walks the
// definitions in order and is where dangling references surface, before any
// check runs.
ScenarioDoc parse_scenario(const SExpr& e);
ScenarioDoc load_scenario(const std::string& path);
SExpr scenario_form(const ScenarioDoc& doc);
NameTable resolve(const ScenarioDoc& doc);

struct CheckResult {
    std::string op;
    std::vector<SExpr> args;             // echoed argument forms
    std::string verdict;                 // rendered verdict atom
    std::optional<SExpr> expect;
    bool matched = true;                 // vacuously true without an expectation
    bool errored = false;
    std::string witness;                 // free-text evidence summary
    std::optional<SExpr> evidence;       // structured evidence (classification etc.)
    int line = 0;
};

struct ScenarioReport {
    unsigned seed = 42;
    int grid_kmin = 4;
    int grid_kmax = 48;
    std::vector<CheckResult> results;
    SExpr scenario_echo;

    int checks() const { return static_cast<int>(results.size()); }
    int matched() const;
    int failed() const { return checks() - matched(); }
    int exit_code() const { return failed() == 0 ? 0 : 1; }

    SExpr form() const;
    std::string render() const;
};

// Executes the checks in order (independent checks may run on up to `jobs`
// threads; results keep document order). Dangling names throw ParseError
// before any check runs; errors inside a check are captured in its result.
ScenarioReport run_scenario(const ScenarioDoc& doc, int jobs = 1);

}  // namespace colombeau
