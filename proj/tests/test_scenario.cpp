#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "colombeau/errors.hpp"
#include "colombeau/scenario.hpp"
#include "colombeau/sexpr.hpp"

using namespace colombeau;

TEST_CASE("an empty scenario runs cleanly") {
    const ScenarioDoc doc = parse_scenario(parse_sexpr("(scenario)"));
    const ScenarioReport rep = run_scenario(doc);
    CHECK(rep.checks() == 0);
    CHECK(rep.exit_code() == 0);
    CHECK(!rep.render().empty());
}

TEST_CASE("document fields parse") {
    const ScenarioDoc doc = parse_scenario(parse_sexpr(
        "(scenario (grid 6 30 0.5) (seed 7)"
        " (def net rho (epspow 2))"
        " (check (classify (vec rho)) (expect moderate)))"));
    CHECK(doc.grid_kmin == 6);
    CHECK(doc.grid_kmax == 30);
    CHECK(doc.tail_fraction == 0.5);
    CHECK(doc.seed == 7);
    CHECK(doc.defs.size() == 1);
    CHECK(doc.checks.size() == 1);
    CHECK(doc.checks.front().op == "classify");
    CHECK(doc.checks.front().expect.has_value());
    const EpsGrid grid = doc.grid();
    CHECK(grid.max_sample() == std::ldexp(1.0, -6));
    CHECK(grid.min_sample() == std::ldexp(1.0, -30));
}

TEST_CASE("membership scenario: a removed point is internal but not strong") {
    const ScenarioDoc doc = parse_scenario(parse_sexpr(
        "(scenario"
        " (def point zero (vec (const 0)))"
        " (def family line-minus-origin (complement (points (vec (const 0)))))"
        " (check (member zero line-minus-origin) (expect in))"
        " (check (strong-member zero line-minus-origin) (expect out))"
        " (check (exit-witness zero line-minus-origin) (expect some)))"));
    const ScenarioReport rep = run_scenario(doc);
    CHECK(rep.checks() == 3);
    CHECK(rep.matched() == 3);
    CHECK(rep.failed() == 0);
    CHECK(rep.exit_code() == 0);
    for (const CheckResult& r : rep.results) CHECK(!r.errored);
}

TEST_CASE("a wrong expectation fails the run without erroring") {
    const ScenarioDoc doc = parse_scenario(parse_sexpr(
        "(scenario"
        " (def point half (vec (const 0.5)))"
        " (def family ball (ball (vec (const 0)) (const 1)))"
        " (check (strong-member half ball) (expect out))"
        " (check (strong-member half ball) (expect in)))"));
    const ScenarioReport rep = run_scenario(doc);
    CHECK(rep.checks() == 2);
    CHECK(rep.matched() == 1);
    CHECK(rep.failed() == 1);
    CHECK(rep.exit_code() == 1);
    CHECK(!rep.results.front().matched);
    CHECK(!rep.results.front().errored);
}

TEST_CASE("dangling and duplicate names surface before checks run") {
    const ScenarioDoc dangling = parse_scenario(parse_sexpr(
        "(scenario (def net u (prod (const 2) ghost)))"));
    CHECK_THROWS_AS(resolve(dangling), ParseError);
    CHECK_THROWS_AS(run_scenario(dangling), ParseError);

    const ScenarioDoc dup = parse_scenario(parse_sexpr(
        "(scenario (def net u (const 1)) (def net u (const 2)))"));
    CHECK_THROWS_AS(resolve(dup), ParseError);
}

TEST_CASE("scenario documents round-trip through their form") {
    const ScenarioDoc doc = parse_scenario(parse_sexpr(
        "(scenario (grid 4 20)"
        " (def point zero (vec (const 0)))"
        " (def family ball (ball zero (const 1)))"
        " (check (member zero ball) (expect in)))"));
    const ScenarioDoc again = parse_scenario(scenario_form(doc));
    CHECK(again.grid_kmin == doc.grid_kmin);
    CHECK(again.grid_kmax == doc.grid_kmax);
    CHECK(again.defs.size() == doc.defs.size());
    CHECK(again.checks.size() == doc.checks.size());
    CHECK(again.checks.front().op == doc.checks.front().op);

    const ScenarioReport rep = run_scenario(again);
    CHECK(rep.exit_code() == 0);
}

TEST_CASE("scenario files load from disk and missing files are reported") {
    const std::string path = "scenario_roundtrip_test.tmp";
    {
        std::ofstream out(path);
        out << "; a one-check document\n"
               "(scenario\n"
               "  (def point tiny (vec (epspow 1)))\n"
               "  (def family ball (ball (vec (const 0)) (const 1)))\n"
               "  (check (strong-member tiny ball) (expect in)))\n";
    }
    const ScenarioDoc doc = load_scenario(path);
    CHECK(doc.checks.size() == 1);
    const ScenarioReport rep = run_scenario(doc);
    CHECK(rep.exit_code() == 0);
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_scenario("does_not_exist.tmp"), ParseError);
}

TEST_CASE("parallel execution keeps document order and verdicts") {
    const ScenarioDoc doc = parse_scenario(parse_sexpr(
        "(scenario"
        " (def family ball (ball (vec (const 0)) (const 1)))"
        " (check (strong-member (vec (const 0.1)) ball) (expect in))"
        " (check (strong-member (vec (const 0.2)) ball) (expect in))"
        " (check (strong-member (vec (const 5)) ball) (expect out))"
        " (check (classify (vec (epspow 3))) (expect moderate)))"));
    const ScenarioReport serial = run_scenario(doc, 1);
    const ScenarioReport parallel = run_scenario(doc, 4);
    REQUIRE(serial.checks() == parallel.checks());
    for (int i = 0; i < serial.checks(); ++i) {
        CHECK(serial.results[static_cast<std::size_t>(i)].verdict ==
              parallel.results[static_cast<std::size_t>(i)].verdict);
        CHECK(serial.results[static_cast<std::size_t>(i)].op ==
              parallel.results[static_cast<std::size_t>(i)].op);
    }
    CHECK(parallel.exit_code() == 0);
}
