#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "colombeau/errors.hpp"
#include "colombeau/format.hpp"
#include "colombeau/sexpr.hpp"

using namespace colombeau;

TEST_CASE("sexpr parsing fundamentals") {
    const SExpr e = parse_sexpr("(sum (const 1) (epspow 2)) ; trailing comment");
    CHECK(e.is_list("sum"));
    CHECK(e.size() == 3);
    CHECK(e.kid(1).is_list("const"));
    CHECK(e.kid(2).kid(1).atom == "2");

    const SExpr quoted = parse_sexpr("(name \"with spaces (and parens)\")");
    CHECK(quoted.kid(1).atom == "with spaces (and parens)");

    CHECK_THROWS_AS(parse_sexpr("(sum (const 1)"), ParseError);
    CHECK_THROWS_AS(parse_sexpr(""), ParseError);
    CHECK_THROWS_AS(parse_sexpr("(a) (b)"), ParseError);
    CHECK(parse_sexprs("(a) (b)").size() == 2);

}

TEST_CASE("double formatting round-trips") {
    for (const double v : {0.1, 1.0 / 3.0, -2.5, 1e-300, 1e300, 0.0, 123456.789}) {
        CHECK(parse_double_text(fmt_double(v)) == v);
    }
    CHECK(std::isinf(parse_double_text("inf")));
    CHECK(parse_double_text("-inf") < 0);
    CHECK(std::isnan(parse_double_text("nan")));
    CHECK(fmt_double(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("net forms round-trip through print and parse") {
    const std::vector<std::string> sources = {
        "(const 2.5)",
        "(epspow -3)",
        "(expinveps)",
        "(sum (const 1) (prod (const 2) (epspow 1)))",
        "(mask (interval 0.25 0.75) (const 7))",
        "(mask (geometric 0.5 0.25) (epspow 2))",
        "(idempotent (complement (interval 0 0.5)))",
        "(neg (abs (const -3)))",
        "(min (const 1) (max (const 2) (const 3)))",
        "(recip (sum (const 1) (epspow 1)))",
        "(apply tanh (epspow -1))",
        "(data (0.5 1) (0.25 2) (0.125 4))",
    };
    for (const std::string& src : sources) {
        const NetExpr first = parse_net(parse_sexpr(src));
        const std::string printed = print_sexpr(net_form(first));
        const NetExpr second = parse_net(parse_sexpr(printed));
        const std::string reprinted = print_sexpr(net_form(second));
        CHECK(printed == reprinted);
        for (const double eps : {1.0, 0.5, 0.25, 0.1, 0.01})
            CHECK(first.eval(eps) == second.eval(eps));
    }
}

TEST_CASE("point, family, smooth, gsf, and radii forms round-trip") {
    const GenNumber p = parse_point(parse_sexpr("(vec (const 1) (epspow 2))"));
    CHECK(p.dim() == 2);
    const GenNumber p2 = parse_point(parse_sexpr(print_sexpr(point_form(p))));
    CHECK(p.eval(0.25) == p2.eval(0.25));

    const SetFamily fam = parse_family(parse_sexpr(
        "(intersection (ball (vec (const 0)) (const 1)) (halfspace (1) (const 0.5)))"));
    const SetFamily fam2 = parse_family(parse_sexpr(print_sexpr(family_form(fam))));
    const std::vector<double> q = {0.2};
    for (const double eps : {0.5, 0.125})
        CHECK(fam.sdf(q, eps) == fam2.sdf(q, eps));

    const SmoothExpr s = parse_smooth(parse_sexpr("(sum (ipow x1 2) (apply sin x1))"));
    const SmoothExpr s2 = parse_smooth(parse_sexpr(print_sexpr(smooth_form(s))));
    const std::vector<double> at = {0.3};
    CHECK(s.eval(at, 0.25) == s2.eval(at, 0.25));
    CHECK(s.eval(at, 0.25) == doctest::Approx(0.09 + std::sin(0.3)).epsilon(1e-14));

    const GSFDef f = parse_gsf(parse_sexpr("(gsf (outputs (ipow x1 2)) "
                                           "(domain (ball (vec (const 0)) (const 2))) "
                                           "(membership strong))"),
                               "roundtrip");
    const GSFDef f2 = parse_gsf(parse_sexpr(print_sexpr(gsf_form(f))), "roundtrip");
    CHECK(f2.outputs.size() == f.outputs.size());
    CHECK(f2.strongly_internal_domain == f.strongly_internal_domain);
    CHECK(gsf_eval(f, GenNumber::scalar(0.5)).eval(0.25)[0] ==
          gsf_eval(f2, GenNumber::scalar(0.5)).eval(0.25)[0]);

    for (const std::string& src :
         {std::string("sharp"), std::string("fermat"), std::string("powerband:2.5"),
          std::string("(generated (epspow 2))")}) {
        const RadiiSet r = parse_radii(parse_sexpr(src));
        const RadiiSet r2 = parse_radii(parse_sexpr(print_sexpr(radii_form(r))));
        CHECK(r.kind() == r2.kind());
    }
}

TEST_CASE("name references resolve through the table") {
    NameTable names;
    names.nets.emplace("rho", NetExpr::eps_pow(2.0));
    const NetExpr used = parse_net(parse_sexpr("(prod (const 3) rho)"), names);
    CHECK(used.eval(0.5) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK_THROWS_AS(parse_net(parse_sexpr("(prod (const 3) ghost)")), ParseError);

    names.points.emplace("origin", GenNumber::scalar(0.0));
    const SetFamily fam = parse_family(parse_sexpr("(ball origin (const 1))"), names);
    CHECK(fam.sdf(std::vector<double>{0.0}, 0.5) == 1.0);
}

TEST_CASE("malformed forms report positions") {
    CHECK_THROWS_AS(parse_net(parse_sexpr("(const nonsense)")), ParseError);
    CHECK_THROWS_AS(parse_net(parse_sexpr("(unknownhead 1)")), ParseError);
    CHECK_THROWS(parse_iset(parse_sexpr("(interval 0.9 0.1)")));
    CHECK_THROWS_AS(parse_family(parse_sexpr("(ball (vec (const 0)))")), ParseError);
    try {
        parse_net(parse_sexpr("(sum\n  (const oops))"));
        CHECK(false);
    } catch (const ParseError& err) {
        CHECK(err.line == 2);
    }
}
