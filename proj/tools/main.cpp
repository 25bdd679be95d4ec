// Command-line workbench for the Colombeau generalized-number library.
//
// Exit codes: 0 when every requested check passed, 1 when a verdict came out
// failing, 2 on malformed usage or unparseable input.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "colombeau/asymptotics.hpp"
#include "colombeau/errors.hpp"
#include "colombeau/format.hpp"
#include "colombeau/grid.hpp"
#include "colombeau/gsf.hpp"
#include "colombeau/membership.hpp"
#include "colombeau/net_expr.hpp"
#include "colombeau/report.hpp"
#include "colombeau/scenario.hpp"
#include "colombeau/sexpr.hpp"
#include "colombeau/suites.hpp"

namespace {

using namespace colombeau;

struct GridSpec {
    int kmin = 4;
    int kmax = 48;
    double tail = 0.4;

    EpsGrid make() const { return EpsGrid::dyadic(kmin, kmax, tail); }
};

// "a..b" -> dyadic exponent range.
void parse_grid_spec(const std::string& text, GridSpec& spec) {
    const auto dots = text.find("..");
    if (dots == std::string::npos)
        throw CLI::ValidationError("--grid", "expected k_min..k_max, e.g. 4..48");
    try {
        spec.kmin = std::stoi(text.substr(0, dots));
        spec.kmax = std::stoi(text.substr(dots + 2));
    } catch (const std::exception&) {
        throw CLI::ValidationError("--grid", "expected integer exponents in k_min..k_max");
    }
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw UnsupportedError("cannot open output file '" + path + "'");
    return file;
}

int cmd_eval(const GridSpec& gs, const std::string& form, const std::vector<double>& at,
             const std::string& out_path) {
    const NetExpr net = parse_net(parse_sexpr(form));
    std::ofstream file;
    std::ostream& os = open_out(file, out_path);
    if (at.empty()) {
        write_net_csv(os, net, gs.make());
    } else {
        for (const double eps : at)
            os << fmt_double(eps) << " -> " << fmt_double(net.eval(eps)) << "\n";
    }
    return 0;
}

int cmd_valuation(const GridSpec& gs, const std::string& form) {
    const NetExpr net = parse_net(parse_sexpr(form));
    const ValuationEstimate v = valuation(net, gs.make());
    std::cout << print_sexpr(valuation_form(v)) << "\n";
    return 0;
}

int cmd_classify(const GridSpec& gs, const std::string& form, const std::string& expect) {
    const NetExpr net = parse_net(parse_sexpr(form));
    const Classification c = classify(net, gs.make());
    std::cout << print_sexpr(classification_form(c)) << "\n";
    if (!expect.empty() && expect != to_string(c.verdict)) {
        std::cout << "expected " << expect << ", got " << to_string(c.verdict) << "\n";
        return 1;
    }
    return 0;
}

int cmd_member(const GridSpec& gs, const std::string& point_form,
               const std::string& family_form, const std::string& expect, bool fermat) {
    const GenNumber x = parse_point(parse_sexpr(point_form));
    const SetFamily fam = parse_family(parse_sexpr(family_form));
    const EpsGrid grid = gs.make();

    const Member inner = internal_member(x, fam, grid);
    const StrongVerdict sv =
        fermat ? strong_member_fermat(x, fam, grid) : strong_member(x, fam, grid);
    std::cout << "internal: " << to_string(inner) << "\n";
    std::cout << (fermat ? "fermat-strong: " : "strong: ") << to_string(sv.verdict);
    if (sv.verdict == Member::In) {
        if (sv.witness_order > 0.0) std::cout << " (witness order " << fmt_double(sv.witness_order) << ")";
        if (sv.witness_radius > 0.0) std::cout << " (witness radius " << fmt_double(sv.witness_radius) << ")";
    }
    if (sv.exit_eps) std::cout << " (exited at eps = " << fmt_double(*sv.exit_eps) << ")";
    if (!sv.note.empty()) std::cout << "  [" << sv.note << "]";
    std::cout << "\n";
    if (!fermat) {
        if (const auto w = representative_exit_witness(x, fam, grid)) {
            std::cout << "exit witness: negligible shift leaves " << w->exit_count << "/"
                      << w->tail_count << " tail slices\n";
        } else {
            std::cout << "exit witness: none (membership survives negligible shifts)\n";
        }
    }
    if (!expect.empty() && expect != to_string(sv.verdict)) {
        std::cout << "expected " << expect << ", got " << to_string(sv.verdict) << "\n";
        return 1;
    }
    return 0;
}

int cmd_gsf_check(const GridSpec& gs, const std::string& form, int kmax, int probes,
                  unsigned seed) {
    const GSFDef f = parse_gsf(parse_sexpr(form), "cli-function");
    const GsfCheckReport rep = gsf_check(f, gs.make(), kmax, probes, seed);
    std::cout << "verdict: " << to_string(rep.verdict) << "\n";
    for (const Certificate& c : rep.certificates) {
        std::cout << "  point " << print_sexpr(point_form(c.point)) << ": "
                  << to_string(c.moderate);
        for (const auto& [alpha, cls] : c.orders) {
            int total = 0;
            for (const int a : alpha) total += a;
            if (cls.verdict != NetClass::Moderate || total == 0)
                std::cout << " |order " << total << ": " << to_string(cls.verdict);
        }
        std::cout << "\n";
    }
    for (const SupBound& b : rep.sup_bounds)
        std::cout << "  sup order " << b.order << ": " << to_string(b.bounded) << " ("
                  << to_string(b.cls.verdict) << ")\n";
    for (const std::string& n : rep.notes) std::cout << "  note: " << n << "\n";
    return rep.verdict == Ternary::True ? 0 : 1;
}

int cmd_scenario(const std::string& path, int jobs, const std::string& report_path) {
    const ScenarioDoc doc = load_scenario(path);
    resolve(doc);  // dangling names surface before any check runs
    const ScenarioReport rep = run_scenario(doc, jobs);
    const std::string rendered = rep.render();
    if (!report_path.empty()) {
        std::ofstream file(report_path);
        if (!file) throw UnsupportedError("cannot open report file '" + report_path + "'");
        file << rendered;
        std::cout << rep.matched() << "/" << rep.checks() << " checks matched; report written to "
                  << report_path << "\n";
    } else {
        std::cout << rendered;
    }
    return rep.exit_code();
}

int cmd_suite(const GridSpec& gs, std::vector<std::string> names, unsigned seed, bool list) {
    if (list) {
        for (const std::string& n : suite_names()) std::cout << n << "\n";
        return 0;
    }
    if (names.empty()) names = suite_names();
    const EpsGrid grid = gs.make();
    bool all_pass = true;
    for (const std::string& name : names) {
        const SuiteResult res = run_suite(name, grid, seed);
        const bool ok = res.passed();
        all_pass = all_pass && ok;
        std::cout << (ok ? "PASS" : "FAIL") << "  " << res.name << "\n";
        for (const SuiteLine& l : res.lines) {
            std::cout << "      " << (l.pass ? "ok   " : "FAIL ") << l.label;
            if (!l.detail.empty()) std::cout << " [" << l.detail << "]";
            std::cout << "\n";
        }
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Colombeau generalized numbers, strongly internal sets, and generalized "
                 "smooth functions: evaluation, classification, and verification checks "
                 "over a dyadic epsilon grid."};
    app.require_subcommand(1);
    app.fallthrough();

    GridSpec gs;
    std::string grid_text;
    unsigned seed = 42;
    app.add_option("--grid", grid_text, "dyadic exponent range k_min..k_max (default 4..48)");
    app.add_option("--tail", gs.tail, "tail fraction of the grid used for asymptotic fits")
        ->check(CLI::Range(0.05, 0.95));
    app.add_option("--seed", seed, "seed for deterministic probe placement");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a net form (CSV over the grid, or "
                                                "at chosen eps values)");
    std::string eval_form, eval_out;
    std::vector<double> eval_at;
    eval_cmd->add_option("form", eval_form, "net form, e.g. \"(prod (const 2) (epspow 3))\"")
        ->required();
    eval_cmd->add_option("--eps", eval_at, "evaluate at these eps values instead of the grid");
    eval_cmd->add_option("--out", eval_out, "write to this file instead of stdout");

    // valuation
    auto* val_cmd = app.add_subcommand("valuation", "order of an asymptotic net (exact on the "
                                                    "canonical subalgebra)");
    std::string val_form;
    val_cmd->add_option("form", val_form, "net form")->required();

    // classify
    auto* cls_cmd = app.add_subcommand("classify", "moderateness / negligibility verdict");
    std::string cls_form, cls_expect;
    cls_cmd->add_option("form", cls_form, "net form")->required();
    cls_cmd->add_option("--expect", cls_expect,
                        "fail (exit 1) unless the verdict matches: exact-negligible, "
                        "numerically-negligible, moderate, non-moderate, undetermined");

    // member
    auto* mem_cmd = app.add_subcommand("member", "internal and strong membership of a "
                                                 "generalized point in a set family");
    std::string mem_point, mem_family, mem_expect;
    bool mem_fermat = false;
    mem_cmd->add_option("point", mem_point, "point form, e.g. \"(vec (epspow 1))\"")->required();
    mem_cmd->add_option("family", mem_family, "family form, e.g. \"(ball (vec (const 0)) (const 1))\"")
        ->required();
    mem_cmd->add_option("--expect", mem_expect, "fail (exit 1) unless the strong verdict matches: in, out, undetermined");
    mem_cmd->add_flag("--fermat", mem_fermat, "use the real-radius (Fermat) route");

    // gsf-check
    auto* gsf_cmd = app.add_subcommand("gsf-check", "certify derivatives of a generalized "
                                                    "smooth function over its domain");
    std::string gsf_form_text;
    int gsf_kmax = 3, gsf_probes = 3;
    gsf_cmd->add_option("form", gsf_form_text,
                        "(gsf (outputs ...) (domain ...) (membership strong|internal))")
        ->required();
    gsf_cmd->add_option("--kmax", gsf_kmax, "highest derivative order to certify")
        ->check(CLI::Range(0, 8));
    gsf_cmd->add_option("--probes", gsf_probes, "interior probe points per check");

    // scenario
    auto* sc_cmd = app.add_subcommand("scenario", "run a scenario document of definitions "
                                                  "and checks");
    std::string sc_path, sc_report;
    int sc_jobs = 1;
    sc_cmd->add_option("file", sc_path, "scenario file")->required()->check(CLI::ExistingFile);
    sc_cmd->add_option("--jobs", sc_jobs, "run independent checks on up to this many threads")
        ->check(CLI::Range(1, 64));
    sc_cmd->add_option("--report", sc_report, "write the full report to this file");

    // suite
    auto* suite_cmd = app.add_subcommand("suite", "run the library's verification suites");
    std::vector<std::string> suite_names_arg;
    bool suite_list = false;
    suite_cmd->add_option("names", suite_names_arg, "suites to run (default: all)");
    suite_cmd->add_flag("--list", suite_list, "list available suites and exit");

    // emit
    auto* emit_cmd = app.add_subcommand("emit", "write CSV sample tables for plotting");
    emit_cmd->require_subcommand(1);
    std::string emit_out;
    emit_cmd->add_option("--out", emit_out, "write to this file instead of stdout");

    auto* emit_net = emit_cmd->add_subcommand("net", "eps, value, log-magnitude per grid sample");
    std::string emit_net_form;
    emit_net->add_option("form", emit_net_form, "net form")->required();

    auto* emit_dist = emit_cmd->add_subcommand("distance", "pointwise distance table of two points");
    std::string emit_p1, emit_p2;
    emit_dist->add_option("x", emit_p1, "point form")->required();
    emit_dist->add_option("y", emit_p2, "point form")->required();

    auto* emit_ratio = emit_cmd->add_subcommand("ratio", "difference-quotient remainder decay "
                                                         "of a function at a point");
    std::string emit_gsf, emit_at;
    int emit_kmax = 6;
    emit_ratio->add_option("gsf", emit_gsf, "(gsf ...) form")->required();
    emit_ratio->add_option("point", emit_at, "point form")->required();
    emit_ratio->add_option("--kmax", emit_kmax, "highest probed order")->check(CLI::Range(1, 12));

    try {
        app.parse(argc, argv);
        if (!grid_text.empty()) parse_grid_spec(grid_text, gs);

        if (*eval_cmd) return cmd_eval(gs, eval_form, eval_at, eval_out);
        if (*val_cmd) return cmd_valuation(gs, val_form);
        if (*cls_cmd) return cmd_classify(gs, cls_form, cls_expect);
        if (*mem_cmd) return cmd_member(gs, mem_point, mem_family, mem_expect, mem_fermat);
        if (*gsf_cmd) return cmd_gsf_check(gs, gsf_form_text, gsf_kmax, gsf_probes, seed);
        if (*sc_cmd) return cmd_scenario(sc_path, sc_jobs, sc_report);
        if (*suite_cmd) return cmd_suite(gs, suite_names_arg, seed, suite_list);
        if (*emit_cmd) {
            std::ofstream file;
            std::ostream& os = open_out(file, emit_out);
            if (*emit_net) {
                write_net_csv(os, parse_net(parse_sexpr(emit_net_form)), gs.make());
            } else if (*emit_dist) {
                write_distance_csv(os, parse_point(parse_sexpr(emit_p1)),
                                   parse_point(parse_sexpr(emit_p2)), gs.make());
            } else if (*emit_ratio) {
                const GSFDef f = parse_gsf(parse_sexpr(emit_gsf), "cli-function");
                const AfjProbe probe =
                    afj_probe(f, parse_point(parse_sexpr(emit_at)), gs.make(), emit_kmax);
                write_ratio_csv(os, probe);
            }
            return 0;
        }
        return 2;  // unreachable given require_subcommand(1)
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
