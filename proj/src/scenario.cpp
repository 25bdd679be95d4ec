#include "colombeau/scenario.hpp"

#include <cctype>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <sstream>

#include "colombeau/errors.hpp"
#include "colombeau/membership.hpp"
#include "colombeau/parallel.hpp"
#include "colombeau/topology.hpp"

namespace colombeau {

namespace {

ParseError err(const SExpr& e, const std::string& msg) { return {msg, e.line, e.col}; }

std::string atom_of(const SExpr& e, const char* what) {
    if (!e.leaf) throw err(e, std::string("expected ") + what);
    return e.atom;
}

SExpr field(const char* key, SExpr value) {
    return SExpr::list({SExpr::make_atom(key), std::move(value)});
}

SExpr field(const char* key, const std::string& atom) {
    return field(key, SExpr::make_atom(atom));
}

SExpr num(double v) { return SExpr::make_atom(fmt_double(v)); }

constexpr const char* kKinds[] = {"net", "iset", "point", "family", "smooth", "gsf", "radii"};

bool known_kind(std::string_view k) {
    for (const char* s : kKinds)
        if (k == s) return true;
    return false;
}

// One resolved check argument; exactly one slot is set, per the signature.
struct Arg {
    std::optional<GenNumber> point;
    std::optional<SetFamily> family;
    std::optional<NetExpr> net;
    std::optional<GSFDef> gsf;
    std::optional<RadiiSet> radii;
    std::optional<double> number;
};

// Signatures: p point, f family, n net, g function, r radii, d number;
// uppercase marks a trailing optional argument.
const std::map<std::string, std::string>& op_signatures() {
    static const std::map<std::string, std::string> sigs = {
        {"classify", "p"},
        {"valuation", "p"},
        {"eq", "pp"},
        {"leq", "pp"},
        {"infinitesimal", "p"},
        {"invertible", "p"},
        {"standard-part", "p"},
        {"sharp-distance", "pp"},
        {"member", "pf"},
        {"strong-member", "pf"},
        {"fermat-member", "pf"},
        {"exit-witness", "pf"},
        {"subset", "ff"},
        {"internal-subset", "ff"},
        {"same-set", "fff"},
        {"bounded", "f"},
        {"sigma", "f"},
        {"intersection", "ff"},
        {"containment", "ff"},
        {"openness", "pf"},
        {"gsf-check", "gD"},
        {"null", "gf"},
        {"rep-independence", "gpD"},
        {"lipschitz", "gf"},
        {"afj", "gpD"},
        {"radii-contains", "rn"},
        {"ball-member", "rpnp"},
        {"tau", "rpp"},
        {"chain", "pp"},
        {"radii-axioms", "r"},
    };
    return sigs;
}

std::vector<Arg> resolve_args(const ScenarioCheck& c, const NameTable& names) {
    const auto it = op_signatures().find(c.op);
    if (it == op_signatures().end())
        throw ParseError("unknown check operation '" + c.op + "'", c.line, 0);
    const std::string& sig = it->second;
    std::vector<Arg> out;
    std::size_t i = 0;
    for (char s : sig) {
        const bool optional = std::isupper(static_cast<unsigned char>(s)) != 0;
        if (i >= c.args.size()) {
            if (optional) break;
            throw ParseError("'" + c.op + "' wants " + std::to_string(sig.size()) +
                                 " arguments, got " + std::to_string(c.args.size()),
                             c.line, 0);
        }
        const SExpr& e = c.args[i++];
        Arg a;
        switch (std::tolower(static_cast<unsigned char>(s))) {
            case 'p': a.point = parse_point(e, names); break;
            case 'f': a.family = parse_family(e, names); break;
            case 'n': a.net = parse_net(e, names); break;
            case 'g': a.gsf = parse_gsf(e, "anon", names); break;
            case 'r': a.radii = parse_radii(e, names); break;
            case 'd': a.number = number_of(e); break;
            default: break;
        }
        out.push_back(std::move(a));
    }
    if (i < c.args.size())
        throw err(c.args[i], "too many arguments to '" + c.op + "'");
    return out;
}

std::string join_lines(const std::vector<std::string>& lines, std::size_t limit = 3) {
    std::string out;
    for (std::size_t i = 0; i < lines.size() && i < limit; ++i) {
        if (!out.empty()) out += " | ";
        out += lines[i];
    }
    if (lines.size() > limit) out += " | ...";
    return out;
}

std::string probe_summary(int confirmed, int probes, const std::vector<std::string>& failures) {
    std::string w = std::to_string(confirmed) + "/" + std::to_string(probes) + " probes confirmed";
    if (!failures.empty()) w += ": " + join_lines(failures);
    return w;
}

void dispatch(const ScenarioCheck& c, const std::vector<Arg>& a, const EpsGrid& grid,
              unsigned seed, CheckResult& r) {
    const std::string& op = c.op;
    if (op == "classify") {
        const auto cls = classify(*a[0].point, grid);
        r.verdict = to_string(cls.verdict);
        r.evidence = classification_form(cls);
        r.witness = "estimated order " + fmt_double(cls.estimate.value);
    } else if (op == "valuation") {
        const auto v = valuation_of(*a[0].point, grid);
        r.verdict = fmt_double(v.value);
        r.evidence = valuation_form(v);
        r.witness = to_string(v.method) + " route, residual " + fmt_double(v.residual);
    } else if (op == "eq") {
        const auto v = eq_in_ring(*a[0].point, *a[1].point, grid);
        r.verdict = to_string(v.equal);
        r.evidence = classification_form(v.difference);
        r.witness = "difference " + to_string(v.difference.verdict);
    } else if (op == "leq") {
        const auto v = leq(*a[0].point, *a[1].point, grid);
        r.verdict = to_string(v.holds);
        r.evidence = classification_form(v.positive_part);
        r.witness = "positive part " + to_string(v.positive_part.verdict);
    } else if (op == "infinitesimal") {
        r.verdict = to_string(is_infinitesimal(*a[0].point, grid));
    } else if (op == "invertible") {
        const auto v = is_invertible(*a[0].point, grid);
        r.verdict = to_string(v.verdict);
        r.witness = v.note;
        if (v.verdict == Ternary::True)
            r.witness = "bounded below by eps^" + fmt_double(v.witness_n) + " on the tail";
    } else if (op == "standard-part") {
        const auto st = standard_part(*a[0].point, grid);
        if (!st) {
            r.verdict = "none";
        } else if (st->size() == 1) {
            r.verdict = fmt_double((*st)[0]);
        } else {
            std::vector<SExpr> kids{SExpr::make_atom("vec")};
            for (double v : *st) kids.push_back(num(v));
            r.verdict = print_sexpr(SExpr::list(std::move(kids)));
        }
    } else if (op == "sharp-distance") {
        r.verdict = fmt_double(sharp_distance(*a[0].point, *a[1].point, grid));
    } else if (op == "member") {
        r.verdict = to_string(internal_member(*a[0].point, *a[1].family, grid));
    } else if (op == "strong-member" || op == "fermat-member") {
        const auto v = op == "strong-member"
                           ? strong_member(*a[0].point, *a[1].family, grid)
                           : strong_member_fermat(*a[0].point, *a[1].family, grid);
        r.verdict = to_string(v.verdict);
        r.witness = v.note;
        if (v.exit_eps)
            r.witness += (r.witness.empty() ? "" : "; ") + std::string("left the slice at eps=") +
                         fmt_double(*v.exit_eps);
    } else if (op == "exit-witness") {
        const auto w = representative_exit_witness(*a[0].point, *a[1].family, grid);
        r.verdict = w ? "some" : "none";
        if (w) {
            r.witness = std::to_string(w->exit_count) + "/" + std::to_string(w->tail_count) +
                        " tail samples exited under a negligible shift";
            r.evidence = classification_form(w->shift_class);
        }
    } else if (op == "subset") {
        const auto v = strong_subset(*a[0].family, *a[1].family, grid);
        r.verdict = to_string(v.holds);
        r.witness = v.note;
        if (v.counterexample) {
            std::string pt;
            for (double x : v.counterexample->second) pt += (pt.empty() ? "" : " ") + fmt_double(x);
            r.witness += (r.witness.empty() ? "" : "; ") + std::string("counterexample at eps=") +
                         fmt_double(v.counterexample->first) + " point (" + pt + ")";
        }
    } else if (op == "internal-subset") {
        const auto v = internal_subset(*a[0].family, *a[1].family, grid);
        r.verdict = to_string(v.holds);
        r.evidence = classification_form(v.excess);
        r.witness = "excess distance " + to_string(v.excess.verdict);
    } else if (op == "same-set") {
        const auto v = same_strong_set(*a[0].family, *a[1].family, *a[2].family, grid);
        r.verdict = to_string(v.equal);
        r.evidence = classification_form(v.hausdorff);
        r.witness = "two-sided excess " + to_string(v.hausdorff.verdict);
    } else if (op == "bounded") {
        const auto v = sharply_bounded(*a[0].family, grid);
        r.verdict = to_string(v.verdict);
        r.witness = v.note;
        if (v.verdict == Ternary::True)
            r.witness = "inside the eps^-" + fmt_double(v.witness_n) + " ball";
    } else if (op == "sigma") {
        const auto v = sigma_decomposition_check(*a[0].family, grid, 3, seed);
        r.verdict = v.failures.empty() && v.probes > 0 ? "confirmed" : "failed";
        r.witness = probe_summary(v.confirmed, v.probes, v.failures);
    } else if (op == "intersection") {
        const auto v = intersection_check(*a[0].family, *a[1].family, grid, 12, seed);
        r.verdict = v.failures.empty() && v.probes > 0 ? "confirmed" : "failed";
        r.witness = probe_summary(v.confirmed, v.probes, v.failures);
    } else if (op == "containment") {
        const auto catalog = interior_probes(*a[0].family, 8, seed);
        const auto v = containment_shadow(*a[0].family, *a[1].family, grid, catalog);
        r.verdict = v.hypothesis == Ternary::True ? to_string(v.conclusion)
                                                  : "hypothesis-" + to_string(v.hypothesis);
        r.witness = join_lines(v.notes);
        if (v.contained_from_eps)
            r.witness += (r.witness.empty() ? "" : "; ") + std::string("contained from eps=") +
                         fmt_double(*v.contained_from_eps);
    } else if (op == "openness") {
        const auto v = openness_probe(*a[0].point, *a[1].family, grid);
        r.verdict = v.failures.empty() && v.probes > 0 ? "confirmed" : "failed";
        r.witness = probe_summary(v.confirmed, v.probes, v.failures);
    } else if (op == "gsf-check") {
        const int kmax = a.size() > 1 ? static_cast<int>(*a[1].number) : 3;
        const auto v = gsf_check(*a[0].gsf, grid, kmax, 3, seed);
        r.verdict = to_string(v.verdict);
        r.witness = std::to_string(v.certificates.size()) + " certificates, " +
                    std::to_string(v.sup_bounds.size()) + " sup bounds";
        if (!v.notes.empty()) r.witness += ": " + join_lines(v.notes);
    } else if (op == "null") {
        const auto v = null_check(*a[0].gsf, *a[1].family, grid);
        r.verdict = to_string(v.is_null);
        r.evidence = classification_form(v.sup);
        r.witness = "sup over the region " + to_string(v.sup.verdict);
    } else if (op == "rep-independence") {
        const double order = a.size() > 2 ? *a[2].number : 20.0;
        const auto v = representative_independence(*a[0].gsf, *a[1].point, grid, order);
        r.verdict = to_string(v.verdict);
        r.witness = "shift of order " + fmt_double(v.shift_order);
    } else if (op == "lipschitz") {
        const auto v = lipschitz_probe(*a[0].gsf, *a[1].family, grid, 16, seed);
        r.verdict = to_string(v.moderate);
        r.evidence = classification_form(v.cls);
        r.witness = std::to_string(v.violations) + "/" + std::to_string(v.pairs) +
                    " pair violations; bound order " + fmt_double(v.cls.estimate.value);
        if (!v.notes.empty()) r.witness += "; " + join_lines(v.notes);
    } else if (op == "afj") {
        const int kmax = a.size() > 2 ? static_cast<int>(*a[2].number) : 6;
        const auto v = afj_probe(*a[0].gsf, *a[1].point, grid, kmax);
        r.verdict = to_string(v.differentiable);
        r.witness = v.note;
        std::vector<SExpr> kids{SExpr::make_atom("decay")};
        for (const auto& [k, rho] : v.decay)
            kids.push_back(SExpr::list({num(k), num(rho)}));
        r.evidence = SExpr::list(std::move(kids));
    } else if (op == "radii-contains") {
        r.verdict = to_string(radii_contains(*a[0].radii, *a[1].net, grid));
    } else if (op == "ball-member") {
        r.verdict =
            to_string(ball_member(*a[0].radii, *a[1].point, *a[2].net, *a[3].point, grid));
    } else if (op == "tau") {
        r.verdict = to_string(tau_identified(*a[0].radii, *a[1].point, *a[2].point, grid));
    } else if (op == "chain") {
        const auto v = topology_chain_probe(*a[0].point, *a[1].point, grid);
        r.verdict = v.failures.empty() && v.probes > 0 ? "confirmed" : "failed";
        r.witness = probe_summary(v.confirmed, v.probes, v.failures);
    } else if (op == "radii-axioms") {
        const auto v = radii_axiom_probe(*a[0].radii, grid);
        r.verdict = v.failures.empty() && v.probes > 0 ? "confirmed" : "failed";
        r.witness = probe_summary(v.confirmed, v.probes, v.failures);
    } else {
        throw ParseError("unknown check operation '" + op + "'", c.line, 0);
    }
}

bool approx(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

bool match_expect(const std::string& op, const std::string& verdict, const SExpr& expect) {
    if (op == "valuation") {
        if (!expect.leaf) return false;
        if (expect.atom == "inf" || verdict == "inf") return expect.atom == verdict;
        return approx(parse_double_text(verdict), parse_double_text(expect.atom), 0.05);
    }
    if (op == "sharp-distance") {
        if (!expect.leaf) return false;
        const double e = parse_double_text(expect.atom);
        return approx(parse_double_text(verdict), e, 1e-6 * std::max(1.0, std::fabs(e)));
    }
    if (op == "standard-part") {
        if (expect.leaf && expect.atom == "none") return verdict == "none";
        if (verdict == "none") return false;
        const SExpr got = parse_sexpr(verdict);
        if (expect.leaf) {
            if (!got.leaf) return false;
            return approx(parse_double_text(got.atom), parse_double_text(expect.atom), 1e-6);
        }
        if (!expect.is_list("vec") || !got.is_list("vec")) return false;
        if (expect.size() != got.size()) return false;
        for (std::size_t i = 1; i < expect.size(); ++i)
            if (!approx(number_of(got.kid(i)), number_of(expect.kid(i)), 1e-6)) return false;
        return true;
    }
    return expect.leaf && expect.atom == verdict;
}

CheckResult run_one(const ScenarioCheck& c, const std::vector<Arg>& a, const EpsGrid& grid,
                    unsigned seed) {
    CheckResult r;
    r.op = c.op;
    r.args = c.args;
    r.expect = c.expect;
    r.line = c.line;
    try {
        dispatch(c, a, grid, seed, r);
        r.matched = !c.expect || match_expect(c.op, r.verdict, *c.expect);
    } catch (const std::exception& ex) {
        r.errored = true;
        r.matched = false;
        r.verdict = "error";
        r.witness = ex.what();
    }
    return r;
}

}  // namespace

EpsGrid ScenarioDoc::grid() const { return EpsGrid::dyadic(grid_kmin, grid_kmax, tail_fraction); }

ScenarioDoc parse_scenario(const SExpr& e) {
    if (!e.is_list("scenario")) throw err(e, "expected a (scenario ...) document");
    ScenarioDoc doc;
    for (std::size_t i = 1; i < e.size(); ++i) {
        const SExpr& item = e.kid(i);
        if (item.is_list("grid")) {
            doc.grid_kmin = int_of(item.kid(1));
            doc.grid_kmax = int_of(item.kid(2));
            if (item.size() > 3) doc.tail_fraction = number_of(item.kid(3));
        } else if (item.is_list("seed")) {
            const int s = int_of(item.kid(1));
            if (s < 0) throw err(item, "seed must be nonnegative");
            doc.seed = static_cast<unsigned>(s);
        } else if (item.is_list("def")) {
            ScenarioDef d;
            d.kind = atom_of(item.kid(1), "a definition kind");
            if (!known_kind(d.kind))
                throw err(item.kid(1), "unknown definition kind '" + d.kind + "'");
            d.name = atom_of(item.kid(2), "a definition name");
            d.form = item.kid(3);
            doc.defs.push_back(std::move(d));
        } else if (item.is_list("check")) {
            ScenarioCheck c;
            const SExpr& call = item.kid(1);
            if (call.leaf || call.head().empty())
                throw err(call, "a check wants an (operation arguments...) form");
            c.op = std::string(call.head());
            c.args.assign(call.kids.begin() + 1, call.kids.end());
            for (std::size_t j = 2; j < item.size(); ++j) {
                if (!item.kid(j).is_list("expect"))
                    throw err(item.kid(j), "unknown check field");
                c.expect = item.kid(j).kid(1);
            }
            c.line = item.line;
            doc.checks.push_back(std::move(c));
        } else {
            throw err(item, "unknown scenario entry");
        }
    }
    return doc;
}

ScenarioDoc load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file '" + path + "'", 0, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(parse_sexpr(buf.str()));
}

SExpr scenario_form(const ScenarioDoc& doc) {
    std::vector<SExpr> kids{SExpr::make_atom("scenario")};
    kids.push_back(SExpr::list({SExpr::make_atom("grid"), num(doc.grid_kmin), num(doc.grid_kmax),
                                num(doc.tail_fraction)}));
    kids.push_back(SExpr::list({SExpr::make_atom("seed"), num(doc.seed)}));
    for (const auto& d : doc.defs)
        kids.push_back(SExpr::list(
            {SExpr::make_atom("def"), SExpr::make_atom(d.kind), SExpr::make_atom(d.name), d.form}));
    for (const auto& c : doc.checks) {
        std::vector<SExpr> call{SExpr::make_atom(c.op)};
        for (const auto& a : c.args) call.push_back(a);
        std::vector<SExpr> chk{SExpr::make_atom("check"), SExpr::list(std::move(call))};
        if (c.expect) chk.push_back(SExpr::list({SExpr::make_atom("expect"), *c.expect}));
        kids.push_back(SExpr::list(std::move(chk)));
    }
    return SExpr::list(std::move(kids));
}

NameTable resolve(const ScenarioDoc& doc) {
    NameTable names;
    for (const auto& d : doc.defs) {
        bool fresh = true;
        if (d.kind == "net") fresh = names.nets.emplace(d.name, parse_net(d.form, names)).second;
        else if (d.kind == "iset")
            fresh = names.isets.emplace(d.name, parse_iset(d.form, names)).second;
        else if (d.kind == "point")
            fresh = names.points.emplace(d.name, parse_point(d.form, names)).second;
        else if (d.kind == "family")
            fresh = names.families.emplace(d.name, parse_family(d.form, names)).second;
        else if (d.kind == "smooth")
            fresh = names.smooths.emplace(d.name, parse_smooth(d.form, names)).second;
        else if (d.kind == "gsf")
            fresh = names.gsfs.emplace(d.name, parse_gsf(d.form, d.name, names)).second;
        else if (d.kind == "radii")
            fresh = names.radii.emplace(d.name, parse_radii(d.form, names)).second;
        if (!fresh)
            throw ParseError("duplicate definition of " + d.kind + " '" + d.name + "'",
                             d.form.line, d.form.col);
    }
    return names;
}

int ScenarioReport::matched() const {
    int m = 0;
    for (const auto& r : results) m += (!r.errored && r.matched) ? 1 : 0;
    return m;
}

SExpr ScenarioReport::form() const {
    std::vector<SExpr> res{SExpr::make_atom("results")};
    for (const auto& r : results) {
        std::vector<SExpr> call{SExpr::make_atom(r.op)};
        for (const auto& a : r.args) call.push_back(a);
        std::vector<SExpr> kids{SExpr::make_atom("check"), SExpr::list(std::move(call)),
                                field("verdict", r.verdict)};
        if (r.expect) kids.push_back(SExpr::list({SExpr::make_atom("expect"), *r.expect}));
        kids.push_back(field("matched", r.matched ? "true" : "false"));
        if (r.errored) kids.push_back(field("error", "true"));
        if (!r.witness.empty()) kids.push_back(field("witness", r.witness));
        if (r.evidence) kids.push_back(SExpr::list({SExpr::make_atom("evidence"), *r.evidence}));
        res.push_back(SExpr::list(std::move(kids)));
    }
    return SExpr::list(
        {SExpr::make_atom("report"), SExpr::list({SExpr::make_atom("seed"), num(seed)}),
         SExpr::list({SExpr::make_atom("grid"), num(grid_kmin), num(grid_kmax)}),
         SExpr::list({SExpr::make_atom("summary"), field("checks", std::to_string(checks())),
                      field("matched", std::to_string(matched())),
                      field("failed", std::to_string(failed()))}),
         SExpr::list(std::move(res)), scenario_echo});
}

std::string ScenarioReport::render() const { return print_sexpr(form()) + "\n"; }

ScenarioReport run_scenario(const ScenarioDoc& doc, int jobs) {
    const NameTable names = resolve(doc);
    const EpsGrid grid = doc.grid();

    // Load-time argument resolution: dangling names and malformed argument
    // forms surface here, before any check runs.
    std::vector<std::vector<Arg>> args(doc.checks.size());
    for (std::size_t i = 0; i < doc.checks.size(); ++i)
        args[i] = resolve_args(doc.checks[i], names);

    ScenarioReport rep;
    rep.seed = doc.seed;
    rep.grid_kmin = doc.grid_kmin;
    rep.grid_kmax = doc.grid_kmax;
    rep.scenario_echo = scenario_form(doc);
    rep.results.resize(doc.checks.size());
    parallel_for(doc.checks.size(), jobs, [&](std::size_t i) {
        rep.results[i] = run_one(doc.checks[i], args[i], grid, doc.seed);
    });
    return rep;
}

}  // namespace colombeau
