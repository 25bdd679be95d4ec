#include "colombeau/format.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

#include "colombeau/errors.hpp"

namespace colombeau {

namespace {

ParseError err(const SExpr& e, const std::string& msg) { return {msg, e.line, e.col}; }

bool is_number(std::string_view t, double& out) {
    if (t == "inf" || t == "+inf") {
        out = std::numeric_limits<double>::infinity();
        return true;
    }
    if (t == "-inf") {
        out = -std::numeric_limits<double>::infinity();
        return true;
    }
    if (t == "nan") {
        out = std::numeric_limits<double>::quiet_NaN();
        return true;
    }
    const auto* first = t.data();
    const auto* last = t.data() + t.size();
    const auto r = std::from_chars(first, last, out);
    return r.ec == std::errc() && r.ptr == last;
}

SExpr num_atom(double v) { return SExpr::make_atom(fmt_double(v)); }

const SExpr& named_field(const SExpr& e, std::string_view head) {
    for (std::size_t i = 1; i < e.size(); ++i)
        if (e.kid(i).is_list(head)) return e.kid(i);
    throw err(e, std::string("missing (") + std::string(head) + " ...) field");
}

const SExpr* named_field_opt(const SExpr& e, std::string_view head) {
    for (std::size_t i = 1; i < e.size(); ++i)
        if (e.kid(i).is_list(head)) return &e.kid(i);
    return nullptr;
}

Prim prim_of(std::string_view name, const SExpr& at) {
    if (name == "sin") return Prim::Sin;
    if (name == "cos") return Prim::Cos;
    if (name == "exp") return Prim::Exp;
    if (name == "log") return Prim::Log;
    if (name == "tanh") return Prim::Tanh;
    if (name == "sqrt") return Prim::Sqrt;
    throw err(at, "unknown primitive '" + std::string(name) + "'");
}

std::string_view prim_name(Prim p) {
    switch (p) {
        case Prim::Sin: return "sin";
        case Prim::Cos: return "cos";
        case Prim::Exp: return "exp";
        case Prim::Log: return "log";
        case Prim::Tanh: return "tanh";
        case Prim::Sqrt: return "sqrt";
    }
    return "sin";
}

bool is_prim_name(std::string_view name) {
    return name == "sin" || name == "cos" || name == "exp" || name == "log" ||
           name == "tanh" || name == "sqrt";
}

std::vector<SExpr> tail_forms(const SExpr& e) {
    std::vector<SExpr> out(e.kids.begin() + 1, e.kids.end());
    if (out.empty()) throw err(e, "form needs at least one argument");
    return out;
}

}  // namespace

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    if (v == std::numeric_limits<double>::infinity()) return "inf";
    if (v == -std::numeric_limits<double>::infinity()) return "-inf";
    char buf[40];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

double parse_double_text(std::string_view text) {
    double v;
    if (!is_number(text, v)) throw ParseError("expected a number, got '" + std::string(text) + "'", 0, 0);
    return v;
}

double number_of(const SExpr& e) {
    double v;
    if (!e.leaf || !is_number(e.atom, v)) throw err(e, "expected a number");
    return v;
}

int int_of(const SExpr& e) {
    const double v = number_of(e);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) throw err(e, "expected an integer");
    return i;
}

IndexSet parse_iset(const SExpr& e, const NameTable& names) {
    if (e.leaf) {
        const auto it = names.isets.find(e.atom);
        if (it == names.isets.end()) throw err(e, "unknown index set '" + e.atom + "'");
        return it->second;
    }
    const auto h = e.head();
    if (h == "interval") return IndexSet::interval(number_of(e.kid(1)), number_of(e.kid(2)));
    if (h == "intervals") {
        std::vector<IndexSet::Interval> parts;
        for (std::size_t i = 1; i < e.size(); ++i)
            parts.emplace_back(number_of(e.kid(i).kid(0)), number_of(e.kid(i).kid(1)));
        return IndexSet::intervals(std::move(parts));
    }
    if (h == "geometric") return IndexSet::geometric(number_of(e.kid(1)), number_of(e.kid(2)));
    if (h == "all") return IndexSet::all();
    if (h == "complement") return parse_iset(e.kid(1), names).complement();
    throw err(e, "unknown index set form");
}

SExpr iset_form(const IndexSet& s) {
    if (s.kind() == IndexSet::Kind::Geometric) {
        SExpr geo = SExpr::list({SExpr::make_atom("geometric"), num_atom(s.geo_start()),
                                 num_atom(s.geo_ratio())});
        if (!s.complemented()) return geo;
        return SExpr::list({SExpr::make_atom("complement"), std::move(geo)});
    }
    if (s.parts().size() == 1)
        return SExpr::list({SExpr::make_atom("interval"), num_atom(s.parts()[0].first),
                            num_atom(s.parts()[0].second)});
    std::vector<SExpr> kids{SExpr::make_atom("intervals")};
    for (const auto& [a, b] : s.parts()) kids.push_back(SExpr::list({num_atom(a), num_atom(b)}));
    return SExpr::list(std::move(kids));
}

NetExpr parse_net(const SExpr& e, const NameTable& names) {
    if (e.leaf) {
        double v;
        if (is_number(e.atom, v)) return NetExpr::constant(v);
        const auto it = names.nets.find(e.atom);
        if (it == names.nets.end()) throw err(e, "unknown net '" + e.atom + "'");
        return it->second;
    }
    const auto h = e.head();
    const auto kid_nets = [&](std::size_t from) {
        std::vector<NetExpr> out;
        for (std::size_t i = from; i < e.size(); ++i) out.push_back(parse_net(e.kid(i), names));
        if (out.empty()) throw err(e, "form needs at least one net argument");
        return out;
    };
    if (h == "const") return NetExpr::constant(number_of(e.kid(1)));
    if (h == "epspow") return NetExpr::eps_pow(number_of(e.kid(1)));
    if (h == "expinveps") return NetExpr::exp_inv_eps();
    if (h == "mask") return NetExpr::mask(parse_iset(e.kid(1), names), parse_net(e.kid(2), names));
    if (h == "sum") return NetExpr::sum(kid_nets(1));
    if (h == "prod") return NetExpr::prod(kid_nets(1));
    if (h == "neg") return NetExpr::neg(parse_net(e.kid(1), names));
    if (h == "abs") return NetExpr::abs(parse_net(e.kid(1), names));
    if (h == "min") return NetExpr::min(parse_net(e.kid(1), names), parse_net(e.kid(2), names));
    if (h == "max") return NetExpr::max(parse_net(e.kid(1), names), parse_net(e.kid(2), names));
    if (h == "recip") return NetExpr::recip(parse_net(e.kid(1), names));
    if (h == "idempotent") return NetExpr::idempotent(parse_iset(e.kid(1), names));
    if (h == "data") {
        std::vector<std::pair<double, double>> table;
        for (std::size_t i = 1; i < e.size(); ++i)
            table.emplace_back(number_of(e.kid(i).kid(0)), number_of(e.kid(i).kid(1)));
        return NetExpr::tabulated(std::move(table));
    }
    if (h == "cutoff") {
        auto fam = std::make_shared<SetFamily>(parse_family(e.kid(1), names));
        std::vector<int> alpha;
        for (const auto& k : e.kid(2).kids) alpha.push_back(int_of(k));
        const GenNumber at = parse_point(e.kid(3), names);
        return NetExpr::cutoff(std::move(fam), std::move(alpha), at.comps());
    }
    if (is_prim_name(h)) return NetExpr::apply(prim_of(h, e), parse_net(e.kid(1), names));
    throw err(e, "unknown net form '" + std::string(h) + "'");
}

SExpr net_form(const NetExpr& n) {
    const auto& nd = n.node();
    using K = NetExpr::Kind;
    const auto with_kids = [&](const char* head) {
        std::vector<SExpr> kids{SExpr::make_atom(head)};
        for (const auto& k : nd.kids) kids.push_back(net_form(k));
        return SExpr::list(std::move(kids));
    };
    switch (nd.kind) {
        case K::Const: return SExpr::list({SExpr::make_atom("const"), num_atom(nd.a)});
        case K::EpsPow: return SExpr::list({SExpr::make_atom("epspow"), num_atom(nd.a)});
        case K::ExpInvEps: return SExpr::list({SExpr::make_atom("expinveps")});
        case K::Mask:
            return SExpr::list(
                {SExpr::make_atom("mask"), iset_form(*nd.iset), net_form(nd.kids[0])});
        case K::Sum: return with_kids("sum");
        case K::Prod: return with_kids("prod");
        case K::Neg: return with_kids("neg");
        case K::Abs: return with_kids("abs");
        case K::Min: return with_kids("min");
        case K::Max: return with_kids("max");
        case K::Recip: return with_kids("recip");
        case K::Apply: return with_kids(std::string(prim_name(nd.prim)).c_str());
        case K::Cutoff: {
            std::vector<SExpr> alpha;
            for (int a : nd.alpha) alpha.push_back(num_atom(a));
            std::vector<SExpr> pt{SExpr::make_atom("vec")};
            for (const auto& k : nd.kids) pt.push_back(net_form(k));
            return SExpr::list({SExpr::make_atom("cutoff"), family_form(*nd.family),
                                SExpr::list(std::move(alpha)), SExpr::list(std::move(pt))});
        }
        case K::Data: {
            std::vector<SExpr> kids{SExpr::make_atom("data")};
            for (const auto& [eps, v] : nd.table)
                kids.push_back(SExpr::list({num_atom(eps), num_atom(v)}));
            return SExpr::list(std::move(kids));
        }
    }
    return SExpr::make_atom("?");  // unreachable
}

GenNumber parse_point(const SExpr& e, const NameTable& names) {
    if (e.leaf) {
        double v;
        if (is_number(e.atom, v)) return GenNumber::scalar(v);
        const auto it = names.points.find(e.atom);
        if (it == names.points.end()) throw err(e, "unknown point '" + e.atom + "'");
        return it->second;
    }
    if (e.is_list("vec")) {
        std::vector<NetExpr> comps;
        for (std::size_t i = 1; i < e.size(); ++i) comps.push_back(parse_net(e.kid(i), names));
        if (comps.empty()) throw err(e, "a point needs at least one component");
        return GenNumber(std::move(comps));
    }
    // A bare net form is a scalar point.
    return GenNumber(parse_net(e, names));
}

SExpr point_form(const GenNumber& x) {
    std::vector<SExpr> kids{SExpr::make_atom("vec")};
    for (const auto& c : x.comps()) kids.push_back(net_form(c));
    return SExpr::list(std::move(kids));
}

SetFamily parse_family(const SExpr& e, const NameTable& names) {
    if (e.leaf) {
        const auto it = names.families.find(e.atom);
        if (it == names.families.end()) throw err(e, "unknown set family '" + e.atom + "'");
        return it->second;
    }
    const auto h = e.head();
    const auto kid_points = [&](std::size_t from) {
        std::vector<GenNumber> out;
        for (std::size_t i = from; i < e.size(); ++i) out.push_back(parse_point(e.kid(i), names));
        if (out.empty()) throw err(e, "form needs at least one point");
        return out;
    };
    if (h == "empty") return SetFamily::empty(int_of(e.kid(1)));
    if (h == "full") return SetFamily::full(int_of(e.kid(1)));
    if (h == "ball")
        return SetFamily::ball(parse_point(e.kid(1), names), parse_net(e.kid(2), names));
    if (h == "punctured")
        return SetFamily::punctured_ball(parse_point(e.kid(1), names), parse_net(e.kid(2), names));
    if (h == "box")
        return SetFamily::box(parse_point(e.kid(1), names), parse_point(e.kid(2), names));
    if (h == "halfspace") {
        std::vector<double> normal;
        for (const auto& k : e.kid(1).kids) normal.push_back(number_of(k));
        return SetFamily::half_space(std::move(normal), parse_net(e.kid(2), names));
    }
    if (h == "points") return SetFamily::points(kid_points(1));
    if (h == "hull") return SetFamily::convex_hull(kid_points(1));
    if (h == "complement") return SetFamily::complement(parse_family(e.kid(1), names));
    if (h == "union")
        return SetFamily::set_union(parse_family(e.kid(1), names), parse_family(e.kid(2), names));
    if (h == "intersection")
        return SetFamily::set_intersection(parse_family(e.kid(1), names),
                                           parse_family(e.kid(2), names));
    if (h == "eroded") return SetFamily::eroded(parse_family(e.kid(1), names), number_of(e.kid(2)));
    if (h == "dilated")
        return SetFamily::dilated(parse_family(e.kid(1), names), number_of(e.kid(2)));
    throw err(e, "unknown set family form '" + std::string(h) + "'");
}

SExpr family_form(const SetFamily& f) {
    using K = SetFamily::Kind;
    const auto with_points = [&](const char* head) {
        std::vector<SExpr> kids{SExpr::make_atom(head)};
        for (const auto& p : f.anchors()) kids.push_back(point_form(p));
        return SExpr::list(std::move(kids));
    };
    switch (f.kind()) {
        case K::Empty: return SExpr::list({SExpr::make_atom("empty"), num_atom(f.dim())});
        case K::Full: return SExpr::list({SExpr::make_atom("full"), num_atom(f.dim())});
        case K::Ball:
            return SExpr::list({SExpr::make_atom("ball"), point_form(f.anchors()[0]),
                                net_form(f.nets()[0])});
        case K::Punctured:
            return SExpr::list({SExpr::make_atom("punctured"), point_form(f.anchors()[0]),
                                net_form(f.nets()[0])});
        case K::Box:
            return SExpr::list({SExpr::make_atom("box"), point_form(f.anchors()[0]),
                                point_form(f.anchors()[1])});
        case K::HalfSpace: {
            std::vector<SExpr> n;
            for (double v : f.normal()) n.push_back(num_atom(v));
            return SExpr::list({SExpr::make_atom("halfspace"), SExpr::list(std::move(n)),
                                net_form(f.nets()[0])});
        }
        case K::Points: return with_points("points");
        case K::Hull: return with_points("hull");
        case K::Complement:
            return SExpr::list({SExpr::make_atom("complement"), family_form(f.child(0))});
        case K::Union:
            return SExpr::list({SExpr::make_atom("union"), family_form(f.child(0)),
                                family_form(f.child(1))});
        case K::Intersection:
            return SExpr::list({SExpr::make_atom("intersection"), family_form(f.child(0)),
                                family_form(f.child(1))});
        case K::Eroded:
            return SExpr::list({SExpr::make_atom("eroded"), family_form(f.child(0)),
                                num_atom(f.offset_order())});
        case K::Dilated:
            return SExpr::list({SExpr::make_atom("dilated"), family_form(f.child(0)),
                                num_atom(f.offset_order())});
    }
    return SExpr::make_atom("?");  // unreachable
}

SmoothExpr parse_smooth(const SExpr& e, const NameTable& names) {
    if (e.leaf) {
        // Spatial variables x1..xd.
        if (e.atom.size() >= 2 && e.atom[0] == 'x') {
            bool digits = true;
            for (std::size_t i = 1; i < e.atom.size(); ++i)
                digits = digits && std::isdigit(static_cast<unsigned char>(e.atom[i]));
            if (digits) {
                const int idx = std::stoi(e.atom.substr(1));
                if (idx < 1) throw err(e, "variables are numbered from x1");
                return SmoothExpr::var(idx - 1);
            }
        }
        double v;
        if (is_number(e.atom, v)) return SmoothExpr::constant(v);
        const auto it = names.smooths.find(e.atom);
        if (it == names.smooths.end()) throw err(e, "unknown smooth expression '" + e.atom + "'");
        return it->second;
    }
    const auto h = e.head();
    const auto kid_smooths = [&](std::size_t from) {
        std::vector<SmoothExpr> out;
        for (std::size_t i = from; i < e.size(); ++i)
            out.push_back(parse_smooth(e.kid(i), names));
        if (out.empty()) throw err(e, "form needs at least one argument");
        return out;
    };
    if (h == "const") return SmoothExpr::constant(number_of(e.kid(1)));
    if (h == "coeff") return SmoothExpr::coeff(parse_net(e.kid(1), names));
    if (h == "sum") return SmoothExpr::sum(kid_smooths(1));
    if (h == "prod") return SmoothExpr::prod(kid_smooths(1));
    if (h == "ipow") return SmoothExpr::int_pow(parse_smooth(e.kid(1), names), int_of(e.kid(2)));
    if (h == "cutoffstep") {
        auto fam = std::make_shared<SetFamily>(parse_family(e.kid(1), names));
        if (e.size() > 2 && e.kid(2).is_list("alpha")) {
            std::vector<int> alpha;
            for (std::size_t i = 1; i < e.kid(2).size(); ++i)
                alpha.push_back(int_of(e.kid(2).kid(i)));
            return SmoothExpr::cutoff_step(std::move(fam), std::move(alpha));
        }
        return SmoothExpr::cutoff_step(std::move(fam));
    }
    if (is_prim_name(h)) return SmoothExpr::apply(prim_of(h, e), parse_smooth(e.kid(1), names));
    throw err(e, "unknown smooth form '" + std::string(h) + "'");
}

SExpr smooth_form(const SmoothExpr& s) {
    const auto& nd = s.node();
    using K = SmoothExpr::Kind;
    const auto with_kids = [&](const char* head) {
        std::vector<SExpr> kids{SExpr::make_atom(head)};
        for (const auto& k : nd.kids) kids.push_back(smooth_form(k));
        return SExpr::list(std::move(kids));
    };
    switch (nd.kind) {
        case K::Var: return SExpr::make_atom("x" + std::to_string(nd.var + 1));
        case K::Coeff:
            if (nd.coeff->kind() == NetExpr::Kind::Const)
                return SExpr::list({SExpr::make_atom("const"), num_atom(nd.coeff->node().a)});
            return SExpr::list({SExpr::make_atom("coeff"), net_form(*nd.coeff)});
        case K::Sum: return with_kids("sum");
        case K::Prod: return with_kids("prod");
        case K::IntPow:
            return SExpr::list(
                {SExpr::make_atom("ipow"), smooth_form(nd.kids[0]), num_atom(nd.ipow)});
        case K::Apply: return with_kids(std::string(prim_name(nd.prim)).c_str());
        case K::CutoffStep: {
            bool derived = false;
            for (int a : nd.alpha) derived = derived || a != 0;
            if (!derived)
                return SExpr::list({SExpr::make_atom("cutoffstep"), family_form(*nd.family)});
            std::vector<SExpr> al{SExpr::make_atom("alpha")};
            for (int a : nd.alpha) al.push_back(num_atom(a));
            return SExpr::list({SExpr::make_atom("cutoffstep"), family_form(*nd.family),
                                SExpr::list(std::move(al))});
        }
    }
    return SExpr::make_atom("?");  // unreachable
}

GSFDef parse_gsf(const SExpr& e, std::string name, const NameTable& names) {
    if (e.leaf) {
        const auto it = names.gsfs.find(e.atom);
        if (it == names.gsfs.end()) throw err(e, "unknown function '" + e.atom + "'");
        return it->second;
    }
    if (!e.is_list("gsf")) throw err(e, "expected a (gsf ...) form");
    const SExpr& outs = named_field(e, "outputs");
    std::vector<SmoothExpr> outputs;
    for (const auto& o : tail_forms(outs)) outputs.push_back(parse_smooth(o, names));
    SetFamily domain = parse_family(named_field(e, "domain").kid(1), names);
    bool strong = true;
    if (const SExpr* m = named_field_opt(e, "membership")) {
        const auto& v = m->kid(1);
        if (v.atom == "internal")
            strong = false;
        else if (v.atom != "strong")
            throw err(*m, "membership must be strong or internal");
    }
    return make_gsf(std::move(name), std::move(outputs), std::move(domain), strong);
}

SExpr gsf_form(const GSFDef& f) {
    std::vector<SExpr> outs{SExpr::make_atom("outputs")};
    for (const auto& o : f.outputs) outs.push_back(smooth_form(o));
    return SExpr::list(
        {SExpr::make_atom("gsf"), SExpr::list(std::move(outs)),
         SExpr::list({SExpr::make_atom("domain"), family_form(f.domain)}),
         SExpr::list({SExpr::make_atom("membership"),
                      SExpr::make_atom(f.strongly_internal_domain ? "strong" : "internal")})});
}

RadiiSet parse_radii(const SExpr& e, const NameTable& names) {
    if (e.leaf) {
        if (e.atom == "sharp") return RadiiSet::sharp();
        if (e.atom == "fermat") return RadiiSet::fermat();
        if (e.atom.rfind("powerband:", 0) == 0)
            return RadiiSet::power_band(parse_double_text(e.atom.substr(10)));
        const auto it = names.radii.find(e.atom);
        if (it == names.radii.end()) throw err(e, "unknown set of radii '" + e.atom + "'");
        return it->second;
    }
    if (e.is_list("generated")) return RadiiSet::generated(parse_net(e.kid(1), names));
    throw err(e, "unknown radii form");
}

SExpr radii_form(const RadiiSet& r) {
    switch (r.kind()) {
        case RadiiSet::Kind::Sharp: return SExpr::make_atom("sharp");
        case RadiiSet::Kind::Fermat: return SExpr::make_atom("fermat");
        case RadiiSet::Kind::PowerBand:
            return SExpr::make_atom("powerband:" + fmt_double(r.band()));
        case RadiiSet::Kind::Generated:
            return SExpr::list({SExpr::make_atom("generated"), net_form(r.generator())});
    }
    return SExpr::make_atom("sharp");  // unreachable
}

}  // namespace colombeau
