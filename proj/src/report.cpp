#include "colombeau/report.hpp"

#include <cmath>
#include <limits>

namespace colombeau {

namespace {

SExpr field(const char* key, SExpr value) {
    return SExpr::list({SExpr::make_atom(key), std::move(value)});
}

SExpr field(const char* key, const std::string& atom) {
    return field(key, SExpr::make_atom(atom));
}

SExpr field(const char* key, double v) { return field(key, SExpr::make_atom(fmt_double(v))); }

std::string csv_cell(double v) { return fmt_double(v); }

double log_mag(double v) {
    const double a = std::fabs(v);
    return a > 0.0 ? std::log(a) : -std::numeric_limits<double>::infinity();
}

}  // namespace

SExpr ternary_form(Ternary t) { return SExpr::make_atom(to_string(t)); }

SExpr member_form(Member m) { return SExpr::make_atom(to_string(m)); }

SExpr valuation_form(const ValuationEstimate& v) {
    return SExpr::list({SExpr::make_atom("valuation"), field("value", v.value),
                        field("method", to_string(v.method)), field("residual", v.residual),
                        SExpr::list({SExpr::make_atom("window"), SExpr::make_atom(fmt_double(v.window_lo)),
                                     SExpr::make_atom(fmt_double(v.window_hi))}),
                        field("samples", static_cast<double>(v.samples))});
}

SExpr classification_form(const Classification& c) {
    std::vector<SExpr> kids{SExpr::make_atom("classification"),
                            field("verdict", to_string(c.verdict)), valuation_form(c.estimate),
                            field("upper-order", c.upper_order),
                            field("lower-order", c.lower_order)};
    if (!c.note.empty()) kids.push_back(field("note", c.note));
    return SExpr::list(std::move(kids));
}

void write_net_csv(std::ostream& os, const NetExpr& net, const EpsGrid& grid) {
    os << "eps,value,logabs\n";
    for (double eps : grid.samples()) {
        const double v = net.eval(eps);
        os << csv_cell(eps) << ',' << csv_cell(v) << ',' << csv_cell(log_mag(v)) << '\n';
    }
}

void write_distance_csv(std::ostream& os, const GenNumber& x, const GenNumber& y,
                        const EpsGrid& grid) {
    os << "eps,distance,logabs\n";
    for (double eps : grid.samples()) {
        const auto a = x.eval(eps);
        const auto b = y.eval(eps);
        double s = 0.0;
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
            s += (a[i] - b[i]) * (a[i] - b[i]);
        const double d = std::sqrt(s);
        os << csv_cell(eps) << ',' << csv_cell(d) << ',' << csv_cell(log_mag(d)) << '\n';
    }
}

void write_ratio_csv(std::ostream& os, const AfjProbe& probe) {
    os << "k,ratio,logabs\n";
    for (const auto& [k, r] : probe.decay)
        os << csv_cell(k) << ',' << csv_cell(r) << ',' << csv_cell(log_mag(r)) << '\n';
}

}  // namespace colombeau
