#include "colombeau/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace colombeau::canon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxBases = 6;
constexpr std::size_t kMaxTerms = 128;

bool mask_less(const Term& x, const Term& y) {
    if (x.exponent != y.exponent) return x.exponent < y.exponent;
    return x.mask < y.mask;
}

// Sort, merge equal (exponent, mask) pairs, drop zero coefficients.
void combine(Form& f) {
    std::sort(f.terms.begin(), f.terms.end(), mask_less);
    std::vector<Term> out;
    for (const auto& t : f.terms) {
        if (!out.empty() && out.back().exponent == t.exponent && out.back().mask == t.mask)
            out.back().coeff += t.coeff;
        else
            out.push_back(t);
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const Term& t) { return t.coeff == 0.0; }),
              out.end());
    f.terms = std::move(out);
}

int base_index(Form& f, const IndexSet& s) {
    for (std::size_t i = 0; i < f.bases.size(); ++i)
        if (f.bases[i].same_structure(s)) return static_cast<int>(i);
    f.bases.push_back(s);
    return static_cast<int>(f.bases.size() - 1);
}

// Remap `src` terms onto `dst`'s base list (extending it as needed).
bool merge_into(Form& dst, const Form& src, std::vector<Term>& out_terms) {
    std::vector<int> remap(src.bases.size());
    for (std::size_t i = 0; i < src.bases.size(); ++i)
        remap[i] = base_index(dst, src.bases[i]);
    if (dst.bases.size() > kMaxBases) return false;
    for (const auto& t : src.terms) {
        Term nt = t;
        for (auto& [b, pos] : nt.mask) b = remap[static_cast<std::size_t>(b)];
        std::sort(nt.mask.begin(), nt.mask.end());
        out_terms.push_back(std::move(nt));
    }
    return true;
}

int geometric_base_count(const Form& f) {
    int n = 0;
    for (const auto& b : f.bases)
        if (b.kind() == IndexSet::Kind::Geometric) ++n;
    return n;
}

bool caps_ok(const Form& f) {
    return f.bases.size() <= kMaxBases && f.terms.size() <= kMaxTerms &&
           geometric_base_count(f) <= 1;
}

// Intersect a term's mask onto an assignment: true if compatible.
bool compatible(const Term& t, unsigned assignment) {
    for (const auto& [b, pos] : t.mask) {
        bool bit = (assignment >> b) & 1u;
        if (bit != pos) return false;
    }
    return true;
}

// Does the atom's interval-constraint conjunction contain points arbitrarily
// close to 0? With at most one geometric base in scope this single test
// decides accumulation for the whole conjunction: a geometric sequence (and
// its co-dense complement) meets any interval neighborhood (0, delta].
bool atom_accumulates(const std::vector<IndexSet>& bases, unsigned assignment) {
    IndexSet j = IndexSet::all();
    for (std::size_t i = 0; i < bases.size(); ++i) {
        if (bases[i].kind() == IndexSet::Kind::Geometric) continue;
        bool pos = (assignment >> i) & 1u;
        IndexSet c = pos ? bases[i] : bases[i].complement();
        j = IndexSet::intersect_intervals(j, c);
        if (j.parts().empty()) return false;
    }
    return !j.parts().empty() && j.parts().front().first == 0.0;
}

std::vector<std::pair<double, double>> atom_terms(const Form& f, unsigned assignment) {
    std::vector<std::pair<double, double>> ts;
    for (const auto& t : f.terms)
        if (compatible(t, assignment)) ts.push_back({t.exponent, t.coeff});
    std::sort(ts.begin(), ts.end());
    std::vector<std::pair<double, double>> out;
    for (const auto& [e, c] : ts) {
        if (!out.empty() && out.back().first == e)
            out.back().second += c;
        else
            out.push_back({e, c});
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& p) { return p.second == 0.0; }),
              out.end());
    return out;
}

std::vector<unsigned> accumulating_assignments(const Form& f) {
    std::vector<unsigned> out;
    unsigned n_atoms = 1u << f.bases.size();
    for (unsigned a = 0; a < n_atoms; ++a)
        if (atom_accumulates(f.bases, a)) out.push_back(a);
    return out;
}

// Rebuild a form from per-atom term lists carrying full signatures. Only
// accumulating atoms matter downstream, so the rest are dropped here.
Form from_atoms(const Form& shape,
                const std::vector<std::pair<unsigned, std::vector<std::pair<double, double>>>>& atoms) {
    Form out;
    out.bases = shape.bases;
    for (const auto& [assignment, ts] : atoms) {
        std::vector<std::pair<int, bool>> sig;
        sig.reserve(out.bases.size());
        for (std::size_t b = 0; b < out.bases.size(); ++b)
            sig.push_back({static_cast<int>(b), ((assignment >> b) & 1u) != 0});
        for (const auto& [e, c] : ts) out.terms.push_back({c, e, sig});
    }
    combine(out);
    return out;
}

// Sign of x - y as eps -> 0 inside one atom: -1, 0, +1.
int eventual_cmp(const std::vector<std::pair<double, double>>& x,
                 const std::vector<std::pair<double, double>>& y) {
    // Merge as x - y and look at the dominant (smallest-exponent) term.
    std::vector<std::pair<double, double>> diff = x;
    for (const auto& [e, c] : y) diff.push_back({e, -c});
    std::sort(diff.begin(), diff.end());
    std::vector<std::pair<double, double>> m;
    for (const auto& [e, c] : diff) {
        if (!m.empty() && m.back().first == e)
            m.back().second += c;
        else
            m.push_back({e, c});
    }
    for (const auto& [e, c] : m) {
        if (c > 0.0) return 1;
        if (c < 0.0) return -1;
    }
    return 0;
}

std::optional<Form> canon_rec(const NetExpr& net);

std::optional<Form> unary_atomwise(const NetExpr& child, NetExpr::Kind op) {
    auto cf = canon_rec(child);
    if (!cf) return std::nullopt;
    std::vector<std::pair<unsigned, std::vector<std::pair<double, double>>>> atoms;
    for (unsigned a : accumulating_assignments(*cf)) {
        auto ts = atom_terms(*cf, a);
        if (op == NetExpr::Kind::Abs && !ts.empty() && ts.front().second < 0.0)
            for (auto& [e, c] : ts) c = -c;
        atoms.push_back({a, std::move(ts)});
    }
    Form out = from_atoms(*cf, atoms);
    if (!caps_ok(out)) return std::nullopt;
    return out;
}

std::optional<Form> binary_atomwise(const NetExpr& lhs, const NetExpr& rhs, NetExpr::Kind op) {
    auto lf = canon_rec(lhs);
    if (!lf) return std::nullopt;
    auto rf = canon_rec(rhs);
    if (!rf) return std::nullopt;
    Form merged;
    merged.bases = lf->bases;
    std::vector<Term> lt, rt;
    Form l_onto = merged;
    if (!merge_into(l_onto, *lf, lt)) return std::nullopt;
    if (!merge_into(l_onto, *rf, rt)) return std::nullopt;
    Form lform{l_onto.bases, std::move(lt)};
    Form rform{l_onto.bases, std::move(rt)};
    if (!caps_ok(lform)) return std::nullopt;
    std::vector<std::pair<unsigned, std::vector<std::pair<double, double>>>> atoms;
    for (unsigned a : accumulating_assignments(lform)) {
        auto xs = atom_terms(lform, a);
        auto ys = atom_terms(rform, a);
        int cmp = eventual_cmp(xs, ys);  // sign of x - y near 0
        bool take_left = (op == NetExpr::Kind::Min) ? cmp <= 0 : cmp >= 0;
        atoms.push_back({a, take_left ? std::move(xs) : std::move(ys)});
    }
    Form out = from_atoms(lform, atoms);
    if (!caps_ok(out)) return std::nullopt;
    return out;
}

std::optional<Form> canon_rec(const NetExpr& net) {
    const auto& n = net.node();
    switch (net.kind()) {
        case NetExpr::Kind::Const: {
            Form f;
            if (n.a != 0.0) f.terms.push_back({n.a, 0.0, {}});
            return f;
        }
        case NetExpr::Kind::EpsPow: {
            Form f;
            f.terms.push_back({1.0, n.a, {}});
            return f;
        }
        case NetExpr::Kind::Neg: {
            auto f = canon_rec(n.kids[0]);
            if (!f) return std::nullopt;
            for (auto& t : f->terms) t.coeff = -t.coeff;
            return f;
        }
        case NetExpr::Kind::Sum: {
            Form acc;
            std::vector<Term> terms;
            for (const auto& k : n.kids) {
                auto f = canon_rec(k);
                if (!f) return std::nullopt;
                if (!merge_into(acc, *f, terms)) return std::nullopt;
            }
            acc.terms = std::move(terms);
            combine(acc);
            if (!caps_ok(acc)) return std::nullopt;
            return acc;
        }
        case NetExpr::Kind::Prod: {
            Form acc;
            acc.terms.push_back({1.0, 0.0, {}});
            for (const auto& k : n.kids) {
                auto f = canon_rec(k);
                if (!f) return std::nullopt;
                std::vector<Term> rhs;
                if (!merge_into(acc, *f, rhs)) return std::nullopt;
                std::vector<Term> next;
                for (const auto& x : acc.terms) {
                    for (const auto& y : rhs) {
                        Term t;
                        t.coeff = x.coeff * y.coeff;
                        t.exponent = x.exponent + y.exponent;
                        t.mask = x.mask;
                        bool dead = false;
                        for (const auto& [b, pos] : y.mask) {
                            auto it = std::find_if(t.mask.begin(), t.mask.end(),
                                                   [b = b](const auto& p) { return p.first == b; });
                            if (it == t.mask.end())
                                t.mask.push_back({b, pos});
                            else if (it->second != pos)
                                dead = true;  // S and S^c in one term: empty
                        }
                        if (dead) continue;
                        std::sort(t.mask.begin(), t.mask.end());
                        next.push_back(std::move(t));
                    }
                }
                acc.terms = std::move(next);
                combine(acc);
                if (!caps_ok(acc)) return std::nullopt;
            }
            return acc;
        }
        case NetExpr::Kind::Mask: {
            const IndexSet& s = *n.iset;
            if (!s.accumulates_at_zero()) return Form{};  // exactly zero near 0
            auto f = canon_rec(n.kids[0]);
            if (!f) return std::nullopt;
            bool polarity = true;
            IndexSet base = s;
            if (s.kind() == IndexSet::Kind::Geometric && s.complemented()) {
                base = s.complement();  // store the plain sequence
                polarity = false;
            }
            int b = base_index(*f, base);
            for (auto& t : f->terms) {
                auto it = std::find_if(t.mask.begin(), t.mask.end(),
                                       [b](const auto& p) { return p.first == b; });
                if (it == t.mask.end()) {
                    t.mask.push_back({b, polarity});
                    std::sort(t.mask.begin(), t.mask.end());
                } else if (it->second != polarity) {
                    t.coeff = 0.0;  // masked to the empty set
                }
            }
            combine(*f);
            if (!caps_ok(*f)) return std::nullopt;
            return f;
        }
        case NetExpr::Kind::Abs: return unary_atomwise(n.kids[0], NetExpr::Kind::Abs);
        case NetExpr::Kind::Min:
        case NetExpr::Kind::Max: return binary_atomwise(n.kids[0], n.kids[1], net.kind());
        case NetExpr::Kind::Recip: {
            auto f = canon_rec(n.kids[0]);
            if (!f) return std::nullopt;
            if (!f->bases.empty() || f->terms.size() != 1 || !f->terms[0].mask.empty())
                return std::nullopt;  // only plain monomials invert exactly
            Form out;
            out.terms.push_back({1.0 / f->terms[0].coeff, -f->terms[0].exponent, {}});
            return out;
        }
        case NetExpr::Kind::ExpInvEps:
        case NetExpr::Kind::Apply:
        case NetExpr::Kind::Cutoff:
        case NetExpr::Kind::Data: return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace

std::optional<Form> canonicalize(const NetExpr& net) { return canon_rec(net); }

std::vector<Atom> accumulating_atoms(const Form& f) {
    std::vector<Atom> out;
    for (unsigned a : accumulating_assignments(f)) out.push_back({atom_terms(f, a)});
    return out;
}

double exact_valuation(const Form& f) {
    double v = kInf;
    for (const auto& atom : accumulating_atoms(f))
        if (!atom.terms.empty()) v = std::min(v, atom.terms.front().first);
    return v;
}

bool exact_is_zero(const Form& f) { return exact_valuation(f) == kInf; }

bool exact_invertible(const Form& f) {
    auto atoms = accumulating_atoms(f);
    for (const auto& atom : atoms)
        if (atom.terms.empty()) return false;  // vanishes along this atom
    return !atoms.empty();
}

ExactStandardPart exact_standard_part(const Form& f) {
    bool first = true;
    double value = 0.0;
    for (const auto& atom : accumulating_atoms(f)) {
        double c0 = 0.0;
        for (const auto& [e, c] : atom.terms) {
            if (e < 0.0) return {false, 0.0};  // diverges along this atom
            if (e == 0.0) c0 = c;
        }
        if (first) {
            value = c0;
            first = false;
        } else if (value != c0) {
            return {false, 0.0};  // oscillates between atoms
        }
    }
    return {true, value};
}

}  // namespace colombeau::canon
