#include "colombeau/topology.hpp"

#include <cmath>
#include <sstream>

#include "colombeau/errors.hpp"

namespace colombeau {

RadiiSet RadiiSet::sharp() {
    RadiiSet r;
    r.kind_ = Kind::Sharp;
    return r;
}

RadiiSet RadiiSet::fermat() {
    RadiiSet r;
    r.kind_ = Kind::Fermat;
    return r;
}

RadiiSet RadiiSet::power_band(double a) {
    if (!(a >= 0)) throw PreconditionError("RadiiSet::power_band: band must be nonnegative");
    RadiiSet r;
    r.kind_ = Kind::PowerBand;
    r.band_ = a;
    return r;
}

RadiiSet RadiiSet::generated(NetExpr h) {
    RadiiSet r;
    r.kind_ = Kind::Generated;
    r.generator_ = std::move(h);
    return r;
}

const NetExpr& RadiiSet::generator() const {
    if (!generator_) throw PreconditionError("RadiiSet::generator: not a generated set");
    return *generator_;
}

std::vector<NetExpr> RadiiSet::sample_radii(int count) const {
    std::vector<NetExpr> out;
    switch (kind_) {
        case Kind::Sharp: {
            const double qs[] = {0.5, 1.0, 2.0, 5.0, 0.0, 3.5};
            for (int i = 0; i < count; ++i)
                out.push_back(NetExpr::prod(NetExpr::constant(1.0 + 0.5 * i),
                                            NetExpr::eps_pow(qs[i % 6])));
            break;
        }
        case Kind::Fermat: {
            const double rs[] = {1.0, 0.25, 1e-3, 3.0, 0.5, 2e-2};
            for (int i = 0; i < count; ++i) out.push_back(NetExpr::constant(rs[i % 6]));
            break;
        }
        case Kind::PowerBand: {
            for (int i = 0; i < count; ++i) {
                const double q = band_ * static_cast<double>(i) / std::max(1, count - 1);
                out.push_back(NetExpr::eps_pow(q));
            }
            break;
        }
        case Kind::Generated: {
            const double cs[] = {1.0, 2.0, 0.5, 4.0, 0.25, 3.0};
            for (int i = 0; i < count; ++i)
                out.push_back(NetExpr::prod(NetExpr::constant(cs[i % 6]), *generator_));
            break;
        }
    }
    return out;
}

namespace {

// Positivity of the radius on the tail window.
Ternary tail_positive(const NetExpr& rho, const EpsGrid& grid) {
    const EpsGrid g = augmented_grid(grid, rho);
    for (std::size_t i = g.tail_begin(); i < g.size(); ++i)
        if (rho.signed_log_eval(g.sample(i)).sign <= 0) return Ternary::False;
    return Ternary::True;
}

Ternary and3(Ternary a, Ternary b) {
    if (a == Ternary::False || b == Ternary::False) return Ternary::False;
    if (a == Ternary::Undetermined || b == Ternary::Undetermined)
        return Ternary::Undetermined;
    return Ternary::True;
}

}  // namespace

Ternary radii_contains(const RadiiSet& r, const NetExpr& rho, const EpsGrid& grid) {
    if (tail_positive(rho, grid) == Ternary::False) return Ternary::False;
    const GenNumber g(rho);
    switch (r.kind()) {
        case RadiiSet::Kind::Sharp: {
            const Classification c = classify(g, grid);
            if (c.negligible()) return Ternary::False;  // no zero-scale radii
            if (c.verdict == NetClass::Undetermined || c.verdict == NetClass::NonModerate)
                return Ternary::Undetermined;
            return is_invertible(g, grid).verdict;
        }
        case RadiiSet::Kind::Fermat: {
            const auto st = standard_part(g, grid);
            if (st && (*st)[0] > 0) {
                const auto eq = eq_in_ring(g, GenNumber::scalar((*st)[0]), grid);
                return eq.equal;
            }
            if (st) return Ternary::False;  // converges to a nonpositive real
            const Classification c = classify(g, grid);
            if (c.verdict == NetClass::Undetermined) return Ternary::Undetermined;
            return Ternary::False;
        }
        case RadiiSet::Kind::PowerBand: {
            const ValuationEstimate v = valuation(rho, grid);
            if (v.infinite()) return Ternary::False;
            const double margin = v.exact() ? 0.0 : 0.25;
            if (v.value < 0.0 - margin || v.value > r.band() + margin) return Ternary::False;
            if (!v.exact() && (v.value < margin || v.value > r.band() - margin))
                return Ternary::Undetermined;
            if (v.exact() && (v.value < 0.0 || v.value > r.band())) return Ternary::False;
            return and3(Ternary::True, is_invertible(GenNumber(rho), grid).verdict);
        }
        case RadiiSet::Kind::Generated: {
            // rho must be a positive real multiple of the generator.
            const NetExpr ratio = NetExpr::prod(rho, NetExpr::recip(r.generator()));
            const GenNumber rg(ratio);
            const auto st = standard_part(rg, grid);
            if (!st) return Ternary::Undetermined;
            if ((*st)[0] <= 0) return Ternary::False;
            return eq_in_ring(rg, GenNumber::scalar((*st)[0]), grid).equal;
        }
    }
    return Ternary::Undetermined;
}

namespace {

NetExpr euclidean_gap(const GenNumber& x, const GenNumber& y) {
    std::vector<NetExpr> sq;
    for (int i = 0; i < x.dim(); ++i) {
        const NetExpr d = NetExpr::sum(x.comp(i), NetExpr::neg(y.comp(i)));
        sq.push_back(NetExpr::prod(d, d));
    }
    return NetExpr::apply(Prim::Sqrt, NetExpr::sum(std::move(sq)));
}

}  // namespace

Ternary ball_member(const RadiiSet& r, const GenNumber& center, const NetExpr& rho,
                    const GenNumber& x, const EpsGrid& grid) {
    if (center.dim() != x.dim())
        throw PreconditionError("ball_member: point and center dimensions differ");
    const Ternary admissible = radii_contains(r, rho, grid);
    if (admissible != Ternary::True) return admissible;
    const GenNumber gap(euclidean_gap(x, center));
    const GenNumber radius(rho);
    const LeqVerdict le = leq(gap, radius, grid);
    if (le.holds == Ternary::False) return Ternary::False;
    const EqVerdict eq = eq_in_ring(gap, radius, grid);
    if (le.holds == Ternary::True && eq.equal == Ternary::False) return Ternary::True;
    if (eq.equal == Ternary::True) return Ternary::False;  // on the sphere, ball is open
    return Ternary::Undetermined;
}

Ternary tau_identified(const RadiiSet& r, const GenNumber& x, const GenNumber& y,
                       const EpsGrid& grid) {
    switch (r.kind()) {
        case RadiiSet::Kind::Sharp:
            return eq_in_ring(x, y, grid).equal;
        case RadiiSet::Kind::Fermat:
            return is_infinitesimal(x - y, grid);
        case RadiiSet::Kind::PowerBand: {
            // Identified when the gap sits below every radius of the band,
            // i.e. its valuation clears the band exponent.
            const ValuationEstimate v = valuation_of(x - y, grid);
            if (v.infinite()) return Ternary::True;
            const double margin = v.exact() ? 0.0 : 0.25;
            if (v.value > r.band() + margin) return Ternary::True;
            if (v.value < r.band() - margin) return Ternary::False;
            return Ternary::Undetermined;
        }
        case RadiiSet::Kind::Generated: {
            const EqVerdict eq = eq_in_ring(x, y, grid);
            if (eq.equal == Ternary::True) return Ternary::True;
            return Ternary::Undetermined;
        }
    }
    return Ternary::Undetermined;
}

RadiiAxiomReport radii_axiom_probe(const RadiiSet& r, const EpsGrid& grid, int count) {
    RadiiAxiomReport rep;
    std::vector<NetExpr> radii;
    for (const auto& rho : r.sample_radii(count)) {
        ++rep.probes;
        if (radii_contains(r, rho, grid) == Ternary::True) {
            ++rep.confirmed;
            radii.push_back(rho);
        } else {
            rep.failures.push_back("sample radius rejected by its own set");
        }
    }
    for (std::size_t i = 0; i < radii.size(); ++i) {
        for (std::size_t j = i + 1; j < radii.size(); ++j) {
            ++rep.probes;
            const NetExpr m = NetExpr::min(radii[i], radii[j]);
            const Ternary t = radii_contains(r, m, grid);
            if (t == Ternary::True) {
                ++rep.confirmed;
            } else {
                std::ostringstream os;
                os << "min of radii " << i << " and " << j << " classified "
                   << to_string(t);
                rep.failures.push_back(os.str());
            }
        }
    }
    return rep;
}

ChainReport topology_chain_probe(const GenNumber& x, const GenNumber& y, const EpsGrid& grid) {
    ChainReport rep;
    const Ternary sharp_id = tau_identified(RadiiSet::sharp(), x, y, grid);
    const Ternary fermat_id = tau_identified(RadiiSet::fermat(), x, y, grid);
    const double bands[] = {0.5, 2.0, 8.0};
    for (double a : bands) {
        const Ternary band_id = tau_identified(RadiiSet::power_band(a), x, y, grid);
        // Sharp identification implies every coarser identification.
        if (sharp_id == Ternary::True && band_id != Ternary::Undetermined) {
            ++rep.probes;
            if (band_id == Ternary::True) {
                ++rep.confirmed;
            } else {
                std::ostringstream os;
                os << "sharp-identified pair separated by the band " << a << " topology";
                rep.failures.push_back(os.str());
            }
        }
        // Separation in Fermat implies separation in every finer topology.
        if (fermat_id == Ternary::False && band_id != Ternary::Undetermined) {
            ++rep.probes;
            if (band_id == Ternary::False) {
                ++rep.confirmed;
            } else {
                std::ostringstream os;
                os << "fermat-separated pair identified by the band " << a << " topology";
                rep.failures.push_back(os.str());
            }
        }
    }
    if (sharp_id == Ternary::True && fermat_id != Ternary::Undetermined) {
        ++rep.probes;
        if (fermat_id == Ternary::True)
            ++rep.confirmed;
        else
            rep.failures.push_back("sharp-identified pair separated by the fermat topology");
    }
    return rep;
}

}  // namespace colombeau
