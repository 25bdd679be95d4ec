#include "colombeau/membership.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "colombeau/errors.hpp"

namespace colombeau {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Whether the family's sdf can be trusted as an exact inside depth / outside
// distance. Untrusted values are always underestimates (unions bound the
// inside depth from below, intersections bound the outside distance from
// below), and the sign is correct either way; so conclusions drawn from a
// LARGE value stay valid, conclusions drawn from a SMALL one degrade.
struct SdfTrust {
    bool inside = true;
    bool outside = true;
};

SdfTrust sdf_trust(const SetFamily& f) {
    switch (f.kind()) {
        case SetFamily::Kind::Complement: {
            SdfTrust c = sdf_trust(f.child(0));
            return {c.outside, c.inside};
        }
        case SetFamily::Kind::Union: {
            SdfTrust a = sdf_trust(f.child(0)), b = sdf_trust(f.child(1));
            return {false, a.outside && b.outside};
        }
        case SetFamily::Kind::Intersection: {
            SdfTrust a = sdf_trust(f.child(0)), b = sdf_trust(f.child(1));
            return {a.inside && b.inside, false};
        }
        case SetFamily::Kind::Eroded:
        case SetFamily::Kind::Dilated:
            return sdf_trust(f.child(0));
        default:
            return {};
    }
}

EpsGrid membership_grid(const EpsGrid& g, const GenNumber& x, const SetFamily& A) {
    std::vector<IndexSet> sets;
    for (const auto& c : x.comps()) c.collect_geometric(sets);
    A.collect_geometric(sets);
    return augmented_grid_from_sets(g, sets);
}

// (eps, log D) over the tail; D is the inside depth max(sdf, 0) or the
// outside distance max(-sdf, 0).
std::vector<std::pair<double, double>> distance_tail(const GenNumber& x, const SetFamily& A,
                                                     const EpsGrid& grid, bool inside_depth) {
    if (x.dim() != A.dim())
        throw PreconditionError("membership: point and family dimensions differ");
    const EpsGrid g = membership_grid(grid, x, A);
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = g.tail_begin(); i < g.size(); ++i) {
        const double eps = g.sample(i);
        const double s = A.sdf(x.eval(eps), eps);
        const double d = inside_depth ? std::max(s, 0.0) : std::max(-s, 0.0);
        out.emplace_back(eps, d > 0 ? std::log(d) : -kInf);
    }
    return out;
}

std::string fmt_eps(double eps) {
    std::ostringstream os;
    os << eps;
    return os.str();
}

}  // namespace

Member internal_member(const GenNumber& x, const SetFamily& A, const EpsGrid& grid) {
    const auto tail = distance_tail(x, A, grid, /*inside_depth=*/false);
    const Classification c = classify_tail_logmags(tail);
    if (c.negligible()) return sdf_trust(A).outside ? Member::In : Member::Undetermined;
    if (c.verdict == NetClass::Moderate || c.verdict == NetClass::NonModerate)
        return Member::Out;
    return Member::Undetermined;
}

StrongVerdict strong_member(const GenNumber& x, const SetFamily& A, const EpsGrid& grid) {
    StrongVerdict v;
    auto tail = distance_tail(x, A, grid, /*inside_depth=*/true);
    const bool out_trusted = sdf_trust(A).inside;

    // A zero in the deeper half defeats eventual positivity; shallow zeros
    // are dropped (the bound only has to hold eventually).
    std::size_t last_zero = tail.size();
    for (std::size_t i = 0; i < tail.size(); ++i)
        if (tail[i].second == -kInf) last_zero = i;
    if (last_zero != tail.size()) {
        if (last_zero >= tail.size() / 2) {
            v.verdict = out_trusted ? Member::Out : Member::Undetermined;
            v.exit_eps = tail[last_zero].first;
            v.note = out_trusted ? "point touches the complement on the tail"
                                 : "depth bound vanishes on the tail (bound only)";
            return v;
        }
        tail.erase(tail.begin(), tail.begin() + static_cast<long>(last_zero) + 1);
    }
    if (tail.size() < 6) {
        v.note = "tail window too thin after dropping non-eventual samples";
        return v;
    }

    std::vector<double> q;
    q.reserve(tail.size());
    for (const auto& [eps, ld] : tail) q.push_back(ld / std::log(eps));
    const std::size_t half = q.size() / 2;
    const double m1 = *std::max_element(q.begin(), q.begin() + half);
    const double m2 = *std::max_element(q.begin() + half, q.end());
    if (m2 > m1 + 3.0) {
        const SlopeFit rc = fit_inv_eps(tail);
        const SlopeFit ll = fit_log_eps(tail);
        if (rc.rms < ll.rms && rc.slope < 0) {
            v.verdict = out_trusted ? Member::Out : Member::Undetermined;
            v.note = "depth decays super-polynomially (no eps^q lower bound)";
            return v;
        }
        v.verdict = Member::Undetermined;
        v.note = "required order grows along the tail without a stable model";
        return v;
    }
    v.verdict = Member::In;
    v.witness_order = std::max(0.0, std::floor(std::max(m1, m2))) + 1.0;
    return v;
}

StrongVerdict strong_member_fermat(const GenNumber& x, const SetFamily& A,
                                   const EpsGrid& grid) {
    StrongVerdict v;
    const auto tail = distance_tail(x, A, grid, /*inside_depth=*/true);
    const bool out_trusted = sdf_trust(A).inside;
    if (tail.size() < 4) {
        v.note = "tail window too thin";
        return v;
    }
    double dmin = kInf;
    for (std::size_t i = tail.size() / 2; i < tail.size(); ++i) {
        const double d = tail[i].second == -kInf ? 0.0 : std::exp(tail[i].second);
        dmin = std::min(dmin, d);
        if (d == 0.0) v.exit_eps = tail[i].first;
    }
    constexpr double kInRadius = 2e-6;
    constexpr double kOutRadius = 0.5e-6;
    if (dmin >= kInRadius) {
        v.verdict = Member::In;
        v.witness_radius = 0.8 * dmin;
        return v;
    }
    if (dmin < kOutRadius) {
        v.verdict = out_trusted ? Member::Out : Member::Undetermined;
        v.note = out_trusted ? "no real lower bound for the complement distance"
                             : "depth bound has no real lower bound (bound only)";
        return v;
    }
    v.note = "complement distance sits inside the undecided radius band";
    return v;
}

SubsetVerdict strong_subset(const SetFamily& A, const SetFamily& B, const EpsGrid& grid,
                            double probe_order, const SupParams& params) {
    if (A.dim() != B.dim())
        throw PreconditionError("strong_subset: family dimensions differ");
    SubsetVerdict v;
    const SetFamily probe = SetFamily::eroded(A, probe_order);
    std::vector<IndexSet> sets;
    A.collect_geometric(sets);
    B.collect_geometric(sets);
    const EpsGrid g = augmented_grid_from_sets(grid, sets);

    std::vector<double> q;
    std::vector<std::pair<double, std::vector<double>>> bad;
    int vacuous = 0, tested = 0;
    for (std::size_t i = g.tail_begin(); i < g.size(); ++i) {
        const double eps = g.sample(i);
        const SupResult sup = sampled_sup(
            probe, eps, [&](std::span<const double> p) { return -B.sdf(p, eps); }, params);
        if (sup.samples == 0 || sup.value == -kInf) {
            ++vacuous;
            continue;
        }
        ++tested;
        const double margin = -sup.value;  // sampled min of B's sdf over the erosion
        if (margin <= 0) {
            bad.emplace_back(eps, sup.argmax);
            continue;
        }
        q.push_back(std::log(margin) / std::log(eps));
    }

    if (tested == 0) {
        v.note = "probe erosion is empty on the tail; criterion is vacuous at this order";
        return v;
    }
    if (!bad.empty()) {
        v.holds = Ternary::False;
        v.counterexample = bad.back();
        v.note = "sampled point of the erosion lies outside the target";
        return v;
    }
    if (q.size() >= 6) {
        const std::size_t half = q.size() / 2;
        const double m1 = *std::max_element(q.begin(), q.begin() + half);
        const double m2 = *std::max_element(q.begin() + half, q.end());
        if (m2 > m1 + 3.0) {
            v.note = "containment margin decays super-polynomially";
            return v;
        }
    }
    v.holds = Ternary::True;
    v.witness_order = std::max(0.0, std::floor(*std::max_element(q.begin(), q.end()))) + 1.0;
    return v;
}

InternalSubsetVerdict internal_subset(const SetFamily& A, const SetFamily& B,
                                      const EpsGrid& grid, const SupParams& params) {
    if (A.dim() != B.dim())
        throw PreconditionError("internal_subset: family dimensions differ");
    InternalSubsetVerdict v;
    std::vector<IndexSet> sets;
    A.collect_geometric(sets);
    B.collect_geometric(sets);
    const EpsGrid g = augmented_grid_from_sets(grid, sets);

    std::vector<std::pair<double, double>> tail;
    for (std::size_t i = g.tail_begin(); i < g.size(); ++i) {
        const double eps = g.sample(i);
        const SupResult sup = sampled_sup(
            A, eps, [&](std::span<const double> p) { return std::max(-B.sdf(p, eps), 0.0); },
            params);
        if (sup.samples == 0) continue;
        const double h = std::max(sup.value, 0.0);
        tail.emplace_back(eps, h > 0 ? std::log(h) : -kInf);
    }
    v.excess = classify_tail_logmags(tail);
    if (v.excess.negligible())
        v.holds = Ternary::True;
    else if (v.excess.verdict == NetClass::Moderate || v.excess.verdict == NetClass::NonModerate)
        v.holds = Ternary::False;
    return v;
}

SameSetVerdict same_strong_set(const SetFamily& A, const SetFamily& B, const SetFamily& window,
                               const EpsGrid& grid, const SupParams& params) {
    if (A.dim() != B.dim() || A.dim() != window.dim())
        throw PreconditionError("same_strong_set: family dimensions differ");
    SameSetVerdict v;
    std::vector<IndexSet> sets;
    A.collect_geometric(sets);
    B.collect_geometric(sets);
    const EpsGrid g = augmented_grid_from_sets(grid, sets);

    const SetFamily in_b_gap = SetFamily::set_intersection(window, SetFamily::complement(B));
    const SetFamily in_a_gap = SetFamily::set_intersection(window, SetFamily::complement(A));

    std::vector<std::pair<double, double>> tail;
    for (std::size_t i = g.tail_begin(); i < g.size(); ++i) {
        const double eps = g.sample(i);
        const SupResult h1 = sampled_sup(
            in_b_gap, eps, [&](std::span<const double> p) { return std::max(A.sdf(p, eps), 0.0); },
            params);
        const SupResult h2 = sampled_sup(
            in_a_gap, eps, [&](std::span<const double> p) { return std::max(B.sdf(p, eps), 0.0); },
            params);
        double h = 0.0;
        if (h1.samples > 0) h = std::max(h, h1.value);
        if (h2.samples > 0) h = std::max(h, h2.value);
        if (h1.samples == 0 && h2.samples == 0) continue;
        tail.emplace_back(eps, h > 0 ? std::log(h) : -kInf);
    }
    v.hausdorff = classify_tail_logmags(tail);
    if (v.hausdorff.negligible())
        v.equal = Ternary::True;
    else if (v.hausdorff.verdict == NetClass::Moderate ||
             v.hausdorff.verdict == NetClass::NonModerate)
        v.equal = Ternary::False;
    return v;
}

BoundedVerdict sharply_bounded(const SetFamily& A, const EpsGrid& grid) {
    BoundedVerdict v;
    std::vector<IndexSet> sets;
    A.collect_geometric(sets);
    const EpsGrid g = augmented_grid_from_sets(grid, sets);

    std::vector<double> b;
    for (std::size_t i = g.tail_begin(); i < g.size(); ++i) {
        const double eps = g.sample(i);
        const double lor = A.log_outer_radius(eps);
        if (lor == kInf) {
            v.verdict = Ternary::False;
            v.note = "slice is structurally unbounded";
            return v;
        }
        if (lor == -kInf) continue;  // empty slice
        b.push_back(lor / std::log(1.0 / eps));
    }
    if (b.empty()) {
        v.verdict = Ternary::True;  // empty on the whole tail
        v.witness_n = 1.0;
        v.note = "slices are empty on the tail";
        return v;
    }
    if (b.size() >= 6) {
        const std::size_t half = b.size() / 2;
        const double m1 = *std::max_element(b.begin(), b.begin() + half);
        const double m2 = *std::max_element(b.begin() + half, b.end());
        if (m2 > m1 + 3.0) {
            v.verdict = Ternary::False;
            v.note = "outer radius grows faster than every power of 1/eps";
            return v;
        }
    }
    v.verdict = Ternary::True;
    v.witness_n = std::max(0.0, std::ceil(*std::max_element(b.begin(), b.end()))) + 1.0;
    return v;
}

std::vector<GenNumber> interior_probes(const SetFamily& A, int count, unsigned seed) {
    std::vector<GenNumber> out;
    if (count <= 0) return out;
    const int d = A.dim();
    const unsigned base_idx = 1 + seed % 16;

    const auto unit_dir = [&](unsigned k) {
        std::vector<double> dir(d, 0.0);
        if (d == 1) {
            dir[0] = (k % 2 == 0) ? 1.0 : -1.0;
        } else if (d == 2) {
            const double ang = 2 * 3.14159265358979323846 * halton(base_idx + k, 2);
            dir[0] = std::cos(ang);
            dir[1] = std::sin(ang);
        } else {
            double n2 = 0;
            for (int i = 0; i < d; ++i) {
                dir[i] = 2 * halton(base_idx + k, i % 2 ? 3 : 2) - 1;
                n2 += dir[i] * dir[i];
            }
            if (n2 <= 0) dir[0] = 1;
            const double n = std::sqrt(std::max(n2, 1.0e-12));
            for (int i = 0; i < d; ++i) dir[i] /= n;
        }
        return dir;
    };

    switch (A.kind()) {
        case SetFamily::Kind::Ball:
        case SetFamily::Kind::Punctured: {
            const GenNumber& c = A.anchors()[0];
            const NetExpr& r = A.nets()[0];
            for (int k = 0; k < count; ++k) {
                const double t = 0.125 + 0.7 * halton(base_idx + k, 3);
                const auto dir = unit_dir(k);
                std::vector<NetExpr> comps;
                for (int i = 0; i < d; ++i)
                    comps.push_back(
                        NetExpr::sum(c.comp(i), NetExpr::prod(NetExpr::constant(t * dir[i]), r)));
                out.emplace_back(std::move(comps));
            }
            break;
        }
        case SetFamily::Kind::Box: {
            const GenNumber& lo = A.anchors()[0];
            const GenNumber& hi = A.anchors()[1];
            for (int k = 0; k < count; ++k) {
                std::vector<NetExpr> comps;
                for (int i = 0; i < d; ++i) {
                    const double u = 0.1 + 0.8 * halton(base_idx + k, i % 2 ? 3 : 2);
                    comps.push_back(
                        NetExpr::sum(NetExpr::prod(NetExpr::constant(1 - u), lo.comp(i)),
                                     NetExpr::prod(NetExpr::constant(u), hi.comp(i))));
                }
                out.emplace_back(std::move(comps));
            }
            break;
        }
        case SetFamily::Kind::HalfSpace: {
            const auto& n = A.normal();
            double n2 = 0;
            for (double x : n) n2 += x * x;
            const double nn = std::sqrt(n2);
            for (int k = 0; k < count; ++k) {
                const double t = 0.25 * (1 + k);
                std::vector<NetExpr> comps;
                for (int i = 0; i < d; ++i)
                    comps.push_back(
                        NetExpr::sum(NetExpr::prod(NetExpr::constant(n[i] / n2), A.nets()[0]),
                                     NetExpr::constant(-t * n[i] / nn)));
                out.emplace_back(std::move(comps));
            }
            break;
        }
        case SetFamily::Kind::Points: {
            for (int k = 0; k < count; ++k)
                out.push_back(A.anchors()[static_cast<std::size_t>(k) % A.anchors().size()]);
            break;
        }
        case SetFamily::Kind::Hull: {
            const auto& pts = A.anchors();
            for (int k = 0; k < count; ++k) {
                std::vector<double> w(pts.size());
                double sw = 0;
                for (std::size_t j = 0; j < pts.size(); ++j) {
                    w[j] = 0.05 + halton(base_idx + k + static_cast<unsigned>(j), 2);
                    sw += w[j];
                }
                std::vector<NetExpr> comps;
                for (int i = 0; i < d; ++i) {
                    std::vector<NetExpr> terms;
                    for (std::size_t j = 0; j < pts.size(); ++j)
                        terms.push_back(
                            NetExpr::prod(NetExpr::constant(w[j] / sw), pts[j].comp(i)));
                    comps.push_back(NetExpr::sum(std::move(terms)));
                }
                out.emplace_back(std::move(comps));
            }
            break;
        }
        case SetFamily::Kind::Full: {
            for (int k = 0; k < count; ++k) {
                std::vector<double> p(d);
                for (int i = 0; i < d; ++i)
                    p[i] = 2 * halton(base_idx + static_cast<unsigned>(k), i % 2 ? 3 : 2) - 1;
                out.push_back(GenNumber::point(p));
            }
            break;
        }
        case SetFamily::Kind::Union:
        case SetFamily::Kind::Intersection: {
            auto a = interior_probes(A.child(0), (count + 1) / 2, seed);
            auto b = interior_probes(A.child(1), count / 2, seed + 1);
            out.insert(out.end(), a.begin(), a.end());
            out.insert(out.end(), b.begin(), b.end());
            break;
        }
        case SetFamily::Kind::Eroded:
        case SetFamily::Kind::Dilated:
            return interior_probes(A.child(0), count, seed);
        case SetFamily::Kind::Complement:
        case SetFamily::Kind::Empty:
            break;
    }
    if (static_cast<int>(out.size()) > count) out.resize(static_cast<std::size_t>(count));
    return out;
}

SigmaReport sigma_decomposition_check(const SetFamily& A, const EpsGrid& grid, int orders,
                                      unsigned seed) {
    SigmaReport rep;
    const auto probes = interior_probes(A, 4 + orders, seed);
    std::vector<IndexSet> sets;
    A.collect_geometric(sets);

    for (std::size_t pi = 0; pi < probes.size(); ++pi) {
        const GenNumber& x = probes[pi];
        const StrongVerdict sv = strong_member(x, A, grid);

        // Strong members must fall inside the erosion one order above their
        // witness, as internal members.
        if (sv.verdict == Member::In) {
            ++rep.probes;
            const SetFamily eroded = SetFamily::eroded(A, sv.witness_order + 1.0);
            const Member im = internal_member(x, eroded, grid);
            if (im == Member::In) {
                ++rep.confirmed;
            } else {
                std::ostringstream os;
                os << "probe " << pi << ": strong witness " << sv.witness_order
                   << " but erosion membership is " << to_string(im);
                rep.failures.push_back(os.str());
            }
        }

        // Points that stay inside the eps^m erosion across the whole tail
        // must be strong members with a witness bounded by m + 1.
        const EpsGrid g = membership_grid(grid, x, A);
        for (int m = 1; m <= orders; ++m) {
            bool inside_all = true;
            for (std::size_t i = g.tail_begin(); i < g.size(); ++i) {
                const double eps = g.sample(i);
                if (A.sdf(x.eval(eps), eps) - std::pow(eps, m) < 0) {
                    inside_all = false;
                    break;
                }
            }
            if (!inside_all) continue;
            ++rep.probes;
            if (sv.verdict == Member::In && sv.witness_order <= m + 1.0) {
                ++rep.confirmed;
            } else {
                std::ostringstream os;
                os << "probe " << pi << ": stays inside the eps^" << m
                   << " erosion but strong verdict is " << to_string(sv.verdict)
                   << " with witness " << sv.witness_order;
                rep.failures.push_back(os.str());
            }
        }
    }
    return rep;
}

IntersectionReport intersection_check(const SetFamily& A, const SetFamily& B,
                                      const EpsGrid& grid, int probes, unsigned seed) {
    IntersectionReport rep;
    const SetFamily both = SetFamily::set_intersection(A, B);
    for (const GenNumber& x : interior_probes(both, probes, seed)) {
        if (strong_member(x, both, grid).verdict != Member::In) continue;
        ++rep.probes;
        const StrongVerdict in_a = strong_member(x, A, grid);
        const StrongVerdict in_b = strong_member(x, B, grid);
        if (in_a.verdict == Member::In && in_b.verdict == Member::In) {
            ++rep.confirmed;
        } else {
            std::ostringstream os;
            os << "strong member of the intersection but factors give "
               << to_string(in_a.verdict) << " / " << to_string(in_b.verdict);
            rep.failures.push_back(os.str());
        }
    }
    return rep;
}

std::optional<PerturbationWitness> representative_exit_witness(const GenNumber& x,
                                                               const SetFamily& A,
                                                               const EpsGrid& grid) {
    if (x.dim() != A.dim())
        throw PreconditionError("representative_exit_witness: dimension mismatch");
    const EpsGrid g = membership_grid(grid, x, A);
    const int d = A.dim();

    // Shift only at samples where the slice depth is itself negligible (the
    // exiting subsequence of the theorem's construction); elsewhere the point
    // sits too deep for a negligible shift to cross and the shift stays 0.
    // Where it acts, the shift steps against the sdf gradient far enough to
    // leave the slice's interior.
    const double qthr = tolerances().negligible_order;
    std::vector<std::vector<std::pair<double, double>>> tables(
        static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double eps = g.sample(i);
        const auto p = x.eval(eps);
        const double s = A.sdf(p, eps);
        std::vector<double> shift(static_cast<std::size_t>(d), 0.0);
        if (s > 0.0 && s <= std::pow(eps, qthr)) {
            auto gr = A.sdf_gradient(p, eps);
            double gn = 0;
            for (double v : gr) gn += v * v;
            gn = std::sqrt(gn);
            if (!(gn > 1e-12)) {
                gr.assign(static_cast<std::size_t>(d), 0.0);
                gr[0] = 1.0;
                gn = 1.0;
            }
            const double mag = s + std::pow(eps, 16);
            for (int c = 0; c < d; ++c)
                shift[static_cast<std::size_t>(c)] = -mag * gr[static_cast<std::size_t>(c)] / gn;
        }
        for (int c = 0; c < d; ++c)
            tables[static_cast<std::size_t>(c)].emplace_back(eps, shift[static_cast<std::size_t>(c)]);
    }
    std::vector<NetExpr> comps;
    comps.reserve(static_cast<std::size_t>(d));
    for (auto& t : tables) comps.push_back(NetExpr::tabulated(std::move(t)));
    PerturbationWitness w{GenNumber(std::move(comps)), 0, 0, {}};

    w.shift_class = classify(w.shift, grid);
    if (!w.shift_class.negligible()) return std::nullopt;

    // Exited = no longer strictly inside: slices are open, their boundary
    // belongs to the complement.
    const GenNumber moved = x + w.shift;
    for (std::size_t i = g.tail_begin(); i < g.size(); ++i) {
        const double eps = g.sample(i);
        ++w.tail_count;
        if (!(A.sdf(moved.eval(eps), eps) > 0)) ++w.exit_count;
    }
    if (w.exit_count == 0) return std::nullopt;
    return w;
}

ContainmentReport containment_shadow(const SetFamily& B, const SetFamily& Omega,
                                     const EpsGrid& grid, std::span<const GenNumber> catalog,
                                     const SupParams& params) {
    ContainmentReport rep;
    const BoundedVerdict bv = sharply_bounded(B, grid);
    if (bv.verdict == Ternary::False)
        throw PreconditionError("containment_shadow: B is not sharply bounded");
    if (bv.verdict == Ternary::Undetermined)
        rep.notes.push_back("sharp boundedness of B is undetermined");

    std::vector<IndexSet> sets;
    B.collect_geometric(sets);
    Omega.collect_geometric(sets);
    const EpsGrid g = augmented_grid_from_sets(grid, sets);

    bool hyp_false = false, hyp_undet = false;
    for (const GenNumber& x : catalog) {
        const Member inner = internal_member(x, B, g);
        if (inner == Member::Out) continue;
        if (inner == Member::Undetermined) {
            hyp_undet = true;
            rep.notes.push_back("catalog point with undetermined membership in B");
            continue;
        }
        const StrongVerdict sv = strong_member(x, Omega, g);
        if (sv.verdict == Member::In) continue;
        std::ostringstream os;
        const auto v = x.eval(g.sample(g.tail_begin()));
        os << "catalog point (";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
        os << ") at the tail start is internal in B but "
           << (sv.verdict == Member::Out ? "not strongly" : "undetermined") << " in Omega";
        rep.notes.push_back(os.str());
        if (sv.verdict == Member::Out)
            hyp_false = true;
        else
            hyp_undet = true;
    }
    rep.hypothesis =
        hyp_false ? Ternary::False : (hyp_undet ? Ternary::Undetermined : Ternary::True);
    if (rep.hypothesis != Ternary::True) return rep;

    // Conclusion: pointwise slice containment, eventual along the grid. A run
    // of passing samples must reach the deepest one; the run records where
    // containment set in.
    std::optional<double> from;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double eps = g.sample(i);
        bool ok = true;
        for (const auto& p : sample_points(B, eps, params.budget, params.seed)) {
            if (!(Omega.sdf(p, eps) > 0.0)) {
                ok = false;
                std::ostringstream os;
                os << "sample of the B slice at eps = " << fmt_eps(eps)
                   << " falls outside the Omega slice";
                rep.notes.push_back(os.str());
                break;
            }
        }
        if (ok) {
            if (!from) from = eps;
        } else {
            from.reset();
        }
    }
    rep.contained_from_eps = from;
    rep.conclusion = from.has_value() ? Ternary::True : Ternary::False;
    return rep;
}

OpennessReport openness_probe(const GenNumber& x, const SetFamily& A, const EpsGrid& grid,
                              int directions) {
    OpennessReport rep;
    const StrongVerdict sv = strong_member(x, A, grid);
    if (sv.verdict != Member::In) {
        rep.failures.push_back("base point is not strongly inside");
        return rep;
    }
    const int d = A.dim();
    const NetExpr radius = NetExpr::eps_pow(sv.witness_order + 1.0);
    for (int k = 0; k < directions; ++k) {
        std::vector<NetExpr> comps;
        for (int i = 0; i < d; ++i) {
            const double dir = (i == (k / 2) % d) ? ((k % 2 == 0) ? 1.0 : -1.0) : 0.0;
            comps.push_back(dir == 0.0
                                ? x.comp(i)
                                : NetExpr::sum(x.comp(i),
                                               NetExpr::prod(NetExpr::constant(dir), radius)));
        }
        const GenNumber y{std::move(comps)};
        ++rep.probes;
        const StrongVerdict sy = strong_member(y, A, grid);
        if (sy.verdict == Member::In) {
            ++rep.confirmed;
        } else {
            std::ostringstream os;
            os << "direction " << k << ": sharp-ball neighbor at order "
               << sv.witness_order + 1.0 << " got " << to_string(sy.verdict) << " at eps "
               << (sy.exit_eps ? fmt_eps(*sy.exit_eps) : std::string("-"));
            rep.failures.push_back(os.str());
        }
    }
    return rep;
}

}  // namespace colombeau
