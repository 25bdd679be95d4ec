#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "colombeau/index_set.hpp"
#include "colombeau/net_expr.hpp"

namespace colombeau::canon {

// Canonical monomial-mask subalgebra: finite sums of c * eps^a terms, each
// optionally restricted by a signature over a small list of base index sets.
//
// Forms are *eventual* normal forms: Min/Max/Abs are resolved per atom of
// the Boolean algebra the base sets generate, keeping the branch that wins
// as eps -> 0. A form therefore agrees with its net on a neighborhood of 0
// (within each atom) and is valid for asymptotic queries only — valuation,
// classification, order comparison, standard part — never for pointwise
// evaluation.

struct Term {
    double coeff = 0.0;
    double exponent = 0.0;
    // (base index, polarity); sorted by base index; empty = unrestricted.
    std::vector<std::pair<int, bool>> mask;
};

struct Form {
    std::vector<IndexSet> bases;  // deduplicated by structure
    std::vector<Term> terms;      // combined on (exponent, mask), no zero coeffs
};

// Nullopt when the net falls outside the subalgebra (ExpInvEps, Apply,
// Cutoff, Data, reciprocals of non-monomials, or more than one structurally
// distinct geometric base set in scope).
std::optional<Form> canonicalize(const NetExpr& net);

// One atom of the base-set algebra that has points arbitrarily close to 0,
// with the form's terms restricted to it. Terms are (exponent, coeff),
// sorted by exponent ascending, combined, zero coefficients dropped.
struct Atom {
    std::vector<std::pair<double, double>> terms;
};

std::vector<Atom> accumulating_atoms(const Form& f);

// sup{ b : |u_eps| = O(eps^b) }; +infinity iff the net vanishes near 0.
double exact_valuation(const Form& f);

bool exact_is_zero(const Form& f);

// Invertibility of the class: |u_eps| >= eps^N eventually for some N. Fails
// iff some accumulating atom carries no terms (the net vanishes along it).
bool exact_invertible(const Form& f);

struct ExactStandardPart {
    bool exists = false;
    double value = 0.0;
};

// Limit of u_eps as eps -> 0 when it exists in R; decisive for every form.
ExactStandardPart exact_standard_part(const Form& f);

}  // namespace colombeau::canon
