#pragma once

#include <limits>
#include <string>

namespace colombeau {

// Three-valued answer for asymptotic questions that a finite grid cannot
// always settle.
enum class Ternary { True, False, Undetermined };

enum class Member { In, Out, Undetermined };

enum class FitMethod { Exact, Regression };

// v(u) = sup{ b : |u_eps| = O(eps^b) as eps -> 0 }, estimated on a grid.
// method == Exact means the net normalized inside the canonical
// monomial-mask subalgebra (or was identically zero on the tail window) and
// `value` is the true valuation; otherwise `value` is a least-squares slope
// of log|u| against log(eps) over the tail window.
struct ValuationEstimate {
    double value = 0.0;  // +infinity exactly for the (tail-)zero net
    FitMethod method = FitMethod::Regression;
    double residual = 0.0;  // rms residual in slope units; 0 for exact
    double window_lo = 0.0;
    double window_hi = 0.0;  // eps range of the fit window
    int samples = 0;

    bool exact() const { return method == FitMethod::Exact; }
    bool infinite() const { return value == std::numeric_limits<double>::infinity(); }

    static ValuationEstimate exact_value(double v) {
        ValuationEstimate e;
        e.value = v;
        e.method = FitMethod::Exact;
        return e;
    }
    static ValuationEstimate at_infinity() {
        return exact_value(std::numeric_limits<double>::infinity());
    }
};

enum class NetClass {
    ExactNegligible,        // zero net (canonically, or at every tail sample)
    NumericallyNegligible,  // estimated order >= negligibility threshold
    Moderate,               // bounded by eps^-N on the window, stable fit
    NonModerate,            // exceeds eps^-N_max with super-polynomial trend
    Undetermined,
};

struct Classification {
    NetClass verdict = NetClass::Undetermined;
    ValuationEstimate estimate;
    // Evidence: |u| = O(eps^-upper_order) and |u| = O(eps^lower_order) both
    // held at every sample of the fit window.
    double upper_order = 0.0;
    double lower_order = 0.0;
    std::string note;

    bool negligible() const {
        return verdict == NetClass::ExactNegligible ||
               verdict == NetClass::NumericallyNegligible;
    }
};

inline std::string to_string(Ternary t) {
    switch (t) {
        case Ternary::True: return "true";
        case Ternary::False: return "false";
        default: return "undetermined";
    }
}

inline std::string to_string(Member m) {
    switch (m) {
        case Member::In: return "in";
        case Member::Out: return "out";
        default: return "undetermined";
    }
}

inline std::string to_string(NetClass c) {
    switch (c) {
        case NetClass::ExactNegligible: return "exact-negligible";
        case NetClass::NumericallyNegligible: return "numerically-negligible";
        case NetClass::Moderate: return "moderate";
        case NetClass::NonModerate: return "non-moderate";
        default: return "undetermined";
    }
}

inline std::string to_string(FitMethod m) {
    return m == FitMethod::Exact ? "exact" : "regression";
}

}  // namespace colombeau
