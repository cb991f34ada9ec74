#pragma once

#include <string_view>

namespace gslab {

// Outcome of a regularity criterion. ANALYTIC verdicts come from closed-form
// reasoning valid on the whole punctured ball; NUMERIC_WINDOW verdicts are
// established on the computed log-radius window only.
enum class VerdictStatus {
    holds_analytic,
    fails_analytic,
    holds_numeric_window,
    fails_numeric_window,
    inconclusive,
};

constexpr bool is_holds(VerdictStatus s) {
    return s == VerdictStatus::holds_analytic || s == VerdictStatus::holds_numeric_window;
}

constexpr bool is_fails(VerdictStatus s) {
    return s == VerdictStatus::fails_analytic || s == VerdictStatus::fails_numeric_window;
}

constexpr bool is_analytic(VerdictStatus s) {
    return s == VerdictStatus::holds_analytic || s == VerdictStatus::fails_analytic;
}

// Downgrade helpers used when combining criteria: the combination is analytic
// only if every input was.
constexpr VerdictStatus holds_with(bool analytic) {
    return analytic ? VerdictStatus::holds_analytic : VerdictStatus::holds_numeric_window;
}

constexpr VerdictStatus fails_with(bool analytic) {
    return analytic ? VerdictStatus::fails_analytic : VerdictStatus::fails_numeric_window;
}

std::string_view to_string(VerdictStatus s);
VerdictStatus verdict_status_from_string(std::string_view s);

// Which result of the underlying theory justifies a classification verdict.
enum class RuleTag {
    stability_criterion,     // square-Dini modulus + uniform stability
    stability_corollary,     // gradient vanishes when S(t) -> -inf
    radial_barrier,          // comparison with the computed radial solution Z
    divergence_blowup,       // divergent mean oscillation forces unbounded gradient
    c1_criterion,            // stability route plus bounded r g'(r)
    mean_oscillation,        // Dini mean-oscillation test
    direct,                  // definitional or closed-form evaluation
};

std::string_view to_string(RuleTag t);

// A criterion outcome plus the number that backs it (an integral value,
// a supremum, a fitted slope, ... depending on the criterion).
struct Verdict {
    VerdictStatus status = VerdictStatus::inconclusive;
    double evidence = 0.0;
};

inline bool is_holds(const Verdict& v) { return is_holds(v.status); }
inline bool is_fails(const Verdict& v) { return is_fails(v.status); }

} // namespace gslab
