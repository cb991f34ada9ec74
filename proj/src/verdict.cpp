#include "gslab/verdict.hpp"

#include "gslab/errors.hpp"

namespace gslab {

std::string_view to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::holds_analytic: return "HOLDS_ANALYTIC";
        case VerdictStatus::fails_analytic: return "FAILS_ANALYTIC";
        case VerdictStatus::holds_numeric_window: return "HOLDS_NUMERIC_WINDOW";
        case VerdictStatus::fails_numeric_window: return "FAILS_NUMERIC_WINDOW";
        case VerdictStatus::inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

VerdictStatus verdict_status_from_string(std::string_view s) {
    if (s == "HOLDS_ANALYTIC") return VerdictStatus::holds_analytic;
    if (s == "FAILS_ANALYTIC") return VerdictStatus::fails_analytic;
    if (s == "HOLDS_NUMERIC_WINDOW") return VerdictStatus::holds_numeric_window;
    if (s == "FAILS_NUMERIC_WINDOW") return VerdictStatus::fails_numeric_window;
    if (s == "INCONCLUSIVE") return VerdictStatus::inconclusive;
    throw ConfigInvalid("unknown verdict status: " + std::string(s));
}

std::string_view to_string(RuleTag t) {
    switch (t) {
        case RuleTag::stability_criterion: return "stability_criterion";
        case RuleTag::stability_corollary: return "stability_corollary";
        case RuleTag::radial_barrier: return "radial_barrier";
        case RuleTag::divergence_blowup: return "divergence_blowup";
        case RuleTag::c1_criterion: return "c1_criterion";
        case RuleTag::mean_oscillation: return "mean_oscillation";
        case RuleTag::direct: return "direct";
    }
    return "direct";
}

} // namespace gslab
