#include "radval/validators.hpp"

#include <algorithm>

#include "radval/error.hpp"
#include "radval/stats.hpp"

namespace radval {

std::string to_string(DecisionReason reason) {
    switch (reason) {
        case DecisionReason::AboveThreshold: return "above_threshold";
        case DecisionReason::BelowThreshold: return "below_threshold";
        case DecisionReason::DistributionPreserved: return "distribution_preserved";
        case DecisionReason::BelowThresholdAndDistributionBroken: return "below_threshold_and_distribution_broken";
    }
    return "unknown";
}

Decision threshold_validate(double radius, const ThresholdPolicy& policy) {
    if (!(policy.theta > 0.0)) throw Error("threshold must be positive");
    Decision d;
    d.accept = radius >= policy.theta;
    d.reason = d.accept ? DecisionReason::AboveThreshold : DecisionReason::BelowThreshold;
    return d;
}

Decision threshold_validate(CachedVerifier& verifier, const ThresholdPolicy& policy) {
    if (!(policy.theta > 0.0)) throw Error("threshold must be positive");
    Decision d;
    d.accept = verifier.robust_at(policy.theta);
    d.reason = d.accept ? DecisionReason::AboveThreshold : DecisionReason::BelowThreshold;
    return d;
}

void WindowParams::validate() const {
    if (size < stats::kMinNormalitySamples) {
        throw Error("window size must be at least " + std::to_string(stats::kMinNormalitySamples));
    }
    if (!(sigma0 > 0.0) || !(sigma1 >= 0.0)) throw Error("window thresholds must be non-negative");
}

WindowState bootstrap_window(std::span<const double> valid_radii, const WindowParams& params) {
    params.validate();
    if (valid_radii.size() < params.size) {
        throw Error("bootstrap needs " + std::to_string(params.size) + " radii, got " +
                    std::to_string(valid_radii.size()));
    }
    if (std::any_of(valid_radii.begin(), valid_radii.end(), [](double r) { return !(r >= 0.0); })) {
        throw Error("radii must be non-negative");
    }
    WindowState state{params, {valid_radii.end() - static_cast<std::ptrdiff_t>(params.size), valid_radii.end()}};
    return state;
}

std::pair<Decision, WindowState> window_step(const WindowState& state, double radius) {
    const std::size_t s = state.params.size;
    if (state.queue.size() != s) throw Error("window state does not hold exactly s radii");
    if (!(radius >= 0.0)) throw Error("radii must be non-negative");

    std::vector<double> extended = state.queue;
    extended.push_back(radius);

    Decision d;
    bool pass = radius >= state.params.sigma0;
    if (pass) {
        d.reason = DecisionReason::AboveThreshold;
    } else {
        try {
            d.p_before = stats::dagostino_pearson_pvalue(std::span<const double>(extended).first(s));
            d.p_after = stats::dagostino_pearson_pvalue(std::span<const double>(extended).last(s));
            pass = *d.p_before - *d.p_after <= state.params.sigma1;
        } catch (const Error& e) {
            d.diagnostic = e.what();
            pass = false;
        }
        d.reason = pass ? DecisionReason::DistributionPreserved : DecisionReason::BelowThresholdAndDistributionBroken;
    }
    d.accept = pass;

    WindowState next{state.params, {}};
    if (pass) {
        next.queue.assign(extended.begin() + 1, extended.end());
    } else {
        next.queue = state.queue;
    }
    return {std::move(d), std::move(next)};
}

}  // namespace radval
