#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "radval/radius.hpp"
#include "radval/verify.hpp"

namespace radval {

enum class DecisionReason {
    AboveThreshold,                       // radius >= threshold
    BelowThreshold,                       // threshold policy rejection
    DistributionPreserved,                // window p-value did not drop by more than sigma1
    BelowThresholdAndDistributionBroken,  // window rejection
};

[[nodiscard]] std::string to_string(DecisionReason reason);

struct Decision {
    bool accept = false;
    DecisionReason reason = DecisionReason::BelowThreshold;
    std::optional<double> p_before;  // p-value of the window before the step
    std::optional<double> p_after;   // p-value of the window that would result from accepting
    std::string diagnostic;          // set when the normality test could not be evaluated
};

struct ThresholdPolicy {
    double theta = 0.01;
    Domain domain = Domain::Zonotope;
};

/// Accept iff radius >= theta.
[[nodiscard]] Decision threshold_validate(double radius, const ThresholdPolicy& policy);

/// Threshold validation with a single verifier call at theta.
[[nodiscard]] Decision threshold_validate(CachedVerifier& verifier, const ThresholdPolicy& policy);

struct WindowParams {
    std::size_t size = 50;  // s
    double sigma0 = 0.014;  // radius accepted outright at or above this
    double sigma1 = 0.001;  // largest tolerated p-value drop

    void validate() const;

    friend bool operator==(const WindowParams&, const WindowParams&) = default;
};

/// Sliding window of the radii of the most recently accepted inputs.
struct WindowState {
    WindowParams params;
    std::vector<double> queue;  // oldest first; always params.size entries

    friend bool operator==(const WindowState&, const WindowState&) = default;
};

/// Window holding the last `params.size` radii of a list of known-valid inputs.
[[nodiscard]] WindowState bootstrap_window(std::span<const double> valid_radii, const WindowParams& params);

/**
 * Appends `radius` and tests the extended queue Q[0..s]:
 *   Q[s] >= sigma0  or  pvalue(Q[0..s-1]) - pvalue(Q[1..s]) <= sigma1.
 * On success the oldest radius is dropped and the input accepted; otherwise
 * the new radius is dropped, the window is unchanged and the input rejected.
 * A window whose normality test cannot be evaluated rejects with a diagnostic.
 */
[[nodiscard]] std::pair<Decision, WindowState> window_step(const WindowState& state, double radius);

}  // namespace radval
