#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "radval/network.hpp"
#include "radval/verify.hpp"

namespace radval {

struct SearchParams {
    double up = 0.256;        // initial upper bound of the bisection
    double tolerance = 0.001;  // stop once the bracket is no wider than this
    Domain domain = Domain::Zonotope;

    /// Throws Error unless 0 < tolerance < up.
    void validate() const;
    /// Number of bisection steps: ceil(log2(up / tolerance)).
    [[nodiscard]] std::size_t iterations() const;
};

struct Probe {
    double delta = 0.0;
    bool robust = false;
};

struct RadiusResult {
    double radius = 0.0;  // certified lower bound (0 when nothing was certified)
    std::size_t iterations = 0;
    std::vector<Probe> probes;
    double wall_time = 0.0;  // seconds
    /// The search never saw Unknown, so the true radius may exceed `up`.
    bool saturated = false;

    /// True when no Robust probe lies above an Unknown probe.
    [[nodiscard]] bool monotone_trace() const;
};

/// Answers "is the input robust at radius delta?".
using RobustnessOracle = std::function<bool(double delta)>;

/**
 * Memoizes is_robust verdicts for one input so that a threshold check and a
 * full radius search never repeat a verifier call at the same radius.
 */
class CachedVerifier {
public:
    CachedVerifier(const Network& net, Tensor x, Domain domain);

    bool robust_at(double delta);
    [[nodiscard]] std::size_t verifier_calls() const noexcept { return calls_; }
    [[nodiscard]] const Tensor& input() const noexcept { return x_; }
    [[nodiscard]] Domain domain() const noexcept { return domain_; }

private:
    const Network* net_;
    Tensor x_;
    Domain domain_;
    std::map<double, bool> cache_;
    std::size_t calls_ = 0;
};

/// Bisection on [0, up]: Robust midpoints raise the lower end, others lower the upper end.
[[nodiscard]] RadiusResult approximate_radius(const RobustnessOracle& oracle, const SearchParams& params);
[[nodiscard]] RadiusResult approximate_radius(CachedVerifier& verifier, const SearchParams& params);
[[nodiscard]] RadiusResult approximate_radius(const Network& net, const Tensor& x, const SearchParams& params);

struct BatchItem {
    std::optional<RadiusResult> result;
    std::string error;  // set when the search for this input threw
};

/// Radius of every input, in input order. `jobs` worker threads (0 = hardware concurrency).
[[nodiscard]] std::vector<BatchItem> batch_radii(const Network& net, const std::vector<Tensor>& inputs,
                                                 const SearchParams& params, std::size_t jobs = 1);

}  // namespace radval
