#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "radval/network.hpp"
#include "radval/tensor.hpp"

namespace radval {

enum class Domain { Interval, Zonotope };

[[nodiscard]] std::string to_string(Domain domain);
[[nodiscard]] Domain parse_domain(const std::string& name);

struct Verdict {
    bool robust = false;
    std::size_t label = 0;
    /// Certified lower bounds of score[label] - score[k] for each k (0 at k == label).
    std::vector<double> margins;
};

/**
 * Sound, incomplete local robustness check: Robust only if every point of the
 * L-infinity ball of radius delta around x (clipped to [0, 1]) keeps the label
 * the concrete forward pass assigns to x. delta == 0 is always Robust.
 */
[[nodiscard]] Verdict is_robust(const Network& net, const Tensor& x, double delta, Domain domain);

}  // namespace radval
