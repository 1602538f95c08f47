#pragma once

#include <span>
#include <vector>

#include "radval/network.hpp"
#include "radval/tensor.hpp"

namespace radval {

/// Elementwise box [lower, upper]; lower <= upper everywhere.
struct Interval {
    Tensor lower;
    Tensor upper;

    [[nodiscard]] std::size_t size() const noexcept { return lower.size(); }
    [[nodiscard]] bool contains(std::span<const double> point, double slack = 0.0) const;
    /// True when every box of `this` lies inside the matching box of `outer`.
    [[nodiscard]] bool within(const Interval& outer, double slack = 0.0) const;
};

/// The L-infinity ball of radius delta around x, clipped to [lo, hi].
[[nodiscard]] Interval box_region(const Tensor& x, double delta, double lo = 0.0, double hi = 1.0);

/// Interval image of one layer.
[[nodiscard]] Interval interval_layer(const Layer& layer, const Shape& in_shape, const Interval& in);

/// Pushes a box through the whole network with plain interval arithmetic.
[[nodiscard]] Interval propagate_interval(const Network& net, const Interval& input);

}  // namespace radval
