#include "radval/interval.hpp"

#include <algorithm>
#include <cmath>

#include "radval/error.hpp"

namespace radval {

bool Interval::contains(std::span<const double> point, double slack) const {
    if (point.size() != size()) return false;
    for (std::size_t i = 0; i < point.size(); ++i) {
        if (point[i] < lower[i] - slack || point[i] > upper[i] + slack) return false;
    }
    return true;
}

bool Interval::within(const Interval& outer, double slack) const {
    if (outer.size() != size()) return false;
    for (std::size_t i = 0; i < size(); ++i) {
        if (lower[i] < outer.lower[i] - slack || upper[i] > outer.upper[i] + slack) return false;
    }
    return true;
}

Interval box_region(const Tensor& x, double delta, double lo, double hi) {
    if (!(delta >= 0.0)) throw Error("region radius must be non-negative");
    Interval box{Tensor(x.shape()), Tensor(x.shape())};
    for (std::size_t i = 0; i < x.size(); ++i) {
        box.lower[i] = std::max(lo, x[i] - delta);
        box.upper[i] = std::min(hi, x[i] + delta);
    }
    return box;
}

Interval interval_layer(const Layer& layer, const Shape& in_shape, const Interval& in) {
    const Shape out_shape = layers::output_shape(layer, in_shape);
    const std::size_t n = element_count(out_shape);
    Interval out{Tensor(out_shape), Tensor(out_shape)};

    if (std::holds_alternative<Dense>(layer) || std::holds_alternative<Conv2D>(layer)) {
        std::vector<double> mid(in.size()), rad(in.size());
        for (std::size_t i = 0; i < in.size(); ++i) {
            mid[i] = 0.5 * (in.lower[i] + in.upper[i]);
            rad[i] = 0.5 * (in.upper[i] - in.lower[i]);
        }
        std::vector<double> c(n), r(n);
        if (const auto* d = std::get_if<Dense>(&layer)) {
            layers::dense_apply(*d, mid, c, true);
            layers::dense_apply_abs(*d, rad, r);
        } else {
            const auto& conv = std::get<Conv2D>(layer);
            layers::conv_apply(conv, in_shape, mid, c, true);
            layers::conv_apply_abs(conv, in_shape, rad, r);
        }
        for (std::size_t i = 0; i < n; ++i) {
            out.lower[i] = c[i] - r[i];
            out.upper[i] = c[i] + r[i];
        }
    } else if (const auto* p = std::get_if<MaxPool2D>(&layer)) {
        layers::maxpool_apply(*p, in_shape, in.lower.data(), out.lower.data());
        layers::maxpool_apply(*p, in_shape, in.upper.data(), out.upper.data());
    } else {
        // All supported activations are monotone non-decreasing.
        const auto kind = std::get<Activation>(layer).function;
        for (std::size_t i = 0; i < n; ++i) {
            out.lower[i] = layers::activate(kind, in.lower[i]);
            out.upper[i] = layers::activate(kind, in.upper[i]);
        }
    }
    return out;
}

Interval propagate_interval(const Network& net, const Interval& input) {
    if (input.size() != net.input_size()) throw ShapeError("interval region does not match the network input");
    Interval cur{input.lower.reshaped(net.input_shape()), input.upper.reshaped(net.input_shape())};
    for (std::size_t i = 0; i < net.layers().size(); ++i) cur = interval_layer(net.layers()[i], net.shape_in(i), cur);
    return cur;
}

}  // namespace radval
