#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "radval/interval.hpp"
#include "radval/network.hpp"
#include "radval/tensor.hpp"

namespace radval {

/**
 * Affine set { c + G e : e in [-1, 1]^k } over the neurons of one layer.
 *
 * Generators are stored generator-major: generator j is a contiguous row of
 * `dims()` coefficients, so each generator can be pushed through a layer as
 * if it were an ordinary (mostly sparse) activation tensor. Coefficient G_ij
 * in the usual n x k notation is `coefficient(i, j)`.
 */
class Zonotope {
public:
    Zonotope() = default;
    Zonotope(Shape shape, std::vector<double> center, std::size_t generator_count, std::vector<double> generators);

    /// A zonotope with no generators.
    static Zonotope point(const Tensor& value);

    [[nodiscard]] const Shape& shape() const noexcept { return shape_; }
    [[nodiscard]] std::size_t dims() const noexcept { return center_.size(); }
    [[nodiscard]] std::size_t generator_count() const noexcept { return generator_count_; }

    [[nodiscard]] std::span<const double> center() const noexcept { return center_; }
    [[nodiscard]] std::span<const double> generator(std::size_t j) const {
        return {generators_.data() + j * dims(), dims()};
    }
    [[nodiscard]] double coefficient(std::size_t dim, std::size_t gen) const {
        return generators_[gen * dims() + dim];
    }

    /// Per-dimension half widths sum_j |G_ij|.
    [[nodiscard]] std::vector<double> radii() const;
    [[nodiscard]] Interval concretize() const;

    /// Same set viewed under another shape with an equal element count.
    [[nodiscard]] Zonotope reshaped(Shape shape) const;

    /// Evaluates c + G e for a noise vector e in [-1, 1]^k.
    [[nodiscard]] std::vector<double> evaluate(std::span<const double> noise) const;

private:
    Shape shape_;
    std::vector<double> center_;
    std::size_t generator_count_ = 0;
    std::vector<double> generators_;
};

/// Encodes the clipped box [max(lo, x_i - delta), min(hi, x_i + delta)] with one generator per input.
[[nodiscard]] Zonotope input_region(const Tensor& x, double delta, double lo = 0.0, double hi = 1.0);

/// Exact image under x -> W x + b.
[[nodiscard]] Zonotope affine_transform(const Zonotope& z, const Dense& layer);
[[nodiscard]] Zonotope affine_transform(const Zonotope& z, const Conv2D& layer);

/// Minimal-area ReLU relaxation: slope u/(u-l), offset and fresh generator -slope*l/2.
[[nodiscard]] Zonotope relu_transform(const Zonotope& z);

/// Sigmoid/tanh relaxation with slope min(g'(l), g'(u)) and a symmetric error band.
[[nodiscard]] Zonotope sshape_transform(const Zonotope& z, ActivationKind kind);

/// Passes a dominant cell through exactly, otherwise boxes the pool output.
[[nodiscard]] Zonotope maxpool_transform(const Zonotope& z, const MaxPool2D& pool);

/// Dispatches to the transformer matching the layer kind.
[[nodiscard]] Zonotope transform(const Zonotope& z, const Layer& layer);

/// Output-layer zonotope for the given input zonotope.
[[nodiscard]] Zonotope propagate_zonotope(const Network& net, const Zonotope& input);

/// Lower bound of score_c - score_k over the zonotope, computed on the difference form.
[[nodiscard]] double dominance_lower_bound(const Zonotope& z, std::size_t c, std::size_t k);

/**
 * Interval analysis expressed in the zonotope representation: a box zonotope
 * (one private generator per neuron) is pushed through each affine layer and
 * re-boxed, activations and pools take their exact interval image.
 */
[[nodiscard]] Interval propagate_boxed_zonotope(const Network& net, const Interval& input);

}  // namespace radval
