#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "radval/tensor.hpp"

namespace radval {

enum class ActivationKind { ReLU, Sigmoid, Tanh };

[[nodiscard]] std::string to_string(ActivationKind kind);
[[nodiscard]] ActivationKind parse_activation(const std::string& name);

/// Fully connected layer. Inputs of any shape are consumed flattened.
struct Dense {
    std::size_t in = 0;
    std::size_t out = 0;
    std::vector<double> weights;  // out x in, row-major
    std::vector<double> bias;     // out
};

/// 2-D convolution over (channels, height, width) tensors with zero padding.
struct Conv2D {
    std::size_t in_channels = 0;
    std::size_t out_channels = 0;
    std::size_t kernel_h = 0;
    std::size_t kernel_w = 0;
    std::size_t stride = 1;
    std::size_t padding = 0;
    std::vector<double> weights;  // out_channels x in_channels x kernel_h x kernel_w
    std::vector<double> bias;     // out_channels
};

/// Non-overlapping max pooling; the window must divide the spatial dims.
struct MaxPool2D {
    std::size_t window_h = 2;
    std::size_t window_w = 2;
};

struct Activation {
    ActivationKind function = ActivationKind::ReLU;
};

using Layer = std::variant<Dense, Conv2D, MaxPool2D, Activation>;

[[nodiscard]] std::string layer_kind(const Layer& layer);

/**
 * Feedforward network mapping a tensor of `input_shape` to `label_count` scores.
 *
 * Construction validates that consecutive layer shapes agree and caches the
 * shape flowing out of every layer. Instances are immutable.
 */
class Network {
public:
    Network(Shape input_shape, std::vector<Layer> layers, std::size_t label_count);

    [[nodiscard]] const Shape& input_shape() const noexcept { return input_shape_; }
    [[nodiscard]] std::size_t input_size() const noexcept { return element_count(input_shape_); }
    [[nodiscard]] const std::vector<Layer>& layers() const noexcept { return layers_; }
    [[nodiscard]] std::size_t label_count() const noexcept { return label_count_; }

    /// Shape entering layer i; shape_in(layers().size()) is the score shape.
    [[nodiscard]] const Shape& shape_in(std::size_t layer) const { return shapes_.at(layer); }
    [[nodiscard]] const Shape& shape_out(std::size_t layer) const { return shapes_.at(layer + 1); }

private:
    Shape input_shape_;
    std::vector<Layer> layers_;
    std::size_t label_count_;
    std::vector<Shape> shapes_;
};

struct Prediction {
    Tensor scores;
    std::size_t label = 0;
};

/// Index of the largest value; ties resolve to the lowest index.
[[nodiscard]] std::size_t argmax(std::span<const double> values);

/// Concrete evaluation. Throws ShapeError on a mismatched or non-finite input.
[[nodiscard]] Prediction forward(const Network& net, const Tensor& x);

/// Gradient of softmax cross-entropy at `target` with respect to the input.
[[nodiscard]] Tensor input_gradient(const Network& net, const Tensor& x, std::size_t target);

struct SoftmaxLoss {
    double loss = 0.0;
    std::vector<double> grad;  // d loss / d scores
};

[[nodiscard]] SoftmaxLoss softmax_cross_entropy(std::span<const double> scores, std::size_t target);

/// Values flowing between layers: activations[0] is the input, activations[i + 1] the output of layer i.
struct Trace {
    std::vector<std::vector<double>> activations;
};

[[nodiscard]] Trace forward_trace(const Network& net, std::span<const double> x);

/// Parameter gradients, one entry per layer (empty for parameter-free layers).
struct ParamGrads {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> bias;

    explicit ParamGrads(const Network& net);
    void clear();
};

/**
 * Back-propagates `grad_scores` through a recorded trace and returns the
 * gradient with respect to the input. Parameter gradients are accumulated
 * into `grads` when it is non-null.
 */
std::vector<double> backward(const Network& net, const Trace& trace, std::span<const double> grad_scores,
                             ParamGrads* grads = nullptr);

namespace layers {

[[nodiscard]] Shape output_shape(const Layer& layer, const Shape& in);

[[nodiscard]] double activate(ActivationKind kind, double v);
/// Derivative of the activation at pre-activation value v.
[[nodiscard]] double activate_slope(ActivationKind kind, double v);

/// y = W x (+ b). Zero entries of x are skipped, which keeps sparse zonotope generators cheap.
void dense_apply(const Dense& layer, std::span<const double> x, std::span<double> y, bool with_bias);
/// y = |W| x, used for interval radii.
void dense_apply_abs(const Dense& layer, std::span<const double> x, std::span<double> y);

void conv_apply(const Conv2D& layer, const Shape& in_shape, std::span<const double> x, std::span<double> y,
                bool with_bias);
void conv_apply_abs(const Conv2D& layer, const Shape& in_shape, std::span<const double> x, std::span<double> y);

void maxpool_apply(const MaxPool2D& layer, const Shape& in_shape, std::span<const double> x, std::span<double> y);

/// Applies one layer concretely.
void apply(const Layer& layer, const Shape& in_shape, std::span<const double> x, std::span<double> y);

}  // namespace layers

}  // namespace radval
