#include "radval/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "radval/error.hpp"

namespace radval {

std::string to_string(ActivationKind kind) {
    switch (kind) {
        case ActivationKind::ReLU: return "relu";
        case ActivationKind::Sigmoid: return "sigmoid";
        case ActivationKind::Tanh: return "tanh";
    }
    return "unknown";
}

ActivationKind parse_activation(const std::string& name) {
    std::string lower = name;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "relu") return ActivationKind::ReLU;
    if (lower == "sigmoid") return ActivationKind::Sigmoid;
    if (lower == "tanh") return ActivationKind::Tanh;
    throw Error("unknown activation '" + name + "'");
}

std::string layer_kind(const Layer& layer) {
    struct Visitor {
        std::string operator()(const Dense&) const { return "dense"; }
        std::string operator()(const Conv2D&) const { return "conv2d"; }
        std::string operator()(const MaxPool2D&) const { return "maxpool2d"; }
        std::string operator()(const Activation&) const { return "activation"; }
    };
    return std::visit(Visitor{}, layer);
}

namespace layers {

namespace {

struct Chw {
    std::size_t c, h, w;
};

Chw as_chw(const Shape& shape, const char* what) {
    if (shape.size() != 3) throw ShapeError(std::string(what) + " expects a (C,H,W) input, got " + to_string(shape));
    return {shape[0], shape[1], shape[2]};
}

std::size_t conv_out_dim(std::size_t in, std::size_t kernel, std::size_t stride, std::size_t padding) {
    if (in + 2 * padding < kernel) throw ShapeError("conv2d kernel larger than padded input");
    return (in + 2 * padding - kernel) / stride + 1;
}

// Calls fn(input_index, output_index, weight_index) for every tap of the
// convolution, iterating inputs in the outer loop. `skip(input_index)` lets
// callers drop zero inputs before the inner loops run.
template <class Skip, class Fn>
void for_each_tap(const Conv2D& layer, const Shape& in_shape, Skip&& skip, Fn&& fn) {
    const auto [C, H, W] = as_chw(in_shape, "conv2d");
    const std::size_t OH = conv_out_dim(H, layer.kernel_h, layer.stride, layer.padding);
    const std::size_t OW = conv_out_dim(W, layer.kernel_w, layer.stride, layer.padding);
    const std::size_t KH = layer.kernel_h, KW = layer.kernel_w, S = layer.stride, P = layer.padding;
    for (std::size_t c = 0; c < C; ++c) {
        for (std::size_t iy = 0; iy < H; ++iy) {
            for (std::size_t ix = 0; ix < W; ++ix) {
                const std::size_t in_idx = (c * H + iy) * W + ix;
                if (skip(in_idx)) continue;
                const std::size_t py = iy + P, px = ix + P;
                for (std::size_t ky = 0; ky < KH && ky <= py; ++ky) {
                    if ((py - ky) % S) continue;
                    const std::size_t oy = (py - ky) / S;
                    if (oy >= OH) continue;
                    for (std::size_t kx = 0; kx < KW && kx <= px; ++kx) {
                        if ((px - kx) % S) continue;
                        const std::size_t ox = (px - kx) / S;
                        if (ox >= OW) continue;
                        for (std::size_t oc = 0; oc < layer.out_channels; ++oc) {
                            fn(in_idx, (oc * OH + oy) * OW + ox, ((oc * C + c) * KH + ky) * KW + kx);
                        }
                    }
                }
            }
        }
    }
}

void init_conv_output(const Conv2D& layer, std::span<double> y, bool with_bias) {
    const std::size_t plane = y.size() / layer.out_channels;
    for (std::size_t oc = 0; oc < layer.out_channels; ++oc) {
        std::fill_n(y.begin() + static_cast<std::ptrdiff_t>(oc * plane), plane, with_bias ? layer.bias[oc] : 0.0);
    }
}

}  // namespace

Shape output_shape(const Layer& layer, const Shape& in) {
    struct Visitor {
        const Shape& in;
        Shape operator()(const Dense& d) const {
            if (element_count(in) != d.in) {
                throw ShapeError("dense layer expects " + std::to_string(d.in) + " inputs, got " + to_string(in));
            }
            return {d.out};
        }
        Shape operator()(const Conv2D& c) const {
            const auto [C, H, W] = as_chw(in, "conv2d");
            if (C != c.in_channels) throw ShapeError("conv2d channel mismatch: " + to_string(in));
            if (c.stride == 0) throw ShapeError("conv2d stride must be positive");
            return {c.out_channels, conv_out_dim(H, c.kernel_h, c.stride, c.padding),
                    conv_out_dim(W, c.kernel_w, c.stride, c.padding)};
        }
        Shape operator()(const MaxPool2D& p) const {
            const auto [C, H, W] = as_chw(in, "maxpool2d");
            if (p.window_h == 0 || p.window_w == 0 || H % p.window_h || W % p.window_w) {
                throw ShapeError("maxpool2d window does not divide input " + to_string(in));
            }
            return {C, H / p.window_h, W / p.window_w};
        }
        Shape operator()(const Activation&) const { return in; }
    };
    return std::visit(Visitor{in}, layer);
}

double activate(ActivationKind kind, double v) {
    switch (kind) {
        case ActivationKind::ReLU: return v > 0.0 ? v : 0.0;
        case ActivationKind::Sigmoid: return 1.0 / (1.0 + std::exp(-v));
        case ActivationKind::Tanh: return std::tanh(v);
    }
    return v;
}

double activate_slope(ActivationKind kind, double v) {
    switch (kind) {
        case ActivationKind::ReLU: return v > 0.0 ? 1.0 : 0.0;
        case ActivationKind::Sigmoid: {
            const double s = 1.0 / (1.0 + std::exp(-v));
            return s * (1.0 - s);
        }
        case ActivationKind::Tanh: {
            const double t = std::tanh(v);
            return 1.0 - t * t;
        }
    }
    return 1.0;
}

void dense_apply(const Dense& layer, std::span<const double> x, std::span<double> y, bool with_bias) {
    thread_local std::vector<std::size_t> nz;
    nz.clear();
    for (std::size_t i = 0; i < layer.in; ++i) {
        if (x[i] != 0.0) nz.push_back(i);
    }
    for (std::size_t o = 0; o < layer.out; ++o) {
        const double* row = layer.weights.data() + o * layer.in;
        double acc = with_bias ? layer.bias[o] : 0.0;
        for (std::size_t i : nz) acc += row[i] * x[i];
        y[o] = acc;
    }
}

void dense_apply_abs(const Dense& layer, std::span<const double> x, std::span<double> y) {
    for (std::size_t o = 0; o < layer.out; ++o) {
        const double* row = layer.weights.data() + o * layer.in;
        double acc = 0.0;
        for (std::size_t i = 0; i < layer.in; ++i) acc += std::abs(row[i]) * x[i];
        y[o] = acc;
    }
}

void conv_apply(const Conv2D& layer, const Shape& in_shape, std::span<const double> x, std::span<double> y,
                bool with_bias) {
    init_conv_output(layer, y, with_bias);
    for_each_tap(
        layer, in_shape, [&](std::size_t i) { return x[i] == 0.0; },
        [&](std::size_t i, std::size_t o, std::size_t w) { y[o] += layer.weights[w] * x[i]; });
}

void conv_apply_abs(const Conv2D& layer, const Shape& in_shape, std::span<const double> x, std::span<double> y) {
    init_conv_output(layer, y, false);
    for_each_tap(
        layer, in_shape, [&](std::size_t i) { return x[i] == 0.0; },
        [&](std::size_t i, std::size_t o, std::size_t w) { y[o] += std::abs(layer.weights[w]) * x[i]; });
}

void maxpool_apply(const MaxPool2D& layer, const Shape& in_shape, std::span<const double> x, std::span<double> y) {
    const auto [C, H, W] = as_chw(in_shape, "maxpool2d");
    const std::size_t OH = H / layer.window_h, OW = W / layer.window_w;
    for (std::size_t c = 0; c < C; ++c) {
        for (std::size_t oy = 0; oy < OH; ++oy) {
            for (std::size_t ox = 0; ox < OW; ++ox) {
                double best = -std::numeric_limits<double>::infinity();
                for (std::size_t dy = 0; dy < layer.window_h; ++dy) {
                    for (std::size_t dx = 0; dx < layer.window_w; ++dx) {
                        best = std::max(best, x[(c * H + oy * layer.window_h + dy) * W + ox * layer.window_w + dx]);
                    }
                }
                y[(c * OH + oy) * OW + ox] = best;
            }
        }
    }
}

void apply(const Layer& layer, const Shape& in_shape, std::span<const double> x, std::span<double> y) {
    if (const auto* d = std::get_if<Dense>(&layer)) {
        dense_apply(*d, x, y, true);
    } else if (const auto* c = std::get_if<Conv2D>(&layer)) {
        conv_apply(*c, in_shape, x, y, true);
    } else if (const auto* p = std::get_if<MaxPool2D>(&layer)) {
        maxpool_apply(*p, in_shape, x, y);
    } else {
        const auto kind = std::get<Activation>(layer).function;
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = activate(kind, x[i]);
    }
}

void conv_backward(const Conv2D& layer, const Shape& in_shape, std::span<const double> x, std::span<const double> g,
                   std::span<double> grad_in, std::vector<double>* dw, std::vector<double>* db) {
    std::fill(grad_in.begin(), grad_in.end(), 0.0);
    for_each_tap(
        layer, in_shape, [](std::size_t) { return false; },
        [&](std::size_t i, std::size_t o, std::size_t w) {
            grad_in[i] += layer.weights[w] * g[o];
            if (dw) (*dw)[w] += g[o] * x[i];
        });
    if (db) {
        const std::size_t plane = g.size() / layer.out_channels;
        for (std::size_t oc = 0; oc < layer.out_channels; ++oc) {
            for (std::size_t k = 0; k < plane; ++k) (*db)[oc] += g[oc * plane + k];
        }
    }
}

}  // namespace layers

namespace {

void check_parameters(const Layer& layer, std::size_t index) {
    if (const auto* d = std::get_if<Dense>(&layer)) {
        if (d->weights.size() != d->in * d->out || d->bias.size() != d->out) {
            throw ShapeError("layer " + std::to_string(index) + ": dense parameter sizes inconsistent");
        }
    } else if (const auto* c = std::get_if<Conv2D>(&layer)) {
        if (c->weights.size() != c->out_channels * c->in_channels * c->kernel_h * c->kernel_w ||
            c->bias.size() != c->out_channels) {
            throw ShapeError("layer " + std::to_string(index) + ": conv2d parameter sizes inconsistent");
        }
    }
}

}  // namespace

Network::Network(Shape input_shape, std::vector<Layer> layers, std::size_t label_count)
    : input_shape_(std::move(input_shape)), layers_(std::move(layers)), label_count_(label_count) {
    if (element_count(input_shape_) == 0) throw ShapeError("network input shape is empty");
    shapes_.push_back(input_shape_);
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        check_parameters(layers_[i], i);
        try {
            shapes_.push_back(layers::output_shape(layers_[i], shapes_.back()));
        } catch (const ShapeError& e) {
            throw ShapeError("layer " + std::to_string(i) + ": " + e.what());
        }
    }
    if (element_count(shapes_.back()) != label_count_) {
        throw ShapeError("network produces " + std::to_string(element_count(shapes_.back())) +
                         " scores but declares " + std::to_string(label_count_) + " labels");
    }
}

std::size_t argmax(std::span<const double> values) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) best = i;
    }
    return best;
}

Trace forward_trace(const Network& net, std::span<const double> x) {
    if (x.size() != net.input_size()) {
        throw ShapeError("input has " + std::to_string(x.size()) + " values, network expects " +
                         to_string(net.input_shape()));
    }
    Trace trace;
    trace.activations.reserve(net.layers().size() + 1);
    trace.activations.emplace_back(x.begin(), x.end());
    for (std::size_t i = 0; i < net.layers().size(); ++i) {
        std::vector<double> out(element_count(net.shape_out(i)));
        layers::apply(net.layers()[i], net.shape_in(i), trace.activations.back(), out);
        trace.activations.push_back(std::move(out));
    }
    return trace;
}

Prediction forward(const Network& net, const Tensor& x) {
    if (!x.all_finite()) throw ShapeError("input contains non-finite values");
    Trace trace = forward_trace(net, x.data());
    Prediction p;
    p.label = argmax(trace.activations.back());
    p.scores = Tensor(Shape{net.label_count()}, std::move(trace.activations.back()));
    return p;
}

SoftmaxLoss softmax_cross_entropy(std::span<const double> scores, std::size_t target) {
    const double peak = *std::max_element(scores.begin(), scores.end());
    double total = 0.0;
    SoftmaxLoss out;
    out.grad.resize(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        out.grad[i] = std::exp(scores[i] - peak);
        total += out.grad[i];
    }
    for (double& g : out.grad) g /= total;
    out.loss = -(scores[target] - peak - std::log(total));
    out.grad[target] -= 1.0;
    return out;
}

ParamGrads::ParamGrads(const Network& net) {
    for (const auto& layer : net.layers()) {
        if (const auto* d = std::get_if<Dense>(&layer)) {
            weights.emplace_back(d->weights.size(), 0.0);
            bias.emplace_back(d->bias.size(), 0.0);
        } else if (const auto* c = std::get_if<Conv2D>(&layer)) {
            weights.emplace_back(c->weights.size(), 0.0);
            bias.emplace_back(c->bias.size(), 0.0);
        } else {
            weights.emplace_back();
            bias.emplace_back();
        }
    }
}

void ParamGrads::clear() {
    for (auto& w : weights) std::fill(w.begin(), w.end(), 0.0);
    for (auto& b : bias) std::fill(b.begin(), b.end(), 0.0);
}

std::vector<double> backward(const Network& net, const Trace& trace, std::span<const double> grad_scores,
                             ParamGrads* grads) {
    std::vector<double> g(grad_scores.begin(), grad_scores.end());
    for (std::size_t li = net.layers().size(); li-- > 0;) {
        const auto& x = trace.activations[li];
        std::vector<double> gin(x.size(), 0.0);
        const Layer& layer = net.layers()[li];
        if (const auto* d = std::get_if<Dense>(&layer)) {
            for (std::size_t o = 0; o < d->out; ++o) {
                const double go = g[o];
                if (go == 0.0) continue;
                const double* row = d->weights.data() + o * d->in;
                for (std::size_t i = 0; i < d->in; ++i) gin[i] += row[i] * go;
                if (grads) {
                    double* dw = grads->weights[li].data() + o * d->in;
                    for (std::size_t i = 0; i < d->in; ++i) dw[i] += go * x[i];
                    grads->bias[li][o] += go;
                }
            }
        } else if (const auto* c = std::get_if<Conv2D>(&layer)) {
            layers::conv_backward(*c, net.shape_in(li), x, g, gin, grads ? &grads->weights[li] : nullptr,
                                  grads ? &grads->bias[li] : nullptr);
        } else if (const auto* p = std::get_if<MaxPool2D>(&layer)) {
            const Shape& s = net.shape_in(li);
            const std::size_t C = s[0], H = s[1], W = s[2];
            const std::size_t OH = H / p->window_h, OW = W / p->window_w;
            for (std::size_t ch = 0; ch < C; ++ch) {
                for (std::size_t oy = 0; oy < OH; ++oy) {
                    for (std::size_t ox = 0; ox < OW; ++ox) {
                        std::size_t best = (ch * H + oy * p->window_h) * W + ox * p->window_w;
                        for (std::size_t dy = 0; dy < p->window_h; ++dy) {
                            for (std::size_t dx = 0; dx < p->window_w; ++dx) {
                                const std::size_t idx = (ch * H + oy * p->window_h + dy) * W + ox * p->window_w + dx;
                                if (x[idx] > x[best]) best = idx;
                            }
                        }
                        gin[best] += g[(ch * OH + oy) * OW + ox];
                    }
                }
            }
        } else {
            const auto kind = std::get<Activation>(layer).function;
            for (std::size_t i = 0; i < x.size(); ++i) gin[i] = g[i] * layers::activate_slope(kind, x[i]);
        }
        g = std::move(gin);
    }
    return g;
}

Tensor input_gradient(const Network& net, const Tensor& x, std::size_t target) {
    if (target >= net.label_count()) throw ShapeError("gradient target label out of range");
    const Trace trace = forward_trace(net, x.data());
    const SoftmaxLoss loss = softmax_cross_entropy(trace.activations.back(), target);
    return Tensor(x.shape(), backward(net, trace, loss.grad));
}

}  // namespace radval
