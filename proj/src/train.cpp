#include "radval/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <regex>

#include "radval/error.hpp"

namespace radval {

Architecture parse_architecture(std::string_view text) {
    std::string s(text);
    // Accept the multiplication sign as well as a plain 'x'.
    for (std::size_t pos; (pos = s.find("\xC3\x97")) != std::string::npos;) s.replace(pos, 2, "x");
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());

    static const std::regex repeat(R"((\d+)x(\d+))");
    static const std::regex single(R"((\d+))");
    static const std::regex conv(R"((\d+)(?:\^\((\d+),(\d+)\)|@(\d+)x(\d+)))");

    std::vector<std::string> tokens;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i < s.size() && s[i] == '(') ++depth;
        if (i < s.size() && s[i] == ')') --depth;
        if (i == s.size() || (s[i] == ',' && depth == 0)) {
            tokens.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }

    Architecture arch;
    for (std::size_t t = 0; t < tokens.size(); ++t) {
        std::smatch m;
        const bool last = t + 1 == tokens.size();
        if (std::regex_match(tokens[t], m, single)) {
            const auto units = std::stoul(m[1]);
            if (units == 0) throw Error("architecture: zero-width layer");
            if (last) {
                arch.outputs = units;
            } else {
                arch.hidden.push_back({Architecture::Entry::Kind::Dense, units, 0, 0});
            }
        } else if (!last && std::regex_match(tokens[t], m, repeat)) {
            const auto count = std::stoul(m[1]);
            const auto units = std::stoul(m[2]);
            if (units == 0) throw Error("architecture: zero-width layer");
            for (std::size_t i = 0; i < count; ++i) arch.hidden.push_back({Architecture::Entry::Kind::Dense, units, 0, 0});
        } else if (!last && std::regex_match(tokens[t], m, conv)) {
            const bool caret = m[2].matched;
            arch.hidden.push_back({Architecture::Entry::Kind::Conv, std::stoul(m[1]), std::stoul(caret ? m[2] : m[4]),
                                   std::stoul(caret ? m[3] : m[5])});
        } else {
            throw Error("architecture: cannot parse entry '" + tokens[t] + "' in '" + std::string(text) + "'");
        }
    }
    if (arch.outputs < 2) throw Error("architecture: output layer needs at least 2 units");
    return arch;
}

std::string to_string(const Architecture& arch) {
    std::string out;
    for (const auto& e : arch.hidden) {
        if (e.kind == Architecture::Entry::Kind::Dense) {
            out += std::to_string(e.units);
        } else {
            out += std::to_string(e.units) + "^(" + std::to_string(e.kernel_h) + "," + std::to_string(e.kernel_w) + ")";
        }
        out += ",";
    }
    return out + std::to_string(arch.outputs);
}

Network build_network(const Architecture& arch, const Shape& input_shape, ActivationKind activation,
                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto init = [&](std::vector<double>& w, std::size_t fan_in, std::size_t fan_out) {
        const double limit = activation == ActivationKind::ReLU ? std::sqrt(6.0 / static_cast<double>(fan_in))
                                                                : std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        std::uniform_real_distribution<double> dist(-limit, limit);
        for (double& v : w) v = dist(rng);
    };

    std::vector<Layer> layers;
    Shape shape = input_shape;
    auto push = [&](Layer layer) {
        shape = layers::output_shape(layer, shape);
        layers.push_back(std::move(layer));
    };
    auto dense = [&](std::size_t out) {
        Dense d;
        d.in = element_count(shape);
        d.out = out;
        d.weights.resize(d.in * d.out);
        d.bias.assign(d.out, 0.0);
        init(d.weights, d.in, d.out);
        push(std::move(d));
    };

    for (const auto& e : arch.hidden) {
        if (e.kind == Architecture::Entry::Kind::Dense) {
            dense(e.units);
            push(Activation{activation});
            continue;
        }
        if (shape.size() != 3) throw ShapeError("convolution needs a (C,H,W) input, got " + to_string(shape));
        Conv2D c;
        c.in_channels = shape[0];
        c.out_channels = e.units;
        c.kernel_h = e.kernel_h;
        c.kernel_w = e.kernel_w;
        c.padding = e.kernel_h / 2;
        c.weights.resize(c.out_channels * c.in_channels * c.kernel_h * c.kernel_w);
        c.bias.assign(c.out_channels, 0.0);
        const std::size_t fan_in = c.in_channels * c.kernel_h * c.kernel_w;
        init(c.weights, fan_in, c.out_channels * c.kernel_h * c.kernel_w);
        push(std::move(c));
        push(Activation{activation});
        push(MaxPool2D{2, 2});
    }
    dense(arch.outputs);
    return Network(input_shape, std::move(layers), arch.outputs);
}

double accuracy(const Network& net, const Dataset& data) {
    if (data.empty()) return 0.0;
    std::size_t correct = 0;
    for (const auto& s : data.samples) correct += forward(net, s.input).label == s.label;
    return static_cast<double>(correct) / static_cast<double>(data.size());
}

namespace {

std::vector<double>* weights_of(Layer& layer) {
    if (auto* d = std::get_if<Dense>(&layer)) return &d->weights;
    if (auto* c = std::get_if<Conv2D>(&layer)) return &c->weights;
    return nullptr;
}

std::vector<double>* bias_of(Layer& layer) {
    if (auto* d = std::get_if<Dense>(&layer)) return &d->bias;
    if (auto* c = std::get_if<Conv2D>(&layer)) return &c->bias;
    return nullptr;
}

}  // namespace

TrainResult train_sgd(const Dataset& train, const Architecture& arch, ActivationKind activation,
                      const TrainConfig& config, const Dataset* test) {
    if (train.empty()) throw TrainingError("training set is empty");
    const Shape& input_shape = train.samples.front().input.shape();
    for (const auto& s : train.samples) {
        if (s.label >= arch.outputs) throw DataError("training label exceeds output width");
    }

    Network net = build_network(arch, input_shape, activation, config.seed);
    std::vector<Layer> params = net.layers();
    ParamGrads grads(net);
    ParamGrads velocity(net);

    std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t batch = std::max<std::size_t>(1, config.batch_size);

    double epoch_loss = 0.0;
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        epoch_loss = 0.0;
        for (std::size_t b = 0; b < order.size(); b += batch) {
            const std::size_t end = std::min(order.size(), b + batch);
            grads.clear();
            for (std::size_t i = b; i < end; ++i) {
                const Sample& s = train.samples[order[i]];
                const Trace trace = forward_trace(net, s.input.data());
                const SoftmaxLoss loss = softmax_cross_entropy(trace.activations.back(), s.label);
                if (!std::isfinite(loss.loss)) {
                    throw TrainingError("non-finite loss at epoch " + std::to_string(epoch));
                }
                epoch_loss += loss.loss;
                backward(net, trace, loss.grad, &grads);
            }
            const double scale = config.learning_rate / static_cast<double>(end - b);
            for (std::size_t li = 0; li < params.size(); ++li) {
                auto* w = weights_of(params[li]);
                if (!w) continue;
                auto* bias = bias_of(params[li]);
                for (std::size_t k = 0; k < w->size(); ++k) {
                    velocity.weights[li][k] = config.momentum * velocity.weights[li][k] - scale * grads.weights[li][k];
                    (*w)[k] += velocity.weights[li][k];
                }
                for (std::size_t k = 0; k < bias->size(); ++k) {
                    velocity.bias[li][k] = config.momentum * velocity.bias[li][k] - scale * grads.bias[li][k];
                    (*bias)[k] += velocity.bias[li][k];
                }
            }
            net = Network(input_shape, params, arch.outputs);
        }
        epoch_loss /= static_cast<double>(train.size());
        if (!std::isfinite(epoch_loss)) throw TrainingError("non-finite loss at epoch " + std::to_string(epoch));
    }

    TrainResult result{net, epoch_loss, accuracy(net, train), std::nullopt};
    if (test) result.test_accuracy = accuracy(net, *test);
    return result;
}

}  // namespace radval
