#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "radval/dataset.hpp"
#include "radval/network.hpp"

namespace radval {

/**
 * Layer structure in the compact notation used for the fixture networks:
 * comma-separated entries where "3x30" is three dense layers of 30 units,
 * "128" a single dense layer, and "6^(3,3)" a convolution with six 3x3
 * filters followed by a 2x2 max pool. The final entry is the output width.
 */
struct Architecture {
    struct Entry {
        enum class Kind { Dense, Conv } kind = Kind::Dense;
        std::size_t units = 0;  // neurons or filters
        std::size_t kernel_h = 0;
        std::size_t kernel_w = 0;
    };

    std::vector<Entry> hidden;
    std::size_t outputs = 0;

    /// Counts the input layer, every hidden entry and the output layer.
    [[nodiscard]] std::size_t layer_count() const noexcept { return hidden.size() + 2; }
};

[[nodiscard]] Architecture parse_architecture(std::string_view text);
[[nodiscard]] std::string to_string(const Architecture& arch);

/// Seeded random initialization (He for ReLU, Glorot otherwise). Convolutions use same-padding.
[[nodiscard]] Network build_network(const Architecture& arch, const Shape& input_shape, ActivationKind activation,
                                    std::uint64_t seed);

struct TrainConfig {
    std::size_t epochs = 30;
    double learning_rate = 0.05;
    double momentum = 0.9;
    std::size_t batch_size = 16;
    std::uint64_t seed = 0;
};

struct TrainResult {
    Network net;
    double final_loss = 0.0;
    double train_accuracy = 0.0;
    std::optional<double> test_accuracy;
};

/// Mini-batch SGD with momentum on softmax cross-entropy. Throws TrainingError on divergence.
[[nodiscard]] TrainResult train_sgd(const Dataset& train, const Architecture& arch, ActivationKind activation,
                                    const TrainConfig& config, const Dataset* test = nullptr);

[[nodiscard]] double accuracy(const Network& net, const Dataset& data);

}  // namespace radval
