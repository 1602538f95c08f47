#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "radval/tensor.hpp"

namespace radval {

struct Sample {
    Tensor input;  // values in [0, 1]
    std::size_t label = 0;
};

struct Dataset {
    std::vector<Sample> samples;

    [[nodiscard]] std::size_t size() const noexcept { return samples.size(); }
    [[nodiscard]] bool empty() const noexcept { return samples.empty(); }
};

enum class DatasetFormat { Csv, Idx };

[[nodiscard]] DatasetFormat parse_dataset_format(const std::string& name);

/**
 * Reads `label,v0,...,v{m-1}` lines. Values are divided by 255 when the file's
 * maximum exceeds 1. Every sample gets `input_shape` when given, a flat shape
 * otherwise. Labels >= label_count are rejected when label_count is set.
 */
[[nodiscard]] Dataset load_csv(const std::filesystem::path& path, std::optional<Shape> input_shape = std::nullopt,
                               std::optional<std::size_t> label_count = std::nullopt);

void save_csv(const Dataset& data, const std::filesystem::path& path);

/// Big-endian idx3 images (magic 0x803) with an idx1 label file (magic 0x801).
[[nodiscard]] Dataset load_idx(const std::filesystem::path& images, const std::filesystem::path& labels,
                               std::optional<std::size_t> label_count = std::nullopt);

/// MNIST naming: "...images-idx3-ubyte" pairs with "...labels-idx1-ubyte".
[[nodiscard]] std::filesystem::path idx_labels_path(const std::filesystem::path& images);

/// Format dispatch. For idx the label file is located with idx_labels_path.
[[nodiscard]] Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format,
                                   std::optional<Shape> input_shape = std::nullopt,
                                   std::optional<std::size_t> label_count = std::nullopt);

/// Gaussian clusters around `classes` centers drawn uniformly in [0.2, 0.8]^dims, clipped to [0, 1].
[[nodiscard]] Dataset gen_synthetic(std::size_t classes, std::size_t dims, std::size_t per_class, double spread,
                                    std::uint64_t seed);

/// Deterministic shuffled split into (train, test) with `test_fraction` of samples held out.
[[nodiscard]] std::pair<Dataset, Dataset> split(const Dataset& data, double test_fraction, std::uint64_t seed);

}  // namespace radval
