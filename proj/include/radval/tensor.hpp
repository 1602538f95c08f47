#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace radval {

using Shape = std::vector<std::size_t>;

[[nodiscard]] std::size_t element_count(const Shape& shape);
[[nodiscard]] std::string to_string(const Shape& shape);

/**
 * Dense row-major array of doubles.
 *
 * The element count always equals the product of the shape. A tensor with an
 * empty shape is a scalar holding one element.
 */
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(Shape shape, double fill = 0.0);
    Tensor(Shape shape, std::vector<double> data);

    /// Convenience for flat vectors: shape is {values.size()}.
    static Tensor vector(std::initializer_list<double> values);
    static Tensor vector(std::vector<double> values);

    [[nodiscard]] const Shape& shape() const noexcept { return shape_; }
    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

    [[nodiscard]] std::span<double> data() noexcept { return data_; }
    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return data_; }

    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    /// Same data under a new shape with an equal element count.
    [[nodiscard]] Tensor reshaped(Shape shape) const;

    [[nodiscard]] bool all_finite() const noexcept;

    friend bool operator==(const Tensor&, const Tensor&) = default;

private:
    Shape shape_;
    std::vector<double> data_;
};

/// L-infinity distance between two tensors of equal size.
[[nodiscard]] double linf_distance(std::span<const double> a, std::span<const double> b);

}  // namespace radval
