#include "radval/zonotope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "radval/error.hpp"

namespace radval {

Zonotope::Zonotope(Shape shape, std::vector<double> center, std::size_t generator_count,
                   std::vector<double> generators)
    : shape_(std::move(shape)),
      center_(std::move(center)),
      generator_count_(generator_count),
      generators_(std::move(generators)) {
    if (element_count(shape_) != center_.size()) throw ShapeError("zonotope center does not match its shape");
    if (generators_.size() != generator_count_ * center_.size()) {
        throw ShapeError("zonotope generator storage does not match " + std::to_string(generator_count_) +
                         " generators");
    }
}

Zonotope Zonotope::point(const Tensor& value) { return Zonotope(value.shape(), value.values(), 0, {}); }

std::vector<double> Zonotope::radii() const {
    std::vector<double> r(dims(), 0.0);
    for (std::size_t j = 0; j < generator_count_; ++j) {
        const double* row = generators_.data() + j * dims();
        for (std::size_t i = 0; i < dims(); ++i) r[i] += std::abs(row[i]);
    }
    return r;
}

Interval Zonotope::concretize() const {
    const auto r = radii();
    Interval box{Tensor(shape_), Tensor(shape_)};
    for (std::size_t i = 0; i < dims(); ++i) {
        box.lower[i] = center_[i] - r[i];
        box.upper[i] = center_[i] + r[i];
    }
    return box;
}

Zonotope Zonotope::reshaped(Shape shape) const {
    return Zonotope(std::move(shape), center_, generator_count_, generators_);
}

std::vector<double> Zonotope::evaluate(std::span<const double> noise) const {
    if (noise.size() != generator_count_) throw ShapeError("noise vector length differs from generator count");
    std::vector<double> v = center_;
    for (std::size_t j = 0; j < generator_count_; ++j) {
        if (noise[j] == 0.0) continue;
        const double* row = generators_.data() + j * dims();
        for (std::size_t i = 0; i < dims(); ++i) v[i] += noise[j] * row[i];
    }
    return v;
}

Zonotope input_region(const Tensor& x, double delta, double lo, double hi) {
    if (!(delta >= 0.0)) throw Error("region radius must be non-negative");
    const std::size_t n = x.size();
    std::vector<double> center(n);
    std::vector<double> gens(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double l = std::max(lo, x[i] - delta);
        const double u = std::min(hi, x[i] + delta);
        center[i] = 0.5 * (l + u);
        gens[i * n + i] = 0.5 * (u - l);
    }
    return Zonotope(x.shape(), std::move(center), n, std::move(gens));
}

namespace {

// Applies the linear part of an affine layer to every generator and the full
// affine map to the center.
template <class Apply>
Zonotope map_affine(const Zonotope& z, const Shape& out_shape, Apply&& apply) {
    const std::size_t n_out = element_count(out_shape);
    std::vector<double> center(n_out);
    apply(z.center(), std::span<double>(center), true);
    std::vector<double> gens(z.generator_count() * n_out);
    for (std::size_t j = 0; j < z.generator_count(); ++j) {
        apply(z.generator(j), std::span<double>(gens.data() + j * n_out, n_out), false);
    }
    return Zonotope(out_shape, std::move(center), z.generator_count(), std::move(gens));
}

// Per-neuron relaxation y = slope * x + offset + fresh * e_new.
struct Relaxation {
    double slope = 1.0;
    double offset = 0.0;
    double fresh = 0.0;
    bool point = false;  // output is the constant `offset`
};

template <class Relax>
Zonotope map_elementwise(const Zonotope& z, Relax&& relax) {
    const std::size_t n = z.dims();
    const auto r = z.radii();
    std::vector<Relaxation> rel(n);
    std::size_t fresh_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        rel[i] = relax(z.center()[i] - r[i], z.center()[i] + r[i]);
        if (rel[i].fresh != 0.0) ++fresh_count;
    }

    std::vector<double> center(n);
    for (std::size_t i = 0; i < n; ++i) {
        center[i] = rel[i].point ? rel[i].offset : rel[i].slope * z.center()[i] + rel[i].offset;
    }
    const std::size_t k = z.generator_count();
    std::vector<double> gens((k + fresh_count) * n, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        const auto src = z.generator(j);
        double* dst = gens.data() + j * n;
        for (std::size_t i = 0; i < n; ++i) dst[i] = rel[i].point ? 0.0 : rel[i].slope * src[i];
    }
    std::size_t next = k;
    for (std::size_t i = 0; i < n; ++i) {
        if (rel[i].fresh != 0.0) gens[next++ * n + i] = rel[i].fresh;
    }
    return Zonotope(z.shape(), std::move(center), k + fresh_count, std::move(gens));
}

}  // namespace

Zonotope affine_transform(const Zonotope& z, const Dense& layer) {
    const Shape out_shape = layers::output_shape(layer, z.shape());
    return map_affine(z, out_shape, [&](std::span<const double> x, std::span<double> y, bool bias) {
        layers::dense_apply(layer, x, y, bias);
    });
}

Zonotope affine_transform(const Zonotope& z, const Conv2D& layer) {
    const Shape out_shape = layers::output_shape(layer, z.shape());
    return map_affine(z, out_shape, [&](std::span<const double> x, std::span<double> y, bool bias) {
        layers::conv_apply(layer, z.shape(), x, y, bias);
    });
}

Zonotope relu_transform(const Zonotope& z) {
    return map_elementwise(z, [](double l, double u) {
        if (l >= 0.0) return Relaxation{1.0, 0.0, 0.0};
        if (u <= 0.0) return Relaxation{0.0, 0.0, 0.0, true};
        const double slope = u / (u - l);
        const double mu = -slope * l / 2.0;
        return Relaxation{slope, mu, mu};
    });
}

Zonotope sshape_transform(const Zonotope& z, ActivationKind kind) {
    if (kind == ActivationKind::ReLU) return relu_transform(z);
    return map_elementwise(z, [kind](double l, double u) {
        if (l == u) return Relaxation{0.0, layers::activate(kind, l), 0.0, true};
        const double gl = layers::activate(kind, l);
        const double gu = layers::activate(kind, u);
        const double slope = std::min(layers::activate_slope(kind, l), layers::activate_slope(kind, u));
        const double offset = (gu + gl - slope * (u + l)) / 2.0;
        const double fresh = (gu - gl - slope * (u - l)) / 2.0;
        return Relaxation{slope, offset, std::abs(fresh)};
    });
}

Zonotope maxpool_transform(const Zonotope& z, const MaxPool2D& pool) {
    const Shape out_shape = layers::output_shape(pool, z.shape());
    const std::size_t C = z.shape()[0], H = z.shape()[1], W = z.shape()[2];
    const std::size_t OH = out_shape[1], OW = out_shape[2];
    const std::size_t n_out = element_count(out_shape);
    const auto r = z.radii();

    // Source cell per output, or npos when the output is boxed.
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> source(n_out, npos);
    std::vector<double> box_lo(n_out), box_hi(n_out);
    std::vector<std::size_t> cells;
    for (std::size_t c = 0; c < C; ++c) {
        for (std::size_t oy = 0; oy < OH; ++oy) {
            for (std::size_t ox = 0; ox < OW; ++ox) {
                const std::size_t o = (c * OH + oy) * OW + ox;
                cells.clear();
                for (std::size_t dy = 0; dy < pool.window_h; ++dy) {
                    for (std::size_t dx = 0; dx < pool.window_w; ++dx) {
                        cells.push_back((c * H + oy * pool.window_h + dy) * W + ox * pool.window_w + dx);
                    }
                }
                double lo_max = -std::numeric_limits<double>::infinity();
                double hi_max = -std::numeric_limits<double>::infinity();
                for (std::size_t idx : cells) {
                    lo_max = std::max(lo_max, z.center()[idx] - r[idx]);
                    hi_max = std::max(hi_max, z.center()[idx] + r[idx]);
                }
                for (std::size_t idx : cells) {
                    const double l = z.center()[idx] - r[idx];
                    bool dominant = true;
                    for (std::size_t other : cells) {
                        if (other != idx && l < z.center()[other] + r[other]) {
                            dominant = false;
                            break;
                        }
                    }
                    if (dominant) {
                        source[o] = idx;
                        break;
                    }
                }
                box_lo[o] = lo_max;
                box_hi[o] = hi_max;
            }
        }
    }

    std::size_t fresh_count = 0;
    for (std::size_t o = 0; o < n_out; ++o) {
        if (source[o] == npos && box_hi[o] > box_lo[o]) ++fresh_count;
    }
    std::vector<double> center(n_out);
    const std::size_t k = z.generator_count();
    std::vector<double> gens((k + fresh_count) * n_out, 0.0);
    std::size_t next = k;
    for (std::size_t j = 0; j < k; ++j) {
        const auto src = z.generator(j);
        double* dst = gens.data() + j * n_out;
        for (std::size_t o = 0; o < n_out; ++o) {
            if (source[o] != npos) dst[o] = src[source[o]];
        }
    }
    for (std::size_t o = 0; o < n_out; ++o) {
        if (source[o] != npos) {
            center[o] = z.center()[source[o]];
        } else {
            center[o] = 0.5 * (box_lo[o] + box_hi[o]);
            if (box_hi[o] > box_lo[o]) gens[next++ * n_out + o] = 0.5 * (box_hi[o] - box_lo[o]);
        }
    }
    return Zonotope(out_shape, std::move(center), k + fresh_count, std::move(gens));
}

Zonotope transform(const Zonotope& z, const Layer& layer) {
    if (const auto* d = std::get_if<Dense>(&layer)) return affine_transform(z, *d);
    if (const auto* c = std::get_if<Conv2D>(&layer)) return affine_transform(z, *c);
    if (const auto* p = std::get_if<MaxPool2D>(&layer)) return maxpool_transform(z, *p);
    return sshape_transform(z, std::get<Activation>(layer).function);
}

Zonotope propagate_zonotope(const Network& net, const Zonotope& input) {
    if (input.dims() != net.input_size()) throw ShapeError("zonotope does not match the network input");
    Zonotope cur = input.reshaped(net.input_shape());
    for (const auto& layer : net.layers()) cur = transform(cur, layer);
    return cur;
}

double dominance_lower_bound(const Zonotope& z, std::size_t c, std::size_t k) {
    if (c >= z.dims() || k >= z.dims()) throw ShapeError("dominance query outside the output layer");
    if (c == k) throw Error("dominance query needs two distinct classes");
    double spread = 0.0;
    for (std::size_t j = 0; j < z.generator_count(); ++j) spread += std::abs(z.coefficient(c, j) - z.coefficient(k, j));
    return (z.center()[c] - z.center()[k]) - spread;
}

namespace {

Zonotope box_zonotope(const Interval& box) {
    const std::size_t n = box.size();
    std::vector<double> center(n), gens(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        center[i] = 0.5 * (box.lower[i] + box.upper[i]);
        gens[i * n + i] = 0.5 * (box.upper[i] - box.lower[i]);
    }
    return Zonotope(box.lower.shape(), std::move(center), n, std::move(gens));
}

}  // namespace

Interval propagate_boxed_zonotope(const Network& net, const Interval& input) {
    if (input.size() != net.input_size()) throw ShapeError("interval region does not match the network input");
    Interval cur{input.lower.reshaped(net.input_shape()), input.upper.reshaped(net.input_shape())};
    for (std::size_t i = 0; i < net.layers().size(); ++i) {
        const Layer& layer = net.layers()[i];
        if (std::holds_alternative<Dense>(layer) || std::holds_alternative<Conv2D>(layer)) {
            cur = transform(box_zonotope(cur), layer).concretize();
        } else {
            cur = interval_layer(layer, net.shape_in(i), cur);
        }
    }
    return cur;
}

}  // namespace radval
